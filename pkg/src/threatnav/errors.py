"""Exception types shared across the package."""


class DomainError(ValueError):
    """Inputs outside the mathematical domain of an operation.

    Raised for non-finite values, coincident agent/threat positions,
    and similar cases where the requested quantity is undefined.
    """


class PreconditionError(ValueError):
    """A documented precondition was violated (e.g. a speed-ratio gate)."""


class InfeasibleError(RuntimeError):
    """The planning problem has no admissible solution as posed."""
