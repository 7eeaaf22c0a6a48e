"""Planar geometry and angle arithmetic shared by every threat model.

All angles are radians. Wrapped angles live in (-pi, pi]; the upper
endpoint is representable so that a target directly behind the agent
(aspect angle pi) is a valid input everywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Point2:
    """Point in the plane, in normalized length units."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise DomainError(f"point components must be finite, got ({self.x}, {self.y})")

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)


def wrap_angle(a: float) -> float:
    """Wrap an angle into (-pi, pi].

    The result differs from ``a`` by an integer multiple of 2*pi and the
    operation is exactly idempotent: wrap(wrap(a)) == wrap(a).
    """
    if not math.isfinite(a):
        raise DomainError(f"angle must be finite, got {a}")
    w = math.remainder(a, TWO_PI)
    if w <= -math.pi:
        w += TWO_PI
    return w


def angular_separation(a: float, b: float) -> float:
    """Shortest angular distance between two directions, in [0, pi]."""
    return abs(wrap_angle(a - b))


def distance(a: Point2, b: Point2) -> float:
    """Euclidean distance between two points."""
    return math.hypot(a.x - b.x, a.y - b.y)


def bearing(frm: Point2, to: Point2) -> float:
    """World-frame direction of the ray from ``frm`` to ``to``."""
    if frm.x == to.x and frm.y == to.y:
        raise DomainError("bearing undefined for coincident points")
    return math.atan2(to.y - frm.y, to.x - frm.x)


def aspect_angle(agent_pos: Point2, agent_heading: float, threat_pos: Point2) -> float:
    """Angle between the agent's heading and its line of sight to the threat.

    Zero means the agent is heading straight at the threat. The sign
    convention is heading-minus-bearing: the result is negative when the
    threat lies to the agent's left. Engagement-zone radii are even in
    this angle, so membership tests are insensitive to the sign choice.
    """
    if agent_pos.x == threat_pos.x and agent_pos.y == threat_pos.y:
        raise DomainError("aspect angle undefined when agent and threat coincide")
    return wrap_angle(agent_heading - bearing(agent_pos, threat_pos))
