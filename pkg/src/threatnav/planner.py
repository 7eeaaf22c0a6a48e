"""Minimum-time path planning that stays outside every engagement zone.

Transcription: a uniform time grid with the terminal time as a decision
variable and one piecewise-constant heading per segment. Node positions
are chained forward from the start, so the decision vector is exactly
n_nodes long (n_nodes - 1 headings plus the terminal time). The zone
constraint is imposed at every node for every threat: pursuer zones via
the aspect-angle clearance with the node's segment heading, turret zones
via the chord-threshold ray test. SLSQP solves the program with an
analytic constraint Jacobian for pursuer rows.

A straight warm start on a blocked chord sits at a degenerate saddle, so
the solver also tries deterministic bowed detours on both sides and
keeps the best feasible result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np
from scipy.optimize import minimize

from . import circumnav as _circ
from .errors import DomainError, InfeasibleError
from .geometry import Point2, distance
from .oracle import OracleConfig, pursuit_capture_possible, turret_neutralization_possible
from .pursuit import PursuerThreat, rho, rho_derivative
from .trajectory import Trajectory
from .turret import TurretThreat, turret_clearance

Threat = Union[PursuerThreat, TurretThreat]

_FD_STEP = 1e-7


@dataclass(frozen=True)
class AgentConfig:
    start: Point2
    goal: Point2
    speed: float

    def __post_init__(self) -> None:
        if not (self.speed > 0.0 and math.isfinite(self.speed)):
            raise DomainError(f"agent speed must be positive, got {self.speed}")
        if self.start == self.goal:
            raise DomainError("start and goal must differ")


@dataclass(frozen=True)
class PlannerOptions:
    n_nodes: int = 100
    constraint_tolerance: float = 1e-6
    opt_tolerance: float = 1e-8
    max_iterations: int = 500
    initialization: str = "straight_line"
    custom_trajectory: Optional[Trajectory] = None

    def __post_init__(self) -> None:
        if self.n_nodes < 3:
            raise ValueError(f"n_nodes must be at least 3, got {self.n_nodes}")
        if not (self.constraint_tolerance > 0.0 and self.opt_tolerance > 0.0):
            raise ValueError("tolerances must be positive")
        if self.initialization not in ("straight_line", "circumnav_reach", "custom"):
            raise ValueError(f"unknown initialization {self.initialization!r}")


@dataclass(frozen=True)
class Scenario:
    agent: AgentConfig
    threats: tuple[Threat, ...] = ()
    options: PlannerOptions = field(default_factory=PlannerOptions)

    def __post_init__(self) -> None:
        object.__setattr__(self, "threats", tuple(self.threats))


@dataclass(frozen=True)
class PlanResult:
    trajectory: Trajectory
    t_f: float
    converged: bool
    min_clearance: float
    iterations: int


@dataclass(frozen=True)
class VerificationReport:
    """Densified constraint audit of a planned trajectory."""

    worst_clearance: float
    worst_time: float
    oracle_disagreements: int
    points_checked: int


class TranscribedProblem:
    """NLP view of a scenario: objective, constraints, and Jacobians.

    The decision vector z holds the n_nodes - 1 segment headings followed
    by the terminal time.
    """

    def __init__(self, scenario: Scenario):
        self.scenario = scenario
        self.n = scenario.options.n_nodes
        self.speed = scenario.agent.speed
        self.a0 = np.array(scenario.agent.start.as_tuple())
        self.af = np.array(scenario.agent.goal.as_tuple())
        self.threats = scenario.threats

    # -- kinematics -------------------------------------------------------

    def positions(self, z: np.ndarray) -> np.ndarray:
        psi, t_f = z[:-1], z[-1]
        dt = t_f / (self.n - 1)
        steps = self.speed * dt * np.stack([np.cos(psi), np.sin(psi)], axis=1)
        return np.vstack([self.a0, self.a0 + np.cumsum(steps, axis=0)])

    def node_headings(self, z: np.ndarray) -> np.ndarray:
        psi = z[:-1]
        return np.append(psi, psi[-1])

    # -- endpoint equality -------------------------------------------------

    def endpoint(self, z: np.ndarray) -> np.ndarray:
        return self.positions(z)[-1] - self.af

    def endpoint_jacobian(self, z: np.ndarray) -> np.ndarray:
        psi, t_f = z[:-1], z[-1]
        dt = t_f / (self.n - 1)
        jac = np.zeros((2, self.n))
        jac[0, : self.n - 1] = -self.speed * dt * np.sin(psi)
        jac[1, : self.n - 1] = self.speed * dt * np.cos(psi)
        p_end = self.positions(z)[-1]
        jac[:, -1] = (p_end - self.a0) / t_f
        return jac

    # -- zone clearances ----------------------------------------------------
    #
    # A node belongs to two segments and the continuous path visits it
    # with both headings (the corner is instantaneous), so interior nodes
    # are constrained twice: once with the outgoing heading and once with
    # the incoming one. The pose list below has 2*n - 2 entries: every
    # node with its outgoing heading (the goal node reuses the last
    # segment), then interior nodes 1..n-2 with the incoming heading.

    def _pose_index(self) -> tuple[np.ndarray, np.ndarray]:
        n = self.n
        node_idx = np.concatenate([np.arange(n), np.arange(1, n - 1)])
        head_idx = np.concatenate(
            [np.minimum(np.arange(n), n - 2), np.arange(0, n - 2)]
        )
        return node_idx, head_idx

    def clearances(self, z: np.ndarray) -> np.ndarray:
        """Stacked per-pose clearance, one block of 2n-2 values per threat."""
        pts = self.positions(z)
        blocks = [self._threat_clearance(t, z, pts) for t in self.threats]
        return np.concatenate(blocks) if blocks else np.zeros(0)

    def _threat_clearance(self, threat, z, pts) -> np.ndarray:
        node_idx, head_idx = self._pose_index()
        psi = z[:-1][head_idx]
        p = pts[node_idx]
        if isinstance(threat, PursuerThreat):
            dxv = threat.position.x - p[:, 0]
            dyv = threat.position.y - p[:, 1]
            d = np.hypot(dxv, dyv)
            xi = np.remainder(psi - np.arctan2(dyv, dxv) + math.pi, 2.0 * math.pi) - math.pi
            rhos = np.array([rho(x, threat) for x in xi])
            return d - rhos
        return np.array(
            [
                turret_clearance(Point2(float(px), float(py)), float(ps), threat)
                for (px, py), ps in zip(p, psi)
            ]
        )

    def clearance_jacobian(self, z: np.ndarray) -> np.ndarray:
        pts = self.positions(z)
        blocks = []
        for threat in self.threats:
            if isinstance(threat, PursuerThreat):
                blocks.append(self._pursuit_jacobian(threat, z, pts))
            else:
                blocks.append(self._fd_jacobian(threat, z))
        return np.vstack(blocks) if blocks else np.zeros((0, len(z)))

    def _pursuit_jacobian(self, threat, z, pts) -> np.ndarray:
        n = self.n
        psi, t_f = z[:-1], z[-1]
        dt = t_f / (n - 1)
        node_idx, head_idx = self._pose_index()
        p = pts[node_idx]
        psi_pose = psi[head_idx]
        dxv = threat.position.x - p[:, 0]
        dyv = threat.position.y - p[:, 1]
        d = np.hypot(dxv, dyv)
        d2 = d * d
        xi = np.remainder(psi_pose - np.arctan2(dyv, dxv) + math.pi, 2.0 * math.pi) - math.pi
        drho = np.array([rho_derivative(x, threat) for x in xi])
        # gradient of clearance w.r.t. the pose position
        gx = -dxv / d + drho * dyv / d2
        gy = -dyv / d - drho * dxv / d2
        m = len(node_idx)
        jac = np.zeros((m, n))
        # position chain: node k depends on headings 0..k-1
        sens = self.speed * dt * np.stack([-np.sin(psi), np.cos(psi)], axis=1)
        full = gx[:, None] * sens[None, :, 0] + gy[:, None] * sens[None, :, 1]
        mask = np.arange(n - 1)[None, :] < node_idx[:, None]
        jac[:, : n - 1] = np.where(mask, full, 0.0)
        # direct heading dependence through the aspect angle
        jac[np.arange(m), head_idx] += -drho
        # terminal-time column through the node positions
        rel = p - self.a0
        jac[:, -1] = (gx * rel[:, 0] + gy * rel[:, 1]) / t_f
        return jac

    def _fd_jacobian(self, threat, z) -> np.ndarray:
        def block(zz: np.ndarray) -> np.ndarray:
            return self._threat_clearance(threat, zz, self.positions(zz))

        m = 2 * self.n - 2
        jac = np.zeros((m, len(z)))
        for j in range(len(z)):
            h = _FD_STEP * max(1.0, abs(z[j]))
            zp, zm = z.copy(), z.copy()
            zp[j] += h
            zm[j] -= h
            jac[:, j] = (block(zp) - block(zm)) / (2.0 * h)
        return jac

    # -- warm-start packing --------------------------------------------------

    def pack(self, trajectory: Trajectory) -> np.ndarray:
        pts = _resample_equal_arc(trajectory.points, self.n)
        deltas = np.diff(pts, axis=0)
        psi = np.arctan2(deltas[:, 1], deltas[:, 0])
        length = float(np.sum(np.hypot(deltas[:, 0], deltas[:, 1])))
        return np.concatenate([psi, [max(length / self.speed, 1e-12)]])

    def unpack(self, z: np.ndarray) -> Trajectory:
        t_f = float(z[-1])
        times = np.linspace(0.0, t_f, self.n)
        return Trajectory(
            times=times, points=self.positions(z), headings=z[:-1].copy(), speed=self.speed
        )


def transcribe(scenario: Scenario) -> TranscribedProblem:
    """Build the NLP view used by ``plan`` (also handy for gradient checks)."""
    return TranscribedProblem(scenario)


def initialize(scenario: Scenario, mode: str, custom: Optional[Trajectory] = None) -> Trajectory:
    """Warm-start trajectory for the solver.

    straight_line is the constant-heading chord; circumnav_reach rides the
    first pursuer's capturability circle; custom passes a caller-supplied
    trajectory through.
    """
    agent = scenario.agent
    n = scenario.options.n_nodes
    if mode == "straight_line":
        a0 = np.array(agent.start.as_tuple())
        af = np.array(agent.goal.as_tuple())
        chord = distance(agent.start, agent.goal)
        s = np.linspace(0.0, 1.0, n)[:, None]
        pts = a0 + s * (af - a0)
        heading = math.atan2(af[1] - a0[1], af[0] - a0[0])
        return Trajectory(
            times=np.linspace(0.0, chord / agent.speed, n),
            points=pts,
            headings=np.full(n - 1, heading),
            speed=agent.speed,
        )
    if mode == "circumnav_reach":
        pursuers = [t for t in scenario.threats if isinstance(t, PursuerThreat)]
        if not pursuers:
            raise ValueError("circumnav_reach initialization needs a pursuer threat")
        threat = pursuers[0]
        spec = _circ.CircumnavSpec("Reach", threat.engagement_range + threat.capture_radius)
        result = _circ.circumnavigate(agent.start, agent.goal, threat.position, spec, agent.speed)
        return _polyline_to_trajectory(
            _resample_equal_arc(result.path.points, n), agent.speed
        )
    if mode == "custom":
        chosen = custom if custom is not None else scenario.options.custom_trajectory
        if chosen is None:
            raise ValueError("custom initialization requires a trajectory")
        return chosen
    raise ValueError(f"unknown initialization mode {mode!r}")


def plan(scenario: Scenario) -> PlanResult:
    """Solve the minimum-time problem for the scenario.

    Raises InfeasibleError when an endpoint sits strictly inside a
    pursuer's capturability disk. Returns the best feasible iterate with
    converged=False when the solver stalls before full convergence.
    """
    opts = scenario.options
    _screen_endpoints(scenario)
    problem = transcribe(scenario)

    seeds = [problem.pack(initialize(scenario, opts.initialization))]
    if len(problem.threats) and float(np.min(problem.clearances(seeds[0]))) < 0.0:
        seeds.extend(problem.pack(t) for t in _detour_seeds(scenario))

    constraints = [
        {"type": "eq", "fun": problem.endpoint, "jac": problem.endpoint_jacobian}
    ]
    if len(scenario.threats):
        constraints.append(
            {"type": "ineq", "fun": problem.clearances, "jac": problem.clearance_jacobian}
        )
    n_vars = opts.n_nodes
    grad = np.zeros(n_vars)
    grad[-1] = 1.0
    chord_time = distance(scenario.agent.start, scenario.agent.goal) / scenario.agent.speed
    bounds = [(None, None)] * (n_vars - 1) + [(chord_time * (1.0 - 1e-12), None)]

    best = None  # (feasible, t_f or violation, z, success, nit)
    total_nit = 0
    for z0 in seeds:
        res = minimize(
            lambda z: z[-1],
            z0,
            jac=lambda z: grad,
            method="SLSQP",
            bounds=bounds,
            constraints=constraints,
            options={"maxiter": opts.max_iterations, "ftol": opts.opt_tolerance},
        )
        total_nit += int(res.nit)
        z = res.x
        viol = _max_violation(problem, z)
        feasible = viol <= opts.constraint_tolerance
        key = (0, float(z[-1])) if feasible else (1, viol)
        if best is None or key < best[0]:
            best = (key, z, bool(res.success), feasible)

    _, z, success, feasible = best
    clear = problem.clearances(z)
    min_clear = float(np.min(clear)) if clear.size else math.inf
    return PlanResult(
        trajectory=problem.unpack(z),
        t_f=float(z[-1]),
        converged=bool(success and feasible),
        min_clearance=min_clear,
        iterations=total_nit,
    )


def clearances_along(trajectory: Trajectory, threats: Sequence[Threat]) -> np.ndarray:
    """Per-node clearance matrix (n_nodes x n_threats) for reporting."""
    n = len(trajectory.points)
    psi_node = (
        np.append(trajectory.headings, trajectory.headings[-1])
        if len(trajectory.headings)
        else np.zeros(n)
    )
    out = np.zeros((n, len(threats)))
    for j, threat in enumerate(threats):
        for i, ((px, py), ps) in enumerate(zip(trajectory.points, psi_node)):
            p = Point2(float(px), float(py))
            if isinstance(threat, PursuerThreat):
                from .pursuit import signed_clearance

                out[i, j] = signed_clearance(p, float(ps), threat)
            else:
                out[i, j] = turret_clearance(p, float(ps), threat)
    return out


def resample_and_verify(
    result: PlanResult,
    scenario: Scenario,
    factor: int,
    oracle_config: OracleConfig = OracleConfig(),
) -> VerificationReport:
    """Densify each segment and re-audit clearance and oracle safety.

    Node-only constraints can dip between nodes; this reports the worst
    densified clearance and counts points the closed forms call safe
    (clearance above the constraint tolerance) but the oracle calls
    capturable.
    """
    if factor < 2:
        raise ValueError(f"factor must be at least 2, got {factor}")
    traj = result.trajectory
    tol = scenario.options.constraint_tolerance
    worst = math.inf
    worst_time = 0.0
    disagreements = 0
    checked = 0
    pts = traj.points
    for k in range(len(pts) - 1):
        heading = float(traj.headings[k])
        for j in range(factor if k < len(pts) - 2 else factor + 1):
            s = j / factor
            q = Point2(
                float(pts[k, 0] + s * (pts[k + 1, 0] - pts[k, 0])),
                float(pts[k, 1] + s * (pts[k + 1, 1] - pts[k, 1])),
            )
            t = float(traj.times[k] + s * (traj.times[k + 1] - traj.times[k]))
            checked += 1
            for threat in scenario.threats:
                if isinstance(threat, PursuerThreat):
                    from .pursuit import signed_clearance

                    c = signed_clearance(q, heading, threat)
                    alarm = c > tol and pursuit_capture_possible(q, heading, threat, oracle_config)
                else:
                    c = turret_clearance(q, heading, threat)
                    alarm = c > tol and turret_neutralization_possible(
                        q, heading, threat, oracle_config
                    )
                if c < worst:
                    worst, worst_time = c, t
                if alarm:
                    disagreements += 1
    if not scenario.threats:
        worst = math.inf
    return VerificationReport(
        worst_clearance=worst,
        worst_time=worst_time,
        oracle_disagreements=disagreements,
        points_checked=checked,
    )


# -- internals ---------------------------------------------------------------


def _screen_endpoints(scenario: Scenario) -> None:
    for threat in scenario.threats:
        if not isinstance(threat, PursuerThreat):
            continue
        disk = threat.engagement_range + threat.capture_radius
        for name, point in (("start", scenario.agent.start), ("goal", scenario.agent.goal)):
            if distance(point, threat.position) < disk:
                raise InfeasibleError(
                    f"{name} lies inside a capturability disk "
                    f"(distance {distance(point, threat.position):.6g} < {disk:.6g})"
                )


def _max_violation(problem: TranscribedProblem, z: np.ndarray) -> float:
    viol = float(np.max(np.abs(problem.endpoint(z))))
    clear = problem.clearances(z)
    if clear.size:
        viol = max(viol, float(-np.min(np.minimum(clear, 0.0))))
    return viol


def _detour_seeds(scenario: Scenario) -> list[Trajectory]:
    """Bowed chords on both sides, sized to clear the largest zone."""
    agent = scenario.agent
    a0 = np.array(agent.start.as_tuple())
    af = np.array(agent.goal.as_tuple())
    chord = af - a0
    length = float(np.hypot(*chord))
    normal = np.array([-chord[1], chord[0]]) / length
    extent = 0.0
    for threat in scenario.threats:
        if isinstance(threat, PursuerThreat):
            big = (1.0 + threat.mu) * threat.engagement_range + threat.capture_radius
        else:
            big = threat.engagement_range
        extent = max(extent, big)
    amp = 1.2 * extent if extent > 0.0 else 0.25 * length
    seeds = []
    s = np.linspace(0.0, 1.0, 256)[:, None]
    for sign in (1.0, -1.0):
        pts = a0 + s * chord + sign * amp * np.sin(math.pi * s) * normal
        seeds.append(_polyline_to_trajectory(pts, agent.speed))
    return seeds


def _resample_equal_arc(points: np.ndarray, n: int) -> np.ndarray:
    deltas = np.diff(points, axis=0)
    seg = np.hypot(deltas[:, 0], deltas[:, 1])
    s = np.concatenate([[0.0], np.cumsum(seg)])
    targets = np.linspace(0.0, s[-1], n)
    return np.stack(
        [np.interp(targets, s, points[:, 0]), np.interp(targets, s, points[:, 1])], axis=1
    )


def _polyline_to_trajectory(points: np.ndarray, speed: float) -> Trajectory:
    deltas = np.diff(points, axis=0)
    seg = np.hypot(deltas[:, 0], deltas[:, 1])
    times = np.concatenate([[0.0], np.cumsum(seg) / speed])
    headings = np.arctan2(deltas[:, 1], deltas[:, 0])
    return Trajectory(times=times, points=points, headings=headings, speed=speed)
