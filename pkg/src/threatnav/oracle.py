"""Brute-force engagement feasibility checks.

These are the ground truth the closed-form zone boundaries are tested
against. They evaluate the raw capture/neutralization inequalities on a
dense time grid and polish with local bisection or golden-section
refinement; they never call the analytic boundary formulas.

Normalization matches the zone modules: unit pursuer speed / unit slew
rate, agent speed ``mu``. Feasibility is invariant to a common time
scaling, so the normalization does not restrict generality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError
from .geometry import Point2, wrap_angle
from .pursuit import PursuerThreat
from .turret import TurretThreat

_INV_GOLD = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class OracleConfig:
    """Scan resolution knobs.

    pursuit_step_fraction: grid step as a fraction of the scan horizon.
    turret_step_fraction: grid step as a fraction of range / agent speed.
    refine_iterations: bisection / golden-section iterations per bracket.
    """

    pursuit_step_fraction: float = 1e-3
    turret_step_fraction: float = 1e-4
    refine_iterations: int = 60


_DEFAULT = OracleConfig()


def _golden_max(f, lo: float, hi: float, iters: int) -> float:
    """Maximum of f on [lo, hi] by golden-section, assuming a local bracket."""
    a, b = lo, hi
    c = b - _INV_GOLD * (b - a)
    d = a + _INV_GOLD * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_GOLD * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_GOLD * (b - a)
            fd = f(d)
    return max(f(lo), f(hi), fc, fd)


def _pursuit_slack(t: np.ndarray, a0: Point2, heading: float, threat: PursuerThreat):
    """Capture slack t + r - |A(t) - P0|; capture feasible where >= 0.

    Valid on t in [0, R]: the pursuer's reach balloon grows at unit speed
    until the range budget R is spent, and stopping burns the budget at
    the same rate, so the pursuer is out of the fight after t = R.
    """
    v = threat.mu
    ax = a0.x + v * t * math.cos(heading) - threat.position.x
    ay = a0.y + v * t * math.sin(heading) - threat.position.y
    return t + threat.capture_radius - np.hypot(ax, ay)


def pursuit_capture_possible(
    a0: Point2, heading: float, threat: PursuerThreat, config: OracleConfig = _DEFAULT
) -> bool:
    """Can a straight-running pursuer close to capture distance in time?

    Scans capture slack over the pursuer's whole life t in [0, R], then
    refines every local maximum of the slack.
    """
    return _pursuit_scan(a0, heading, threat, config)[0]


def pursuit_capture_certificate(
    a0: Point2, heading: float, threat: PursuerThreat, config: OracleConfig = _DEFAULT
) -> Optional[tuple[float, float]]:
    """Minimal capture time and pursuer distance traveled, or None.

    At unit pursuer speed the straight-line intercept distance equals the
    capture time; on the zone boundary it equals the full range budget.
    """
    feasible, t_cap = _pursuit_scan(a0, heading, threat, config)
    if not feasible:
        return None
    return t_cap, t_cap


def _pursuit_scan(a0, heading, threat, config):
    d0 = math.hypot(a0.x - threat.position.x, a0.y - threat.position.y)
    if d0 == 0.0:
        raise DomainError("agent exactly at the pursuer position")
    horizon = threat.engagement_range  # unit pursuer speed: life ends at t = R
    n = max(int(round(1.0 / config.pursuit_step_fraction)), 8)
    ts = np.linspace(0.0, horizon, n + 1)
    slack = _pursuit_slack(ts, a0, heading, threat)

    def f(t: float) -> float:
        return float(_pursuit_slack(np.asarray([t]), a0, heading, threat)[0])

    if slack[0] >= 0.0:
        return (True, 0.0)

    hit = np.flatnonzero(slack >= 0.0)
    if hit.size:
        i = int(hit[0])
        return (True, _bisect_first(f, ts[i - 1], ts[i], config.refine_iterations))

    # No grid hit: polish every local max of the slack in case a short
    # capture window fell between grid points.
    t_hit = None
    interior = np.flatnonzero((slack[1:-1] >= slack[:-2]) & (slack[1:-1] >= slack[2:])) + 1
    for i in interior:
        lo, hi = ts[i - 1], ts[i + 1]
        if _golden_max(f, lo, hi, config.refine_iterations) >= 0.0:
            tm = _argmax_refine(f, lo, hi, config)
            if f(tm) >= 0.0:
                t_first = _bisect_first(f, lo, tm, config.refine_iterations)
                t_hit = t_first if t_hit is None else min(t_hit, t_first)
    if t_hit is None:
        return (False, None)
    return (True, t_hit)


def _argmax_refine(f, lo: float, hi: float, config) -> float:
    a, b = lo, hi
    for _ in range(config.refine_iterations):
        c = b - _INV_GOLD * (b - a)
        d = a + _INV_GOLD * (b - a)
        if f(c) >= f(d):
            b = d
        else:
            a = c
    return 0.5 * (a + b)


def _bisect_first(f, lo: float, hi: float, iters: int) -> float:
    """First root of f crossing from negative to nonnegative on [lo, hi]."""
    if f(lo) >= 0.0:
        return lo
    a, b = lo, hi
    for _ in range(iters):
        m = 0.5 * (a + b)
        if f(m) >= 0.0:
            b = m
        else:
            a = m
    return b


def turret_neutralization_possible(
    a0: Point2, heading: float, threat: TurretThreat, config: OracleConfig = _DEFAULT
) -> bool:
    """Can the turret's beam meet the straight-running agent within range?

    The beam covers an angle of at most t by time t (unit slew rate), so
    neutralization at time t requires the angular separation between the
    initial look direction and the agent's bearing to be at most t while
    the agent is inside the range circle. Scans that margin over the
    in-range window and refines its local maxima.
    """
    dx0 = a0.x - threat.position.x
    dy0 = a0.y - threat.position.y
    if dx0 == 0.0 and dy0 == 0.0:
        raise DomainError("agent exactly at the turret position")
    v = threat.mu
    R = threat.engagement_range
    ux, uy = math.cos(heading), math.sin(heading)
    # |a0 + v t u - T|^2 = R^2, with the leading coefficient v^2
    b = 2.0 * v * (dx0 * ux + dy0 * uy)
    c = dx0 * dx0 + dy0 * dy0 - R * R
    disc = b * b - 4.0 * v * v * c
    if disc < 0.0:
        return False
    sq = math.sqrt(disc)
    t_lo = (-b - sq) / (2.0 * v * v)
    t_hi = (-b + sq) / (2.0 * v * v)
    if t_hi < 0.0:
        return False
    t_lo = max(t_lo, 0.0)

    look = wrap_angle(threat.look_angle)

    def margin_arr(ts: np.ndarray) -> np.ndarray:
        px = a0.x + v * ts * ux - threat.position.x
        py = a0.y + v * ts * uy - threat.position.y
        sep = np.abs(np.remainder(look - np.arctan2(py, px) + math.pi, 2.0 * math.pi) - math.pi)
        return ts - sep

    step = config.turret_step_fraction * R / v
    n = int(min(max(math.ceil((t_hi - t_lo) / step), 64), 400_000))
    ts = np.linspace(t_lo, t_hi, n + 1)
    m = margin_arr(ts)
    if np.any(m >= 0.0):
        return True

    def f(t: float) -> float:
        return float(margin_arr(np.asarray([t]))[0])

    interior = np.flatnonzero((m[1:-1] >= m[:-2]) & (m[1:-1] >= m[2:])) + 1
    for i in interior:
        if _golden_max(f, ts[i - 1], ts[i + 1], config.refine_iterations) >= 0.0:
            return True
    return False
