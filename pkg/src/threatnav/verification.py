"""Analytic-versus-oracle equivalence sweeps.

Random poses are drawn with a guaranteed margin off the analytic zone
boundary (poses closer than the margin are ambiguous at finite scan
resolution), then classified by both the closed form and the brute-force
oracle. Any disagreement is a defect in one of the two routes. A
corruption hook scales the analytic boundary so the harness can prove
the sweep actually detects broken formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import Point2, wrap_angle
from .oracle import OracleConfig, pursuit_capture_possible, turret_neutralization_possible
from .pursuit import PursuerThreat, rho
from .turret import TurretThreat, boundary_threshold

_DEFAULT_MUS = (0.5, 0.7, 1.0, 1.5, 2.0)
_DEFAULT_LOOKS = (math.pi / 6.0, 5.0 * math.pi / 6.0, -5.0 * math.pi / 6.0)


@dataclass(frozen=True)
class SweepResult:
    label: str
    samples: int
    disagreements: int


def pursuit_equivalence_sweep(
    mus=_DEFAULT_MUS,
    samples_per_mu: int = 1000,
    engagement_range: float = 1.0,
    capture_radius: float = 0.25,
    margin: float = 1e-3,
    seed: int = 0,
    rho_scale: float = 1.0,
    oracle_config: OracleConfig = OracleConfig(),
) -> list[SweepResult]:
    """Classify random pursuit poses by zone formula and by oracle.

    rho_scale != 1 deliberately corrupts the analytic boundary; a correct
    oracle then reports disagreements.
    """
    rng = np.random.default_rng(seed)
    results = []
    R, r = engagement_range, capture_radius
    for mu in mus:
        threat = PursuerThreat(Point2(0.0, 0.0), mu=mu, engagement_range=R, capture_radius=r)
        bad = 0
        for _ in range(samples_per_mu):
            xi = rng.uniform(-math.pi, math.pi)
            boundary = rho(xi, threat)
            side = 1.0 if rng.uniform() < 0.5 else -1.0
            offset = max(margin * R * 1.0001, boundary * 10.0 ** rng.uniform(-2.5, -0.3))
            dist = boundary + side * offset
            if dist <= 1e-9:
                dist = boundary + offset  # zone collapsed to the capture disk
            heading = rng.uniform(-math.pi, math.pi)
            ang = heading - xi + math.pi
            pos = Point2(dist * math.cos(ang), dist * math.sin(ang))
            analytic = dist <= rho_scale * boundary
            if analytic != pursuit_capture_possible(pos, heading, threat, oracle_config):
                bad += 1
        results.append(SweepResult(label=f"pursuer mu={mu}", samples=samples_per_mu, disagreements=bad))
    return results


def turret_equivalence_sweep(
    look_angles=_DEFAULT_LOOKS,
    samples_per_angle: int = 1000,
    mu: float = 0.5,
    engagement_range: float = 1.0,
    margin: float = 1e-3,
    seed: int = 0,
    threshold_shift: float = 0.0,
    oracle_config: OracleConfig = OracleConfig(),
) -> list[SweepResult]:
    """Classify random turret poses by the chord-threshold test and by oracle.

    threshold_shift != 0 corrupts the analytic threshold (in units of the
    engagement range) for harness self-tests.
    """
    rng = np.random.default_rng(seed)
    results = []
    R = engagement_range
    for look in look_angles:
        threat = TurretThreat(Point2(0.0, 0.0), look_angle=look, mu=mu, engagement_range=R)
        bad = 0
        done = 0
        while done < samples_per_angle:
            y = rng.uniform(-0.999 * R, 0.999 * R)
            if abs(y) < 1e-6 * R:
                continue  # the through-turret chord is degenerate
            threshold = boundary_threshold(y, threat)
            x = rng.uniform(threshold - 3.0 * R, min(threshold + 3.0 * R, math.sqrt(R * R - y * y)))
            if abs(x - threshold) < margin * R:
                continue
            done += 1
            pos = Point2(x, y)
            analytic = x <= threshold + threshold_shift * R
            if analytic != turret_neutralization_possible(pos, 0.0, threat, oracle_config):
                bad += 1
        results.append(
            SweepResult(
                label=f"turret look_angle={wrap_angle(look):.4f}",
                samples=samples_per_angle,
                disagreements=bad,
            )
        )
    return results
