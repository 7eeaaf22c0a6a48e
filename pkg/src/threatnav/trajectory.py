"""Time-stamped constant-speed polyline of agent states."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Trajectory:
    """Piecewise-straight agent path with per-segment headings.

    times are nondecreasing and start at zero; points has one row per
    time stamp; headings has one entry per segment. Consecutive points
    are consistent with motion at the stored speed.
    """

    times: np.ndarray
    points: np.ndarray
    headings: np.ndarray
    speed: float = field(default=1.0)

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=float)
        points = np.asarray(self.points, dtype=float)
        headings = np.asarray(self.headings, dtype=float)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "headings", headings)
        if points.ndim != 2 or points.shape[1] != 2:
            raise ValueError(f"points must be (n, 2), got {points.shape}")
        if len(times) != len(points):
            raise ValueError("one time stamp per point required")
        if len(headings) != len(points) - 1:
            raise ValueError("one heading per segment required")
        if len(times) and (times[0] != 0.0 or np.any(np.diff(times) < 0.0)):
            raise ValueError("times must start at 0 and be nondecreasing")
        if not self.speed > 0.0:
            raise ValueError(f"speed must be positive, got {self.speed}")

    @property
    def t_f(self) -> float:
        return float(self.times[-1])

    def max_speed_violation(self) -> float:
        """Largest relative mismatch between segment length and speed * dt."""
        seg = np.hypot(*np.diff(self.points, axis=0).T)
        expect = self.speed * np.diff(self.times)
        scale = np.maximum(np.abs(expect), 1e-300)
        return float(np.max(np.abs(seg - expect) / scale)) if len(seg) else 0.0
