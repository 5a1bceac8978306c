"""Balls B_r(x) and cylinders C_nu(x, r) = B'_r(x) x (-r, r) along nu."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from gmtlab.utils.geometry import normalize, orthonormal_frame


@dataclass(frozen=True, eq=False)
class Ball:
    center: np.ndarray
    radius: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))
        if self.radius <= 0:
            raise ValueError(f"Ball radius must be > 0, got {self.radius}")

    @property
    def n(self) -> int:
        return int(self.center.shape[0])

    def contains(self, points: np.ndarray) -> np.ndarray:
        d2 = np.sum((np.asarray(points, dtype=float) - self.center) ** 2, axis=-1)
        return d2 < self.radius**2

    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        return self.center - self.radius, self.center + self.radius

    def segment_intervals(
        self, a: np.ndarray, b: np.ndarray
    ) -> tuple[np.ndarray, np.ndarray]:
        """Parameter intervals [t0, t1] within [0, 1] of segments a->b inside the ball.

        Empty intervals come back with t1 <= t0.
        """
        d = b - a
        f = a - self.center
        qa = np.maximum(np.sum(d * d, axis=-1), 1e-300)
        qb = 2.0 * np.sum(f * d, axis=-1)
        qc = np.sum(f * f, axis=-1) - self.radius**2
        disc = qb * qb - 4 * qa * qc
        root = np.sqrt(np.maximum(disc, 0.0))
        t0 = np.where(disc > 0, (-qb - root) / (2 * qa), 1.0)
        t1 = np.where(disc > 0, (-qb + root) / (2 * qa), 0.0)
        return np.maximum(t0, 0.0), np.minimum(t1, 1.0)


@dataclass(frozen=True, eq=False)
class Cylinder:
    center: np.ndarray
    radius: float
    axis: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))
        object.__setattr__(self, "axis", normalize(self.axis))
        if self.radius <= 0:
            raise ValueError(f"Cylinder radius must be > 0, got {self.radius}")

    @property
    def n(self) -> int:
        return int(self.center.shape[0])

    @property
    def frame(self) -> np.ndarray:
        return orthonormal_frame(self.axis)

    def contains(self, points: np.ndarray) -> np.ndarray:
        rel = np.asarray(points, dtype=float) - self.center
        height = rel @ self.axis
        tangential = rel - height[..., None] * self.axis
        radial2 = np.sum(tangential**2, axis=-1)
        return (radial2 < self.radius**2) & (np.abs(height) < self.radius)

    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        reach = self.radius * np.sqrt(2.0)
        return self.center - reach, self.center + reach

    def segment_intervals(
        self, a: np.ndarray, b: np.ndarray
    ) -> tuple[np.ndarray, np.ndarray]:
        """Exact for n=2, where the cylinder is the square |tau| < r, |nu| < r."""
        lo = np.zeros(a.shape[:-1])
        hi = np.ones(a.shape[:-1])
        for direction in self.frame.T:
            alpha = (a - self.center) @ direction
            beta = (b - a) @ direction
            flat = np.abs(beta) < 1e-300
            safe = np.where(flat, 1.0, beta)
            t0 = (-self.radius - alpha) / safe
            t1 = (self.radius - alpha) / safe
            outside = flat & (np.abs(alpha) >= self.radius)
            lo = np.where(
                flat, np.where(outside, 1.0, lo), np.maximum(lo, np.minimum(t0, t1))
            )
            hi = np.where(
                flat, np.where(outside, 0.0, hi), np.minimum(hi, np.maximum(t0, t1))
            )
        return lo, hi


Region = Ball | Cylinder
