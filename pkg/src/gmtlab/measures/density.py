"""Density ratios of volume and perimeter in small balls centred on the boundary."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from gmtlab.anisotropy import Anisotropy
from gmtlab.core.logging import get_logger
from gmtlab.measures.perimeter import perimeter, perimeter_phi
from gmtlab.sets import (
    Ball,
    DiscreteSet,
    boundary_of,
    clip_to_region,
    ensure_inside_domain,
    ensure_on_boundary,
    volume_in,
)
from gmtlab.utils.geometry import unit_ball_volume

logger = get_logger(__name__)


@dataclass(frozen=True)
class DensityThresholds:
    """Pass band for the ratios; defaults are fractions of omega_n and omega_{n-1}."""

    vol_min: float
    per_lo: float
    per_hi: float

    @classmethod
    def default(cls, n: int) -> DensityThresholds:
        omega_n = unit_ball_volume(n)
        omega_n1 = unit_ball_volume(n - 1)
        return cls(vol_min=0.05 * omega_n, per_lo=0.2 * omega_n1, per_hi=10.0 * omega_n1)


@dataclass(frozen=True)
class DensitySample:
    x: np.ndarray
    r: float
    volume_ratio: float
    perimeter_ratio: float
    inner_ratio: float
    phi_perimeter_ratio: float
    flags: tuple[str, ...] = ()


@dataclass(frozen=True)
class DensityReport:
    n: int
    samples: list[DensitySample]
    thresholds: DensityThresholds
    c_vol_min: float = field(init=False)
    c_per_min: float = field(init=False)
    c_per_max: float = field(init=False)
    c_iso_max: float = field(init=False)

    def __post_init__(self) -> None:
        vols = [s.volume_ratio for s in self.samples] or [0.0]
        pers = [s.perimeter_ratio for s in self.samples] or [0.0]
        iso = [
            s.volume_ratio / s.perimeter_ratio ** (self.n / (self.n - 1))
            for s in self.samples
            if s.perimeter_ratio > 0
        ] or [0.0]
        object.__setattr__(self, "c_vol_min", min(vols))
        object.__setattr__(self, "c_per_min", min(pers))
        object.__setattr__(self, "c_per_max", max(pers))
        object.__setattr__(self, "c_iso_max", max(iso))

    @property
    def flagged(self) -> list[DensitySample]:
        return [s for s in self.samples if s.flags]

    @property
    def passed(self) -> bool:
        return not self.flagged


def density_check(
    e: DiscreteSet,
    a: Anisotropy,
    points: np.ndarray,
    radii: Sequence[float],
    thresholds: DensityThresholds | None = None,
) -> DensityReport:
    """Volume and perimeter ratios at every (point, radius) pair.

    volume_ratio is min(|E n B_r|, |B_r \\ E|) / r^n; inner_ratio keeps
    |E n B_r| / r^n for reference.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    ensure_on_boundary(e, points)
    n = e.n
    thresholds = thresholds or DensityThresholds.default(n)
    patch = boundary_of(e)
    omega_n = unit_ball_volume(n)
    samples: list[DensitySample] = []
    for x in points:
        for r in radii:
            ball = Ball(x, r)
            ensure_inside_domain(e, ball)
            inner = volume_in(e, ball)
            outer = omega_n * r**n - inner
            clipped = clip_to_region(patch, ball)
            per = perimeter(clipped) / r ** (n - 1)
            phi_per = perimeter_phi(clipped, a) / r ** (n - 1)
            vol = max(0.0, min(inner, outer)) / r**n
            flags = []
            if vol < thresholds.vol_min:
                flags.append("vol")
            if per < thresholds.per_lo:
                flags.append("per_lo")
            if per > thresholds.per_hi:
                flags.append("per_hi")
            if flags:
                logger.debug(f"Density flags {flags} at x={x.tolist()}, r={r:.4g}")
            samples.append(
                DensitySample(
                    x=x.copy(),
                    r=float(r),
                    volume_ratio=vol,
                    perimeter_ratio=per,
                    inner_ratio=inner / r**n,
                    phi_perimeter_ratio=phi_per,
                    flags=tuple(flags),
                )
            )
    return DensityReport(n=n, samples=samples, thresholds=thresholds)
