from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from gmtlab.core.constants import MIN_TRUSTED_FACETS
from gmtlab.core.logging import get_logger
from gmtlab.excess.functionals import (
    directional_excess,
    fit_direction,
    flatness_on_patch,
)
from gmtlab.sets import (
    Ball,
    BoundaryPatch,
    Cylinder,
    DiscreteSet,
    Provenance,
    boundary_of,
    clip_to_region,
    ensure_on_boundary,
)

logger = get_logger(__name__)


@dataclass(frozen=True)
class ScaleEntry:
    k: int
    r: float
    excess: float
    nu_opt: np.ndarray
    flatness: float
    cyl_excess: float
    facet_count: int
    flags: tuple[str, ...] = ()

    @property
    def trusted(self) -> bool:
        return "untrusted" not in self.flags


@dataclass(frozen=True)
class ScaleScan:
    x: np.ndarray
    theta: float
    r0: float
    entries: list[ScaleEntry]
    truncated: bool = False
    sup_excess: float = field(init=False)

    def __post_init__(self) -> None:
        if not self.entries:
            raise ValueError("A scale scan needs at least one entry")
        radii = [e.r for e in self.entries]
        if any(b >= a for a, b in zip(radii, radii[1:], strict=False)):
            raise ValueError("Scan radii must be strictly decreasing")
        object.__setattr__(self, "sup_excess", max(e.excess for e in self.entries))

    @property
    def trusted_entries(self) -> list[ScaleEntry]:
        return [e for e in self.entries if e.trusted]

    @property
    def sup_trusted_excess(self) -> float | None:
        trusted = self.trusted_entries
        return max(e.excess for e in trusted) if trusted else None

    @property
    def deepest_trusted_radius(self) -> float | None:
        trusted = self.trusted_entries
        return trusted[-1].r if trusted else None


def scan_ball(
    patch: BoundaryPatch, x: np.ndarray, r: float
) -> tuple[float, np.ndarray, float, float, int, list[str]]:
    """Excess, direction, flatness and cylindrical excess at one scale."""
    flags: list[str] = []
    in_ball = clip_to_region(patch, Ball(x, r))
    fit = fit_direction(in_ball, r)
    if fit.tie:
        flags.append("tie")
    if fit.empty:
        flags.append("empty")
    if len(in_ball.singular_points):
        flags.append("nonmanifold")
    if patch.provenance == Provenance.EXTRACTED and len(in_ball) < MIN_TRUSTED_FACETS:
        flags.append("untrusted")
    in_cylinder = clip_to_region(patch, Cylinder(x, r, fit.nu_opt))
    if in_cylinder.is_empty:
        flat, cyl = float("nan"), float("nan")
    else:
        flat = flatness_on_patch(in_cylinder, x, r, fit.nu_opt).value
        cyl = directional_excess(in_cylinder, fit.nu_opt, r)
    return fit.excess, fit.nu_opt, flat, cyl, len(in_ball), flags


def multiscale_scan(
    e: DiscreteSet, x: np.ndarray, theta: float, r0: float, k_max: int
) -> ScaleScan:
    """Excess, direction and flatness at radii theta^k r0 for k = 0..k_max.

    Extracted boundaries stop (and flag truncation) once fewer than eight
    facets remain in the ball; exact boundaries are trusted at every scale.
    """
    if not 0 < theta < 1:
        raise ValueError(f"theta must lie in (0, 1), got {theta}")
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    x = np.asarray(x, dtype=float)
    ensure_on_boundary(e, x)
    patch = boundary_of(e)
    entries: list[ScaleEntry] = []
    truncated = False
    for k in range(k_max + 1):
        r = r0 * theta**k
        excess, nu, flat, cyl, count, flags = scan_ball(patch, x, r)
        entry = ScaleEntry(
            k=k,
            r=r,
            excess=excess,
            nu_opt=nu,
            flatness=flat,
            cyl_excess=cyl,
            facet_count=count,
            flags=tuple(flags),
        )
        if not entry.trusted:
            if not entries:
                entries.append(entry)
            truncated = True
            logger.debug(f"Scan at {x.tolist()} stops at k={k}: {count} facets in the ball")
            break
        entries.append(entry)
    return ScaleScan(x=x, theta=theta, r0=r0, entries=entries, truncated=truncated)
