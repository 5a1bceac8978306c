"""Uniform flatness of a family: polish several noisy copies and keep the worst Reifenberg delta."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from gmtlab.almostmin.polish import polish
from gmtlab.anisotropy import Anisotropy
from gmtlab.core.logging import get_logger
from gmtlab.regularity.reifenberg import ReifenbergReport, reifenberg_check
from gmtlab.sets import VoxelSet, add_noise, nearest_boundary_point

logger = get_logger(__name__)


@dataclass(frozen=True)
class StabilityReport:
    delta: float
    reports: list[ReifenbergReport]

    @property
    def worst_delta(self) -> float:
        return max(report.delta_measured for report in self.reports)

    @property
    def passed(self) -> bool:
        return all(report.passed for report in self.reports)


def stability_check(
    base: VoxelSet,
    a: Anisotropy,
    kappa: float,
    x: np.ndarray,
    r: float,
    delta: float,
    p: float = 0.05,
    copies: int = 3,
    seed: int = 0,
    subball_count: int = 8,
) -> StabilityReport:
    """Reifenberg check at the boundary point nearest x on each polished copy."""
    reports = []
    for k in range(copies):
        polished = polish(add_noise(base, p, seed + k), kappa, a)
        y = nearest_boundary_point(polished, np.asarray(x, dtype=float))
        reports.append(reifenberg_check(polished, y, r, delta, subball_count, seed + k))
    result = StabilityReport(delta=delta, reports=reports)
    logger.debug(f"Stability over {copies} copies: worst delta {result.worst_delta:.4g}")
    return result
