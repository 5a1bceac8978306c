"""Generator of almost-minimizers: perimeter plus L1 fidelity, solved by one min cut."""

from __future__ import annotations

import numpy as np

from gmtlab.almostmin.competitor import build_problem, solve_min_cut
from gmtlab.almostmin.cut_metric import cut_weights
from gmtlab.anisotropy import Anisotropy
from gmtlab.core.logging import get_logger
from gmtlab.sets import VoxelSet
from gmtlab.utils.geometry import unit_ball_volume

logger = get_logger(__name__)


def lambda_bound(n: int, r0: float, kappa: float) -> float:
    """Any competitor in B_r changes the fidelity by at most omega_n r^n / kappa."""
    return unit_ball_volume(n) * r0 / kappa


def polish(e0: VoxelSet, kappa: float, a: Anisotropy, order: int = 8) -> VoxelSet:
    """Global minimizer of P_cut(F) + |F delta E0| / kappa.

    Cells within reach of the domain border keep their value. Among several
    minimizers the smallest one is returned, which makes polishing
    idempotent.
    """
    if kappa <= 0:
        raise ValueError(f"kappa must be > 0, got {kappa}")
    spec = cut_weights(a, e0.h, order)
    reach = int(np.max(np.abs(spec.offsets)))
    free_mask = np.zeros(e0.dims, dtype=bool)
    free_mask[(slice(reach, -reach),) * e0.n] = True
    problem = build_problem(e0, free_mask, spec, unary=e0.cell_volume / kappa)
    flat = e0.cells.reshape(-1)
    result = flat.copy()
    result[problem.free] = solve_min_cut(problem, flat)
    changed = int(np.count_nonzero(result != flat))
    logger.debug(f"polish(kappa={kappa:g}) changed {changed} cells")
    return e0.with_cells(result.reshape(e0.dims))
