"""Excess at scale r against flatness at scale 2r."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from gmtlab.core.constants import SMALL_EXCESS_THRESHOLD
from gmtlab.core.logging import get_logger
from gmtlab.excess.functionals import EmptyBoundaryError, cylindrical_excess, flatness
from gmtlab.sets import DiscreteSet

logger = get_logger(__name__)


@dataclass(frozen=True)
class CaccioppoliResult:
    ratio: float
    excess: float
    flatness: float
    lam: float
    ell: float
    r: float
    infinite: bool = False
    precondition_ok: bool = True

    @property
    def denominator(self) -> float:
        return self.flatness + self.lam + self.ell * self.r


def caccioppoli_ratio(
    e: DiscreteSet,
    x: np.ndarray,
    r: float,
    nu: np.ndarray,
    lam: float,
    ell: float,
    excess_threshold: float = SMALL_EXCESS_THRESHOLD,
) -> CaccioppoliResult:
    """Exc_nu(E, x, r) / (f_{2,nu}(E, x, 2r) + Lambda + ell r).

    0/0 is reported as 0 and a positive excess over a zero denominator as an
    infinite ratio. The ratio is still computed when Exc_nu(E, x, 4r) is
    above the threshold, but ``precondition_ok`` is cleared.
    """
    x = np.asarray(x, dtype=float)
    try:
        outer = cylindrical_excess(e, x, 4 * r, nu)
        precondition_ok = outer <= excess_threshold
    except EmptyBoundaryError:
        precondition_ok = False
    if not precondition_ok:
        logger.warning(
            f"Exc_nu at 4r={4 * r:.4g} is above {excess_threshold:.3g}; "
            "ratio is indicative only"
        )

    excess = cylindrical_excess(e, x, r, nu)
    flat = flatness(e, x, 2 * r, nu).value
    denominator = flat + lam + ell * r
    if denominator > 0:
        ratio, infinite = excess / denominator, False
    elif excess > 0:
        ratio, infinite = math.inf, True
    else:
        ratio, infinite = 0.0, False
    return CaccioppoliResult(
        ratio=ratio,
        excess=excess,
        flatness=flat,
        lam=lam,
        ell=ell,
        r=r,
        infinite=infinite,
        precondition_ok=precondition_ok,
    )
