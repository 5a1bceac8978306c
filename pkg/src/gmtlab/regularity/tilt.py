"""One step of excess decay: fit the graph, tilt the axis, measure at theta r."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from gmtlab.anisotropy import Anisotropy
from gmtlab.core.constants import SMALL_EXCESS_THRESHOLD
from gmtlab.core.logging import get_logger
from gmtlab.excess.functionals import cylindrical_excess, spherical_excess
from gmtlab.regularity.lipschitz import LipschitzApprox, lipschitz_approx
from gmtlab.sets import DiscreteSet
from gmtlab.utils.geometry import normalize

logger = get_logger(__name__)

DEFAULT_ETA = 0.1


@dataclass(frozen=True)
class AffineFit:
    offset: float
    slope: np.ndarray
    residual: float


@dataclass(frozen=True)
class TiltReport:
    x: np.ndarray
    r: float
    theta: float
    nu_old: np.ndarray
    nu_new: np.ndarray
    slope: np.ndarray
    excess_before: float
    excess_after: float
    chi: float
    decay_ratio: float
    dirichlet: float
    lam: float
    ell: float
    precondition_ok: bool = True

    @property
    def tilt(self) -> float:
        """|nu_new - nu_old|^2."""
        return float(np.sum((self.nu_new - self.nu_old) ** 2))


def affine_residual(la: LipschitzApprox, offset: float, slope: np.ndarray) -> float:
    """Mean squared misfit of w(t) = offset + slope . t over the good nodes in B'_r."""
    mask = la.good_mask & la.inside_mask
    t = la.grid[mask]
    misfit = la.u[mask] - offset - t @ np.asarray(slope, dtype=float)
    return float(np.mean(misfit**2))


def fit_affine(la: LipschitzApprox) -> AffineFit:
    """Least-squares affine w on the good nodes, each carrying the same cell measure."""
    mask = la.good_mask & la.inside_mask
    t = la.grid[mask]
    design = np.column_stack([np.ones(len(t)), t])
    coefficients, *_ = np.linalg.lstsq(design, la.u[mask], rcond=None)
    offset, slope = float(coefficients[0]), coefficients[1:]
    residual = affine_residual(la, offset, slope)
    return AffineFit(offset=offset, slope=slope, residual=residual)


def tilt_step(
    e: DiscreteSet,
    x: np.ndarray,
    r: float,
    theta: float,
    a: Anisotropy,
    lam: float,
    eta: float = DEFAULT_ETA,
    chi_constant: float = 1.0,
    excess_threshold: float = SMALL_EXCESS_THRESHOLD,
) -> TiltReport:
    """Tilt nu_old toward the normal of the affine fit and compare excess at r and theta r.

    The graph is fitted in the nu_old-cylinder of radius r / sqrt(2), which
    sits inside B_r(x). nu_new = (-grad w, 1) / sqrt(1 + |grad w|^2) in that
    frame.
    """
    if not 0 < theta < 1:
        raise ValueError(f"theta must lie in (0, 1), got {theta}")
    x = np.asarray(x, dtype=float)
    before = spherical_excess(e, x, r)
    precondition_ok = before.excess <= excess_threshold
    if not precondition_ok:
        logger.warning(
            f"Exc at r={r:.4g} is {before.excess:.3g}, above {excess_threshold:.3g}"
        )
    nu_old = before.nu_opt
    la = lipschitz_approx(e, x, r / math.sqrt(2.0), nu_old)
    fit = fit_affine(la)
    dim = la.n - 1
    nu_new = normalize(nu_old - la.frame[:, :dim] @ fit.slope)
    after = cylindrical_excess(e, x, theta * r, nu_new)

    ell = a.ell
    denominator = theta**2 * before.excess + lam + ell * theta * r
    if denominator > 0:
        decay_ratio = after / denominator
    else:
        decay_ratio = 0.0 if after <= 0 else math.inf
    return TiltReport(
        x=x,
        r=r,
        theta=theta,
        nu_old=nu_old,
        nu_new=nu_new,
        slope=fit.slope,
        excess_before=before.excess,
        excess_after=after,
        chi=chi_constant * (before.excess + lam / eta + ell * r),
        decay_ratio=decay_ratio,
        dirichlet=la.dirichlet,
        lam=lam,
        ell=ell,
        precondition_ok=precondition_ok,
    )
