from gmtlab.regularity.caccioppoli import CaccioppoliResult, caccioppoli_ratio
from gmtlab.regularity.harmonic import (
    Bump,
    HarmonicityResidual,
    bump_dictionary,
    first_variation_residual,
    harmonicity_residual,
    tangential_matrix,
)
from gmtlab.regularity.height import HeightBound, height_bound_check
from gmtlab.regularity.lipschitz import (
    LipschitzApprox,
    LipschitzApproxError,
    lipschitz_approx,
)
from gmtlab.regularity.reifenberg import (
    RegularityHypotheses,
    ReifenbergReport,
    SubBallResult,
    epsilon_of_delta,
    plane_disk_samples,
    reifenberg_check,
)
from gmtlab.regularity.tilt import (
    AffineFit,
    TiltReport,
    affine_residual,
    fit_affine,
    tilt_step,
)

__all__ = [
    "AffineFit",
    "Bump",
    "CaccioppoliResult",
    "HarmonicityResidual",
    "HeightBound",
    "LipschitzApprox",
    "LipschitzApproxError",
    "RegularityHypotheses",
    "ReifenbergReport",
    "SubBallResult",
    "TiltReport",
    "affine_residual",
    "bump_dictionary",
    "epsilon_of_delta",
    "caccioppoli_ratio",
    "first_variation_residual",
    "fit_affine",
    "harmonicity_residual",
    "height_bound_check",
    "lipschitz_approx",
    "plane_disk_samples",
    "reifenberg_check",
    "tangential_matrix",
    "tilt_step",
]
