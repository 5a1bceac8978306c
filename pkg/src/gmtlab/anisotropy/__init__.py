from gmtlab.anisotropy.base import (
    Anisotropy,
    AnisotropyError,
    AnisotropyKind,
    Modulation,
    phi_eval,
    phi_grad,
    phi_hess,
)
from gmtlab.anisotropy.factory import parse_anisotropy, register_kind
from gmtlab.anisotropy.validation import (
    ValidationReport,
    Violation,
    measure_constants,
    validate_ellipticity,
)

__all__ = [
    "Anisotropy",
    "AnisotropyError",
    "AnisotropyKind",
    "Modulation",
    "ValidationReport",
    "Violation",
    "measure_constants",
    "parse_anisotropy",
    "phi_eval",
    "phi_grad",
    "phi_hess",
    "register_kind",
    "validate_ellipticity",
]
