from gmtlab.measures.density import (
    DensityReport,
    DensitySample,
    DensityThresholds,
    density_check,
)
from gmtlab.measures.perimeter import perimeter, perimeter_phi

__all__ = [
    "DensityReport",
    "DensitySample",
    "DensityThresholds",
    "density_check",
    "perimeter",
    "perimeter_phi",
]
