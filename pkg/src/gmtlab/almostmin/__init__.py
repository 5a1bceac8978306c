from gmtlab.almostmin.certify import (
    GapSample,
    LambdaCertificate,
    certify_lambda,
    certify_point,
    default_radii,
    with_window_room,
)
from gmtlab.almostmin.competitor import (
    Competitor,
    TooManyFreeCellsError,
    brute_force_competitor,
    local_optimal_competitor,
)
from gmtlab.almostmin.cut_metric import (
    SUPPORTED_ORDERS,
    CutGraphSpec,
    CutMetricError,
    cut_perimeter,
    cut_weights,
)
from gmtlab.almostmin.polish import lambda_bound, polish
from gmtlab.almostmin.singular import (
    SingularCandidate,
    SingularScanReport,
    scan_points,
    singular_scan,
)
from gmtlab.almostmin.stability import StabilityReport, stability_check

__all__ = [
    "SUPPORTED_ORDERS",
    "Competitor",
    "CutGraphSpec",
    "CutMetricError",
    "GapSample",
    "LambdaCertificate",
    "SingularCandidate",
    "SingularScanReport",
    "StabilityReport",
    "TooManyFreeCellsError",
    "brute_force_competitor",
    "certify_lambda",
    "certify_point",
    "cut_perimeter",
    "cut_weights",
    "default_radii",
    "lambda_bound",
    "local_optimal_competitor",
    "polish",
    "scan_points",
    "singular_scan",
    "stability_check",
    "with_window_room",
]
