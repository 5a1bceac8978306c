"""One handler per batch command."""

from gmtlab.cli.handlers.anisotropy import ValidateAnisotropyHandler
from gmtlab.cli.handlers.caccioppoli import CaccioppoliHandler
from gmtlab.cli.handlers.certify import CertifyHandler
from gmtlab.cli.handlers.density import DensityHandler
from gmtlab.cli.handlers.e2e import EndToEndHandler
from gmtlab.cli.handlers.lipapprox import LipschitzHandler
from gmtlab.cli.handlers.measure import MeasureHandler
from gmtlab.cli.handlers.polish import PolishHandler
from gmtlab.cli.handlers.reifenberg import ReifenbergHandler
from gmtlab.cli.handlers.scan import ScanHandler
from gmtlab.cli.handlers.singular import SingularHandler
from gmtlab.cli.handlers.stability import StabilityHandler
from gmtlab.cli.handlers.tilt import TiltHandler

__all__ = [
    "CaccioppoliHandler",
    "CertifyHandler",
    "DensityHandler",
    "EndToEndHandler",
    "LipschitzHandler",
    "MeasureHandler",
    "PolishHandler",
    "ReifenbergHandler",
    "ScanHandler",
    "SingularHandler",
    "StabilityHandler",
    "TiltHandler",
    "ValidateAnisotropyHandler",
]
