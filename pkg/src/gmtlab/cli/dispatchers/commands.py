"""Batch command table and dispatch."""

from collections.abc import Awaitable, Callable
from typing import Protocol

from gmtlab.cli.core.context import Context
from gmtlab.cli.handlers import (
    CaccioppoliHandler,
    CertifyHandler,
    DensityHandler,
    EndToEndHandler,
    LipschitzHandler,
    MeasureHandler,
    PolishHandler,
    ReifenbergHandler,
    ScanHandler,
    SingularHandler,
    StabilityHandler,
    TiltHandler,
    ValidateAnisotropyHandler,
)
from gmtlab.cli.theme import console
from gmtlab.core.constants import EXIT_INPUT_ERROR
from gmtlab.core.logging import get_logger

logger = get_logger(__name__)


class Handler(Protocol):
    def __init__(self, context: Context) -> None: ...

    async def handle(self) -> int: ...


HANDLERS: dict[str, type[Handler]] = {
    "validate-anisotropy": ValidateAnisotropyHandler,
    "measure": MeasureHandler,
    "density": DensityHandler,
    "scan": ScanHandler,
    "reifenberg": ReifenbergHandler,
    "lipapprox": LipschitzHandler,
    "caccioppoli": CaccioppoliHandler,
    "tilt": TiltHandler,
    "certify": CertifyHandler,
    "polish": PolishHandler,
    "singular": SingularHandler,
    "stability": StabilityHandler,
    "e2e": EndToEndHandler,
}

COMMAND_HELP = {
    "validate-anisotropy": "sampled check of the ellipticity conditions",
    "measure": "perimeter, excess and flatness at sample points",
    "density": "volume and perimeter density ratios",
    "scan": "multiscale excess scan at one point, with plot",
    "reifenberg": "Reifenberg flatness on sub-balls",
    "lipapprox": "Lipschitz approximation, harmonicity residuals, height bound",
    "caccioppoli": "Caccioppoli ratio at sample points",
    "tilt": "one tilt step at sample points",
    "certify": "sampled certificate of the almost-minimality constant",
    "polish": "fidelity-penalized min cut of a voxel set",
    "singular": "multiscale search for points of persistent excess",
    "stability": "worst Reifenberg delta over polished noisy copies",
    "e2e": "polish, certify, scan and Reifenberg check in one run",
}


class CommandDispatcher:
    """Dispatch a batch command to its handler."""

    def __init__(self, context: Context) -> None:
        self.context = context
        self.commands = self._register_commands()

    def _register_commands(self) -> dict[str, Callable[[], Awaitable[int]]]:
        return {name: handler(self.context).handle for name, handler in HANDLERS.items()}

    async def dispatch(self, command: str) -> int:
        handler = self.commands.get(command)
        if handler is None:
            console.print_error(f"Unknown command: {command}")
            return EXIT_INPUT_ERROR
        logger.debug(f"Dispatching '{command}'")
        return await handler()
