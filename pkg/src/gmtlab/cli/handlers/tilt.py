"""tilt: one tilt step per sample point."""

import numpy as np

from gmtlab.cli.core.context import Context
from gmtlab.cli.theme import console
from gmtlab.core.constants import EXIT_OK, EXIT_THRESHOLD_VIOLATED, TILT_DIRICHLET_FACTOR
from gmtlab.core.logging import get_logger
from gmtlab.regularity import LipschitzApproxError, TiltReport, tilt_step
from gmtlab.reports import tilt_table

logger = get_logger(__name__)


class TiltHandler:
    def __init__(self, context: Context) -> None:
        self.context = context

    def _step(self, x: np.ndarray) -> TiltReport | None:
        c = self.context.config
        try:
            return tilt_step(
                self.context.shape,
                x,
                c.r,
                c.theta,
                self.context.anisotropy,
                c.lambda_threshold,
                eta=c.eta,
                chi_constant=c.chi_constant,
                excess_threshold=c.excess_threshold,
            )
        except LipschitzApproxError as err:
            logger.warning(f"Skipping {x.tolist()}: {err}")
            return None

    async def handle(self) -> int:
        reports = [
            report
            for report in await self.context.map(self._step, list(self.context.points()))
            if report is not None
        ]
        await self.context.write_table("tilt.csv", tilt_table(reports))

        unmet = [t for t in reports if not t.precondition_ok]
        too_steep = [
            t for t in reports if t.tilt > TILT_DIRICHLET_FACTOR * t.dirichlet + 1e-12
        ]
        if unmet:
            console.print_warning(f"{len(unmet)} points above the small-excess threshold")
        worst = max((t.decay_ratio for t in reports), default=0.0)
        passed = bool(reports) and not unmet and not too_steep
        console.print_verdict(
            passed,
            f"{len(reports)} steps, worst decay ratio {worst:.4g}, "
            f"{len(too_steep)} tilts above {TILT_DIRICHLET_FACTOR:g} x Dirichlet",
        )
        return EXIT_OK if passed else EXIT_THRESHOLD_VIOLATED
