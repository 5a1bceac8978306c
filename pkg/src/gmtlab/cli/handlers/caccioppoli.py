"""caccioppoli: Exc_nu(r) over flatness at 2r plus Lambda and ell r, per sample point."""

import math

import numpy as np

from gmtlab.cli.core.context import Context
from gmtlab.cli.theme import console
from gmtlab.core.constants import CACCIOPPOLI_BOUND, EXIT_OK, EXIT_THRESHOLD_VIOLATED
from gmtlab.core.logging import get_logger
from gmtlab.excess import EmptyBoundaryError, spherical_excess
from gmtlab.regularity import CaccioppoliResult, caccioppoli_ratio
from gmtlab.reports import caccioppoli_table

logger = get_logger(__name__)


class CaccioppoliHandler:
    """Lambda in the denominator is the configured ``lambda_threshold``."""

    def __init__(self, context: Context) -> None:
        self.context = context

    def _ratio(self, x: np.ndarray) -> CaccioppoliResult | None:
        c = self.context.config
        e = self.context.shape
        nu = self.context.direction(spherical_excess(e, x, c.r).nu_opt)
        try:
            return caccioppoli_ratio(
                e,
                x,
                c.r,
                nu,
                c.lambda_threshold,
                self.context.anisotropy.ell,
                c.excess_threshold,
            )
        except EmptyBoundaryError as err:
            logger.warning(f"Skipping {x.tolist()}: {err}")
            return None

    async def handle(self) -> int:
        points = list(self.context.points())
        results = await self.context.map(self._ratio, points)
        kept = [(x, res) for x, res in zip(points, results, strict=True) if res]
        table = caccioppoli_table(
            np.array([x for x, _ in kept]).reshape(-1, self.context.config.n),
            [res for _, res in kept],
        )
        await self.context.write_table("caccioppoli.csv", table)

        ratios = [res.ratio for _, res in kept]
        worst = max(ratios, default=0.0)
        passed = math.isfinite(worst) and worst <= CACCIOPPOLI_BOUND
        unmet = sum(not res.precondition_ok for _, res in kept)
        if unmet:
            console.print_warning(f"{unmet} points above the small-excess threshold at 4r")
        console.print_verdict(
            passed, f"worst ratio {worst:.4g} over {len(kept)} points (bound {CACCIOPPOLI_BOUND:g})"
        )
        return EXIT_OK if passed else EXIT_THRESHOLD_VIOLATED
