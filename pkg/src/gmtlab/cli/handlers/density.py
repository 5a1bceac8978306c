"""density: volume and perimeter ratios against their pass band."""

import asyncio

from gmtlab.cli.core.context import Context
from gmtlab.cli.theme import console
from gmtlab.core.constants import EXIT_OK, EXIT_THRESHOLD_VIOLATED
from gmtlab.measures import DensityThresholds, density_check
from gmtlab.reports import density_table


class DensityHandler:
    def __init__(self, context: Context) -> None:
        self.context = context

    def _thresholds(self) -> DensityThresholds:
        config = self.context.config
        thresholds = DensityThresholds.default(config.n)
        vol_min = config.density_vol_min
        per_lo, per_hi = config.density_per_range or (thresholds.per_lo, thresholds.per_hi)
        return DensityThresholds(
            vol_min=thresholds.vol_min if vol_min is None else vol_min,
            per_lo=per_lo,
            per_hi=per_hi,
        )

    async def handle(self) -> int:
        report = await asyncio.to_thread(
            density_check,
            self.context.shape,
            self.context.anisotropy,
            self.context.points(),
            self.context.radii(),
            self._thresholds(),
        )
        await self.context.write_table("density.csv", density_table(report))

        console.print(
            f"c_vol_min [value]{report.c_vol_min:.6g}[/value], "
            f"c_per in [[value]{report.c_per_min:.6g}[/value], "
            f"[value]{report.c_per_max:.6g}[/value]], "
            f"c_iso_max [value]{report.c_iso_max:.6g}[/value]"
        )
        console.print_verdict(
            report.passed, f"{len(report.flagged)} of {len(report.samples)} samples flagged"
        )
        return EXIT_OK if report.passed else EXIT_THRESHOLD_VIOLATED
