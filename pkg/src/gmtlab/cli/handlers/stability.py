"""stability: worst Reifenberg delta over polished noisy copies of the set."""

import asyncio

from gmtlab.almostmin import stability_check
from gmtlab.cli.core.context import Context
from gmtlab.cli.theme import console
from gmtlab.core.constants import EXIT_OK, EXIT_THRESHOLD_VIOLATED
from gmtlab.reports import Table


class StabilityHandler:
    def __init__(self, context: Context) -> None:
        self.context = context

    async def handle(self) -> int:
        c = self.context.config
        report = await asyncio.to_thread(
            stability_check,
            self.context.voxels(),
            self.context.anisotropy,
            c.kappa,
            self.context.point(),
            c.r,
            c.delta,
            seed=c.seed,
            subball_count=c.subball_count,
        )
        table = Table(["copy", "delta_measured", "separation_ok", "passed"])
        for k, r in enumerate(report.reports):
            table.add(k, r.delta_measured, r.separation_ok, r.passed)
        await self.context.write_table("stability.csv", table)
        console.print_verdict(
            report.passed,
            f"worst delta {report.worst_delta:.4g} over {len(report.reports)} copies",
        )
        return EXIT_OK if report.passed else EXIT_THRESHOLD_VIOLATED
