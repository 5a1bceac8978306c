"""reifenberg: two-sided plane distance and separation on sub-balls."""

import asyncio

from gmtlab.cli.core.context import Context
from gmtlab.cli.theme import console
from gmtlab.core.constants import EXIT_OK, EXIT_THRESHOLD_VIOLATED
from gmtlab.regularity import reifenberg_check
from gmtlab.reports import reifenberg_table


class ReifenbergHandler:
    def __init__(self, context: Context) -> None:
        self.context = context

    async def handle(self) -> int:
        c = self.context.config
        report = await asyncio.to_thread(
            reifenberg_check,
            self.context.shape,
            self.context.point(),
            c.r,
            c.delta,
            c.subball_count,
            c.seed,
        )
        await self.context.write_table("reifenberg.csv", reifenberg_table(report))
        if report.skipped:
            console.print_warning(f"{report.skipped} sub-balls without boundary skipped")
        console.print_verdict(
            report.passed,
            f"delta measured {report.delta_measured:.6g} at delta {c.delta:.6g}, "
            f"separation {'ok' if report.separation_ok else 'fails'}",
        )
        return EXIT_OK if report.passed else EXIT_THRESHOLD_VIOLATED
