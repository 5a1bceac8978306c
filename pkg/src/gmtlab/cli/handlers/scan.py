"""scan: excess, direction and flatness over geometric scales at one point."""

import asyncio

from gmtlab.cli.core.context import Context
from gmtlab.cli.theme import console
from gmtlab.core.constants import EXIT_OK, EXIT_THRESHOLD_VIOLATED
from gmtlab.core.settings import settings
from gmtlab.excess import multiscale_scan
from gmtlab.reports import plot_scan, scan_table


class ScanHandler:
    def __init__(self, context: Context) -> None:
        self.context = context

    async def handle(self) -> int:
        c = self.context.config
        x = self.context.point()
        scan = await asyncio.to_thread(
            multiscale_scan, self.context.shape, x, c.theta, c.r0, c.k_max
        )
        await self.context.write_table("scan.csv", scan_table(scan))
        await self.context.write_plot(plot_scan, f"scan.{settings.cli.plot_format}", scan)

        if scan.truncated:
            console.print_warning(
                f"Scan stopped after {len(scan.entries)} scales (too few facets)"
            )
        passed = scan.sup_excess <= c.excess_threshold
        console.print_verdict(
            passed,
            f"sup excess {scan.sup_excess:.6g} "
            f"({'<=' if passed else '>'} {c.excess_threshold:.6g})",
        )
        return EXIT_OK if passed else EXIT_THRESHOLD_VIOLATED
