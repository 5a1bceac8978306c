"""e2e: polish, certify, scan and Reifenberg-check in one run."""

import asyncio

from gmtlab.cli.core.context import Context
from gmtlab.cli.handlers.certify import CertifyHandler
from gmtlab.cli.handlers.polish import PolishHandler
from gmtlab.cli.theme import console
from gmtlab.core.constants import EXIT_OK, EXIT_THRESHOLD_VIOLATED
from gmtlab.core.settings import settings
from gmtlab.excess import multiscale_scan
from gmtlab.regularity import RegularityHypotheses, reifenberg_check
from gmtlab.reports import Table, plot_scan, reifenberg_table, scan_table


class EndToEndHandler:
    """Lambda, excess and ell r below epsilon(delta) should give a delta-flat boundary."""

    def __init__(self, context: Context) -> None:
        self.context = context

    async def handle(self) -> int:
        c = self.context.config
        polished = await PolishHandler(self.context).polish()

        certifier = CertifyHandler(self.context)
        certificate = await certifier.certify(polished)
        certified = await certifier.report(certificate)

        x = self.context.point(polished, snap=True)
        scan = await asyncio.to_thread(multiscale_scan, polished, x, c.theta, c.r0, c.k_max)
        await self.context.write_table("scan.csv", scan_table(scan))
        await self.context.write_plot(plot_scan, f"scan.{settings.cli.plot_format}", scan)

        flat = await asyncio.to_thread(
            reifenberg_check, polished, x, c.r, c.delta, c.subball_count, c.seed
        )
        await self.context.write_table("reifenberg.csv", reifenberg_table(flat))

        hypotheses = RegularityHypotheses(
            delta=c.delta,
            lambda_hat=certificate.lambda_hat,
            sup_excess=scan.sup_trusted_excess,
            ell_r=self.context.anisotropy.ell * c.r0,
        )
        passed = certified and hypotheses.hold and flat.passed
        summary = Table(
            [
                "lambda_hat",
                "sup_excess",
                "ell_r",
                "epsilon",
                "hypotheses_hold",
                "delta_measured",
                "separation_ok",
                "passed",
            ]
        )
        summary.add(
            certificate.lambda_hat,
            float("nan") if hypotheses.sup_excess is None else hypotheses.sup_excess,
            hypotheses.ell_r,
            hypotheses.epsilon,
            hypotheses.hold,
            flat.delta_measured,
            flat.separation_ok,
            passed,
        )
        await self.context.write_table("e2e.csv", summary)

        console.print_verdict(
            hypotheses.hold,
            f"epsilon({c.delta:.4g}) = {hypotheses.epsilon:.4g}"
            + (f", exceeded by {', '.join(hypotheses.violated)}" if not hypotheses.hold else ""),
        )
        console.print_verdict(
            flat.passed,
            f"Reifenberg delta {flat.delta_measured:.4g} at delta {c.delta:.4g}",
        )
        return EXIT_OK if passed else EXIT_THRESHOLD_VIOLATED
