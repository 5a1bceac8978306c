"""validate-anisotropy: sampled check of the ellipticity conditions."""

import asyncio

from gmtlab.anisotropy import validate_ellipticity
from gmtlab.cli.core.context import Context
from gmtlab.cli.theme import console
from gmtlab.core.constants import EXIT_OK, EXIT_THRESHOLD_VIOLATED
from gmtlab.core.logging import get_logger
from gmtlab.core.settings import settings
from gmtlab.reports import validation_table

logger = get_logger(__name__)


class ValidateAnisotropyHandler:
    """Measures the tightest (lambda, ell) and compares them to the declared ones."""

    def __init__(self, context: Context) -> None:
        self.context = context

    async def handle(self) -> int:
        a = self.context.anisotropy
        report = await asyncio.to_thread(
            validate_ellipticity,
            a,
            settings.numerics.anisotropy_samples,
            self.context.config.seed,
        )
        await self.context.write_table("validation.csv", validation_table(report))

        console.print(
            f"lambda_min [value]{report.lambda_min:.6g}[/value] "
            f"(declared {report.declared_lambda:.6g}, binding term "
            f"[accent]{report.binding_term}[/accent]), "
            f"ell_min [value]{report.ell_min:.6g}[/value] "
            f"(declared {report.declared_ell:.6g})"
        )
        for violation in report.violations:
            console.print_warning(
                f"line {violation.line} ({violation.term}): needs "
                f"{violation.required:.6g}, declared {violation.declared:.6g}"
            )
        console.print_verdict(report.passed, f"Anisotropy '{a.spec}'")
        return EXIT_OK if report.passed else EXIT_THRESHOLD_VIOLATED
