"""lipapprox: Lipschitz graph approximation, harmonicity residuals and the height bound."""

from __future__ import annotations

import asyncio
from dataclasses import dataclass

import numpy as np

from gmtlab.cli.core.context import Context
from gmtlab.cli.theme import console
from gmtlab.core.constants import EXIT_OK, EXIT_THRESHOLD_VIOLATED
from gmtlab.core.logging import get_logger
from gmtlab.excess import cylindrical_excess, spherical_excess
from gmtlab.regularity import (
    HarmonicityResidual,
    HeightBound,
    LipschitzApprox,
    first_variation_residual,
    harmonicity_residual,
    height_bound_check,
    lipschitz_approx,
)
from gmtlab.reports import Table, height_table, lipschitz_grid_table
from gmtlab.reports.tables import coordinate_names

logger = get_logger(__name__)


@dataclass(frozen=True)
class LipschitzRun:
    x: np.ndarray
    nu: np.ndarray
    wide_excess: float
    approx: LipschitzApprox
    harmonicity: HarmonicityResidual
    first_variation: HarmonicityResidual
    height: HeightBound

    @property
    def lip_bound(self) -> float:
        """Largest Lipschitz constant the slope limiter can leave behind."""
        return 1.0 + 2.0 * self.approx.pitch / self.approx.r


class LipschitzHandler:
    def __init__(self, context: Context) -> None:
        self.context = context

    def _run(self) -> LipschitzRun:
        c = self.context.config
        e = self.context.shape
        a = self.context.anisotropy
        x = self.context.point()
        nu = self.context.direction(spherical_excess(e, x, c.r).nu_opt)
        wide = cylindrical_excess(e, x, 2 * c.r, nu)
        if wide > c.excess_threshold:
            logger.warning(
                f"Exc_nu at 2r is {wide:.3g}, above {c.excess_threshold:.3g}"
            )
        approx = lipschitz_approx(e, x, c.r, nu, sigma=c.sigma)
        return LipschitzRun(
            x=x,
            nu=approx.nu,
            wide_excess=wide,
            approx=approx,
            harmonicity=harmonicity_residual(approx, a, x),
            first_variation=first_variation_residual(e, a, x, c.r, approx.nu),
            height=height_bound_check(e, x, c.r, approx.nu, c.delta),
        )

    async def handle(self) -> int:
        run = await asyncio.to_thread(self._run)
        la = run.approx
        n = self.context.config.n

        summary = Table(
            [
                *coordinate_names("x", n),
                "r",
                *coordinate_names("nu", n),
                "sigma",
                "wide_excess",
                "good_count",
                "coverage_defect",
                "sup_u",
                "lip_const",
                "dirichlet",
                "harmonicity",
                "first_variation",
            ]
        )
        summary.add(
            run.x,
            la.r,
            run.nu,
            la.sigma,
            run.wide_excess,
            la.good_count,
            la.coverage_defect,
            la.sup_u,
            la.lip_const,
            la.dirichlet,
            run.harmonicity.value,
            run.first_variation.value,
        )
        await self.context.write_table("lipapprox.csv", summary)
        await self.context.write_table("u.csv", lipschitz_grid_table(la))
        await self.context.write_table("height.csv", height_table(run.x, run.height))

        console.print(
            f"coverage defect [value]{la.coverage_defect:.4g}[/value], "
            f"Lip [value]{la.lip_const:.4g}[/value], "
            f"Dirichlet [value]{la.dirichlet:.4g}[/value], "
            f"harmonicity [value]{run.harmonicity.value:.4g}[/value]"
        )
        precondition_ok = run.wide_excess <= self.context.config.excess_threshold
        lip_ok = la.lip_const <= run.lip_bound
        if not precondition_ok:
            console.print_warning("Small-excess precondition at 2r not met")
        console.print_verdict(
            precondition_ok and lip_ok,
            f"Lipschitz constant {la.lip_const:.4g} (bound {run.lip_bound:.4g})",
        )
        return EXIT_OK if precondition_ok and lip_ok else EXIT_THRESHOLD_VIOLATED
