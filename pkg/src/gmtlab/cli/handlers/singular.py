"""singular: points whose excess never drops below epsilon over the trusted scales."""

import asyncio

import numpy as np

from gmtlab.almostmin import singular_scan
from gmtlab.cli.core.context import Context
from gmtlab.cli.theme import console
from gmtlab.core.constants import EXIT_OK, EXIT_THRESHOLD_VIOLATED
from gmtlab.core.settings import settings
from gmtlab.reports import plot_boundary, singular_table
from gmtlab.sets import Ball, boundary_of


class SingularHandler:
    def __init__(self, context: Context) -> None:
        self.context = context

    async def handle(self) -> int:
        c = self.context.config
        region = None
        points = None
        if c.region_radius is not None:
            region = Ball(self.context.point(), c.region_radius)
        elif c.x is not None:
            points = np.atleast_2d(np.asarray(c.x, dtype=float))
        report = await asyncio.to_thread(
            singular_scan,
            self.context.shape,
            c.epsilon,
            c.theta,
            c.r0,
            c.k_max,
            points=points,
            stride=c.stride,
            region=region,
            seed=c.seed,
        )
        await self.context.write_table("singular.csv", singular_table(report, c.n))
        if c.n == 2:
            await self.context.write_plot(
                plot_boundary,
                f"singular.{settings.cli.plot_format}",
                boundary_of(self.context.shape),
                marks=report.points,
            )
        for candidate in report.candidates:
            console.print_warning(
                f"candidate at {np.round(candidate.x, 6).tolist()}, "
                f"min excess {candidate.min_excess:.4g}"
            )
        passed = not report.candidates
        console.print_verdict(
            passed, f"{len(report.candidates)} of {report.scanned} points flagged"
        )
        return EXIT_OK if passed else EXIT_THRESHOLD_VIOLATED
