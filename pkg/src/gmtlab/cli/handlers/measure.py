"""measure: perimeter, excess and flatness at sample points."""

import numpy as np

from gmtlab.cli.core.context import Context
from gmtlab.cli.theme import console
from gmtlab.core.constants import EXIT_OK
from gmtlab.core.logging import get_logger
from gmtlab.excess import EmptyBoundaryError, cylindrical_excess, flatness, spherical_excess
from gmtlab.measures import perimeter, perimeter_phi
from gmtlab.reports import Table
from gmtlab.reports.tables import coordinate_names
from gmtlab.sets import Ball, boundary_of

logger = get_logger(__name__)


class MeasureHandler:
    def __init__(self, context: Context) -> None:
        self.context = context

    def _measure(self, x: np.ndarray) -> list:
        e = self.context.shape
        r = self.context.config.r
        patch = boundary_of(e)
        ball = Ball(x, r)
        fit = spherical_excess(e, x, r)
        nu = self.context.direction(fit.nu_opt)
        try:
            flat = flatness(e, x, r, nu).value
            cyl = cylindrical_excess(e, x, r, nu)
        except EmptyBoundaryError:
            logger.warning(f"No boundary in the cylinder at {x.tolist()}")
            flat = cyl = float("nan")
        return [
            x,
            r,
            perimeter(patch, ball),
            perimeter_phi(patch, self.context.anisotropy, ball),
            fit.excess,
            nu,
            flat,
            cyl,
        ]

    async def handle(self) -> int:
        points = self.context.points()
        n = self.context.config.n
        rows = await self.context.map(self._measure, list(points))

        table = Table(
            [
                *coordinate_names("x", n),
                "r",
                "perimeter",
                "phi_perimeter",
                "excess",
                *coordinate_names("nu", n),
                "flatness",
                "cyl_excess",
            ]
        )
        for row in rows:
            table.add(*row)
        await self.context.write_table("measure.csv", table)

        excess = np.array(table.column("excess"), dtype=float)
        console.print(
            f"{len(rows)} points, max excess [value]{np.max(excess, initial=0.0):.6g}[/value]"
        )
        return EXIT_OK
