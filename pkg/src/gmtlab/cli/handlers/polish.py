"""polish: fidelity-penalized global min cut of the voxel set."""

import asyncio

from gmtlab.almostmin import lambda_bound, polish
from gmtlab.cli.core.context import Context
from gmtlab.cli.theme import console
from gmtlab.core.constants import EXIT_OK
from gmtlab.core.settings import settings
from gmtlab.reports import plot_boundary
from gmtlab.sets import VoxelSet, boundary_of


class PolishHandler:
    def __init__(self, context: Context) -> None:
        self.context = context

    async def polish(self) -> VoxelSet:
        c = self.context.config
        v = self.context.voxels()
        polished = await asyncio.to_thread(polish, v, c.kappa, self.context.anisotropy, c.order)
        await self.context.write_set("polished.vox", polished)
        changed = int((polished.cells ^ v.cells).sum())
        console.print(
            f"{changed} cells changed; Lambda <= [value]"
            f"{lambda_bound(c.n, c.r0, c.kappa):.4g}[/value] for radii <= r0"
        )
        return polished

    async def handle(self) -> int:
        polished = await self.polish()
        if polished.n == 2:
            await self.context.write_plot(
                plot_boundary, f"polish.{settings.cli.plot_format}", boundary_of(polished)
            )
        return EXIT_OK
