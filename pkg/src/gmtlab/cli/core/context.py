"""Run context shared by the command handlers."""

from __future__ import annotations

import asyncio
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any, TypeVar

import numpy as np
from pydantic import BaseModel, ConfigDict, PrivateAttr

from gmtlab.anisotropy import Anisotropy, parse_anisotropy
from gmtlab.cli.bootstrap.timer import timer
from gmtlab.cli.theme import console
from gmtlab.configs import ExperimentConfig
from gmtlab.core.logging import get_logger
from gmtlab.reports import Table, write_table
from gmtlab.sets import (
    DiscreteSet,
    InvalidSetError,
    VoxelSet,
    boundary_of,
    generate,
    load_set,
    nearest_boundary_point,
    rasterize,
    sample_boundary_points,
    save_set,
)

logger = get_logger(__name__)

T = TypeVar("T")
R = TypeVar("R")


async def load_source(config: ExperimentConfig, anisotropy: Anisotropy) -> DiscreteSet:
    """A set file when ``source`` names one, otherwise a generator spec."""
    path = Path(config.source).expanduser()
    if await asyncio.to_thread(path.is_file):
        shape = await asyncio.to_thread(load_set, path, config.smoothing)
    else:
        shape = await asyncio.to_thread(
            generate, config.source, anisotropy, config.smoothing
        )
    if shape.n != config.n:
        raise InvalidSetError(
            f"Source '{config.source}' has n={shape.n}, the config asks for n={config.n}"
        )
    return shape


class Context(BaseModel):
    """Config, anisotropy and set of one run, plus output helpers."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    command: str
    config: ExperimentConfig
    anisotropy: Anisotropy
    shape: DiscreteSet
    config_hash: str

    _voxels: VoxelSet | None = PrivateAttr(default=None)
    _written: list[Path] = PrivateAttr(default_factory=list)

    @classmethod
    async def create(cls, command: str, config: ExperimentConfig) -> Context:
        with timer("Parse anisotropy"):
            anisotropy = await asyncio.to_thread(
                parse_anisotropy, config.anisotropy, config.n
            )
        with timer("Load set"):
            shape = await load_source(config, anisotropy)

        config_hash = config.config_hash()
        logger.info(f"Command: {command}, config hash: {config_hash}")
        logger.info(
            f"Anisotropy '{anisotropy.spec}' (lambda={anisotropy.lam:.4g}, "
            f"ell={anisotropy.ell:.4g}), set {type(shape).__name__}"
        )
        return cls(
            command=command,
            config=config,
            anisotropy=anisotropy,
            shape=shape,
            config_hash=config_hash,
        )

    @property
    def out_dir(self) -> Path:
        return self.config.out

    @property
    def written(self) -> list[Path]:
        return list(self._written)

    def voxels(self) -> VoxelSet:
        """The set itself, or its rasterization at ``h`` for polygon sources."""
        if isinstance(self.shape, VoxelSet):
            return self.shape
        if self._voxels is None:
            self._voxels = rasterize(
                self.shape, self.config.h, smoothing=self.config.smoothing
            )
        return self._voxels

    def point(self, shape: DiscreteSet | None = None, snap: bool = False) -> np.ndarray:
        """Configured x, or the boundary point nearest the origin.

        With ``snap`` a configured x is moved to the nearest boundary point too,
        for sets derived during the run.
        """
        if self.config.x is not None and not snap:
            return np.asarray(self.config.x, dtype=float)
        target = np.zeros(self.config.n) if self.config.x is None else self.config.x
        e = self.shape if shape is None else shape
        return nearest_boundary_point(e, np.asarray(target, dtype=float))

    def points(self, shape: DiscreteSet | None = None) -> np.ndarray:
        """Configured x, or every ``stride``-th boundary facet centroid."""
        if self.config.x is not None:
            return np.atleast_2d(np.asarray(self.config.x, dtype=float))
        return sample_boundary_points(
            boundary_of(self.shape if shape is None else shape),
            stride=self.config.stride,
            seed=self.config.seed,
        )

    def radii(self) -> list[float]:
        """Configured radii, or r0 theta^k for k = 0..k_max."""
        if self.config.radii is not None:
            return list(self.config.radii)
        c = self.config
        return [c.r0 * c.theta**k for k in range(c.k_max + 1)]

    def direction(self, fallback: np.ndarray) -> np.ndarray:
        if self.config.nu is not None:
            return np.asarray(self.config.nu, dtype=float)
        return fallback

    async def map(self, func: Callable[[T], R], items: Sequence[T]) -> list[R]:
        """Run func over items in worker threads, at most ``threads`` at a time."""
        semaphore = asyncio.Semaphore(self.config.threads)

        async def run(item: T) -> R:
            async with semaphore:
                return await asyncio.to_thread(func, item)

        return list(await asyncio.gather(*(run(item) for item in items)))

    async def write_table(self, name: str, table: Table) -> Path:
        path = await asyncio.to_thread(
            write_table, self.out_dir / name, table, self.config_hash
        )
        self._record(path)
        return path

    async def write_plot(
        self, plot: Callable[..., Path], name: str, *args: Any, **kwargs: Any
    ) -> Path:
        path = self.out_dir / name
        await asyncio.to_thread(plot, *args, path, **kwargs)
        self._record(path)
        return path

    async def write_set(self, name: str, e: DiscreteSet) -> Path:
        path = self.out_dir / name
        await asyncio.to_thread(path.parent.mkdir, parents=True, exist_ok=True)
        await asyncio.to_thread(save_set, path, e)
        self._record(path)
        return path

    def _record(self, path: Path) -> None:
        self._written.append(path)
        console.print_written(path)
