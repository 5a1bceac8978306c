import numpy as np

from gmtlab.sets.polygon import PolyCurveSet, poly_volume_in_ball
from gmtlab.sets.regions import Ball, Region
from gmtlab.sets.voxel import VoxelSet

DiscreteSet = PolyCurveSet | VoxelSet


def _block(v: VoxelSet, lo: np.ndarray, hi: np.ndarray) -> tuple[slice, ...]:
    start = np.clip(np.floor((lo - v.origin) / v.h).astype(int), 0, None)
    stop = np.minimum(np.ceil((hi - v.origin) / v.h).astype(int) + 1, v.dims)
    return tuple(slice(int(a), int(b)) for a, b in zip(start, stop, strict=True))


def region_cells(v: VoxelSet, region: Region) -> tuple[np.ndarray, np.ndarray]:
    """Centers of the cells whose center lies in region, and their membership in E."""
    block = _block(v, *region.bounds())
    axes = [
        v.origin[k] + (np.arange(s.start, s.stop) + 0.5) * v.h
        for k, s in enumerate(block)
    ]
    centers = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, v.n)
    cells = v.cells[block].reshape(-1)
    inside = region.contains(centers)
    return centers[inside], cells[inside]


def volume_in(e: DiscreteSet, region: Ball) -> float:
    """|E intersected with B_r(x)|: exact for polygons, cell-center counting for voxels."""
    if isinstance(e, PolyCurveSet):
        return poly_volume_in_ball(e, region)
    _, members = region_cells(e, region)
    return float(np.count_nonzero(members)) * e.cell_volume
