"""Lipschitz approximation of the boundary as a graph over the tangent plane of a cylinder."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from gmtlab.core.constants import SIGMA_SLACK
from gmtlab.core.logging import get_logger
from gmtlab.core.settings import settings
from gmtlab.excess.functionals import directional_excess
from gmtlab.sets import (
    Ball,
    BoundaryPatch,
    Cylinder,
    DiscreteSet,
    boundary_of,
    clip_to_region,
    resolution,
)
from gmtlab.utils.geometry import normalize, orthonormal_frame, to_local, to_world

logger = get_logger(__name__)

SIGMA_FACTOR = 16.0
# Two crossings closer than this (relative to r) are the same crossing at a shared vertex
CROSSING_MERGE = 1e-9
NODE_CHUNK = 256


class LipschitzApproxError(ValueError):
    """Raised when no grid column is backed by a single well-behaved crossing."""


@dataclass(frozen=True, eq=False)
class LipschitzApprox:
    """Heights u over a regular grid on B'_r in the frame (tau_1, ..., tau_{n-1}, nu).

    ``u``, ``good_mask`` and ``inside_mask`` live on the full square grid of
    shape (N,) * (n - 1); only nodes with ``inside_mask`` belong to B'_r.
    """

    x: np.ndarray
    nu: np.ndarray
    r: float
    frame: np.ndarray
    pitch: float
    axis: np.ndarray
    u: np.ndarray
    good_mask: np.ndarray
    inside_mask: np.ndarray
    coverage_defect: float
    sup_u: float
    lip_const: float
    dirichlet: float
    sigma: float

    @property
    def n(self) -> int:
        return int(self.frame.shape[0])

    @property
    def grid(self) -> np.ndarray:
        """Tangential node coordinates, shape (N,) * (n - 1) + (n - 1,)."""
        axes = [self.axis] * (self.n - 1)
        return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)

    @property
    def good_count(self) -> int:
        return int(np.count_nonzero(self.good_mask & self.inside_mask))

    def gradient(self) -> np.ndarray:
        """Central-difference gradient of u, shape (N,) * (n - 1) + (n - 1,)."""
        if self.n == 2:
            return np.gradient(self.u, self.pitch)[:, None]
        return np.stack(np.gradient(self.u, self.pitch, self.pitch), axis=-1)

    def height_at(self, tangential: np.ndarray) -> np.ndarray:
        tangential = np.asarray(tangential, dtype=float).reshape(-1, self.n - 1)
        if self.n == 2:
            return np.interp(tangential[:, 0], self.axis, self.u)
        interpolator = RegularGridInterpolator(
            (self.axis, self.axis), self.u, bounds_error=False, fill_value=None
        )
        return interpolator(tangential)

    def graph_points(self) -> np.ndarray:
        """World coordinates of (t, u(t)) for the nodes inside B'_r."""
        t = self.grid[self.inside_mask]
        local = np.column_stack([t, self.u[self.inside_mask]])
        return to_world(local, self.x, self.frame)


def _crossings_2d(
    local: np.ndarray, nodes: np.ndarray, window: float
) -> tuple[np.ndarray, np.ndarray]:
    t0, s0 = local[:, 0, 0], local[:, 0, 1]
    t1, s1 = local[:, 1, 0], local[:, 1, 1]
    lo, hi = np.minimum(t0, t1), np.maximum(t0, t1)
    span = np.where(hi > lo, t1 - t0, 1.0)
    t = nodes[:, 0][:, None]
    hit = (t >= lo) & (t <= hi) & (hi > lo)
    s = s0 + (t - t0) / span * (s1 - s0)
    return hit & (np.abs(s) < window), s


def _crossings_3d(
    local: np.ndarray, nodes: np.ndarray, window: float
) -> tuple[np.ndarray, np.ndarray]:
    a = local[:, 0, :2]
    v0 = local[:, 1, :2] - a
    v1 = local[:, 2, :2] - a
    d00 = np.sum(v0 * v0, axis=1)
    d01 = np.sum(v0 * v1, axis=1)
    d11 = np.sum(v1 * v1, axis=1)
    det = d00 * d11 - d01 * d01
    valid = np.abs(det) > 1e-300
    det = np.where(valid, det, 1.0)
    v2 = nodes[:, None, :] - a[None, :, :]
    d20 = np.sum(v2 * v0, axis=2)
    d21 = np.sum(v2 * v1, axis=2)
    b1 = (d11 * d20 - d01 * d21) / det
    b2 = (d00 * d21 - d01 * d20) / det
    b0 = 1.0 - b1 - b2
    inside = (b0 >= 0) & (b1 >= 0) & (b2 >= 0) & valid
    s = b0 * local[:, 0, 2] + b1 * local[:, 1, 2] + b2 * local[:, 2, 2]
    return inside & (np.abs(s) < window), s


def _single_crossings(
    local: np.ndarray, nodes: np.ndarray, window: float, merge: float
) -> tuple[np.ndarray, np.ndarray]:
    """Number of distinct crossings per node and the height where it is exactly one."""
    crossings = _crossings_2d if local.shape[-1] == 2 else _crossings_3d
    counts = np.zeros(len(nodes), dtype=int)
    heights = np.full(len(nodes), np.nan)
    for start in range(0, len(nodes), NODE_CHUNK):
        chunk = slice(start, start + NODE_CHUNK)
        hit, s = crossings(local, nodes[chunk], window)
        for k, (row_hit, row_s) in enumerate(zip(hit, s, strict=True)):
            values = np.sort(row_s[row_hit])
            if not len(values):
                continue
            distinct = values[np.concatenate([[True], np.diff(values) > merge])]
            counts[start + k] = len(distinct)
            if len(distinct) == 1:
                heights[start + k] = distinct[0]
    return counts, heights


def _passes_multiscale(
    patch: BoundaryPatch,
    point: np.ndarray,
    nu: np.ndarray,
    r: float,
    floor: float,
    sigma: float,
) -> bool:
    scale = r / 2
    while scale >= floor:
        clipped = clip_to_region(patch, Cylinder(point, scale, nu))
        if clipped.is_empty:
            break
        if directional_excess(clipped, nu, scale) > sigma + SIGMA_SLACK:
            return False
        scale /= 2
    return True


def _neighbor_offsets(dim: int) -> list[tuple[int, ...]]:
    if dim == 1:
        return [(1,), (-1,)]
    return [(i, j) for i in (-1, 0, 1) for j in (-1, 0, 1) if (i, j) != (0, 0)]


def _shifted(values: np.ndarray, offset: tuple[int, ...], fill: float) -> np.ndarray:
    """values[i + offset] aligned to i, with fill where the neighbour is missing."""
    result = np.full_like(values, fill)
    source = []
    target = []
    for o, size in zip(offset, values.shape, strict=True):
        source.append(slice(max(o, 0), size + min(o, 0)))
        target.append(slice(max(-o, 0), size - max(o, 0)))
    result[tuple(target)] = values[tuple(source)]
    return result


def _limit_slopes(u: np.ndarray, pitch: float) -> np.ndarray:
    """Largest function below u that is 1-Lipschitz along grid edges and diagonals."""
    offsets = _neighbor_offsets(u.ndim)
    for _ in range(4 * max(u.shape)):
        lowered = u
        for offset in offsets:
            step = pitch * float(np.linalg.norm(offset))
            lowered = np.minimum(lowered, _shifted(u, offset, np.inf) + step)
        if np.array_equal(lowered, u):
            break
        u = lowered
    return u


def _lipschitz_constant(u: np.ndarray, inside: np.ndarray, pitch: float) -> float:
    worst = 0.0
    for offset in _neighbor_offsets(u.ndim):
        neighbour = _shifted(u, offset, np.nan)
        both = inside & _shifted(inside, offset, False)
        if np.any(both):
            step = pitch * float(np.linalg.norm(offset))
            worst = max(worst, float(np.nanmax(np.abs(neighbour - u)[both])) / step)
    return worst


def _mcshane(nodes: np.ndarray, good: np.ndarray, heights: np.ndarray) -> np.ndarray:
    """u(t) = min over good g of u(g) + |t - g|, the upper 1-Lipschitz extension."""
    anchors = nodes[good]
    values = heights[good]
    filled = np.empty(len(nodes))
    for start in range(0, len(nodes), NODE_CHUNK):
        chunk = nodes[start : start + NODE_CHUNK]
        distance = np.linalg.norm(chunk[:, None, :] - anchors[None, :, :], axis=2)
        filled[start : start + NODE_CHUNK] = np.min(values[None, :] + distance, axis=1)
    return np.where(good, heights, filled)


def _grid_cells(e: DiscreteSet, r: float) -> int:
    cells = settings.numerics.lipschitz_grid_cells
    if e.n == 3:
        cells //= 2
    h = resolution(e)
    if h is not None:
        cells = min(cells, max(8, int(round(2 * r / h))))
    return cells


def lipschitz_approx(
    e: DiscreteSet,
    x: np.ndarray,
    r: float,
    nu: np.ndarray,
    sigma: float | None = None,
) -> LipschitzApprox:
    """Graph approximation u of the boundary over B'_r in the cylinder C_nu(x, r).

    A column is good when the boundary crosses it exactly once with height
    in (-r/2, r/2) and the cylindrical excess around the crossing stays
    below sigma at the scales r/2, r/4, ... down to four grid cells (or four
    voxels). Other columns get the McShane extension of the good heights,
    and the result is limited to slope 1. sigma defaults to 16 Exc_nu(E, x, 2r).
    """
    x = np.asarray(x, dtype=float)
    nu = normalize(nu)
    frame = orthonormal_frame(nu)
    dim = e.n - 1
    patch = clip_to_region(boundary_of(e), Ball(x, 2 * r))
    if sigma is None:
        wide = clip_to_region(patch, Cylinder(x, 2 * r, nu))
        sigma = SIGMA_FACTOR * directional_excess(wide, nu, 2 * r) if len(wide) else 0.0

    cells = _grid_cells(e, r)
    pitch = 2 * r / cells
    axis = -r + (np.arange(cells) + 0.5) * pitch
    shape = (cells,) * dim
    nodes = np.stack(np.meshgrid(*([axis] * dim), indexing="ij"), axis=-1).reshape(-1, dim)
    inside = np.linalg.norm(nodes, axis=1) < r

    clipped = clip_to_region(patch, Cylinder(x, r, nu))
    if clipped.is_empty:
        raise LipschitzApproxError(
            f"No boundary in the cylinder at {x.tolist()}, r={r:.4g}"
        )
    local = to_local(clipped.vertices, x, frame)
    counts, heights = _single_crossings(local, nodes, r / 2, CROSSING_MERGE * r)

    h = resolution(e)
    floor = 4 * (h if h is not None else pitch)
    good = (counts == 1) & inside
    for index in np.flatnonzero(good):
        point = to_world(np.append(nodes[index], heights[index]), x, frame)
        if not _passes_multiscale(patch, point, nu, r, floor, sigma):
            good[index] = False
    if not np.any(good):
        raise LipschitzApproxError(
            f"No good columns at {x.tolist()}, r={r:.4g} (sigma={sigma:.3g})"
        )
    logger.debug(
        f"Lipschitz approximation: {np.count_nonzero(good)} of "
        f"{np.count_nonzero(inside)} columns good"
    )

    u = _limit_slopes(_mcshane(nodes, good, heights).reshape(shape), pitch)
    good_grid = good.reshape(shape)
    inside_grid = inside.reshape(shape)

    approx = LipschitzApprox(
        x=x,
        nu=nu,
        r=r,
        frame=frame,
        pitch=pitch,
        axis=axis,
        u=u,
        good_mask=good_grid,
        inside_mask=inside_grid,
        coverage_defect=0.0,
        sup_u=float(np.max(np.abs(u[inside_grid]))) / r,
        lip_const=_lipschitz_constant(u, inside_grid, pitch),
        dirichlet=0.0,
        sigma=float(sigma),
    )
    gradient = approx.gradient()
    squared = np.sum(gradient**2, axis=-1)
    dirichlet = float(np.sum(squared[inside_grid])) * pitch**dim / r**dim
    defect = _coverage_defect(approx, clipped, np.sqrt(1.0 + squared))
    return replace(approx, dirichlet=dirichlet, coverage_defect=defect)


def _coverage_defect(
    approx: LipschitzApprox, clipped: BoundaryPatch, area_factor: np.ndarray
) -> float:
    """(H(M minus Gamma) + H(Gamma over bad columns)) / r^{n-1}.

    A facet belongs to Gamma when its centroid lies within 2 h_u of the
    graph, measured along nu.
    """
    dim = approx.n - 1
    facets = clipped.subdivided(approx.pitch)
    local = to_local(facets.centroids, approx.x, approx.frame)
    tangential = local[:, :dim]
    within = np.linalg.norm(tangential, axis=1) < approx.r
    gap = np.abs(local[:, -1] - approx.height_at(tangential))
    unmatched = float(np.sum(facets.measures[within & (gap > 2 * approx.pitch)]))
    bad = approx.inside_mask & ~approx.good_mask
    graph_over_bad = float(np.sum(area_factor[bad])) * approx.pitch**dim
    return (unmatched + graph_over_bad) / approx.r**dim
