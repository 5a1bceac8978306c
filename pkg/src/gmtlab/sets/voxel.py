"""Voxel indicator sets and reduced-boundary extraction."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage
from skimage import measure

from gmtlab.core.logging import get_logger
from gmtlab.sets.patch import BoundaryPatch, PatchFlag, Provenance
from gmtlab.sets.polygon import InvalidSetError, PolyCurveSet

logger = get_logger(__name__)

MAX_SMOOTHING = 4.0
LEVEL = 0.5
# Gaussian kernel is truncated at this many standard deviations
TRUNCATE = 4.0


@dataclass(frozen=True, eq=False)
class VoxelSet:
    """Indicator of E on a regular grid; cell i has center origin + (i + 1/2) h.

    ``smoothing`` is the standard deviation, in units of h, of the Gaussian
    mollifier used when the boundary is extracted.
    """

    cells: np.ndarray
    origin: np.ndarray
    spacing: float
    smoothing: float = 2.0

    def __post_init__(self) -> None:
        cells = np.asarray(self.cells).astype(bool)
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "origin", np.asarray(self.origin, dtype=float))
        if cells.ndim not in (2, 3):
            raise InvalidSetError(f"Voxel sets need n in {{2, 3}}, got {cells.ndim}")
        if any(d < 2 for d in cells.shape):
            raise InvalidSetError(f"Every axis needs >= 2 cells, got {cells.shape}")
        if self.origin.shape != (cells.ndim,):
            raise InvalidSetError("Origin dimension does not match the cell array")
        if self.spacing <= 0:
            raise InvalidSetError(f"Spacing must be > 0, got {self.spacing}")
        if not 0 <= self.smoothing <= MAX_SMOOTHING:
            raise InvalidSetError(
                f"Smoothing must lie in [0, {MAX_SMOOTHING}] cells, got {self.smoothing}"
            )
        if _margin_occupied(cells):
            raise InvalidSetError("The one-cell border of the domain must be empty")

    @property
    def n(self) -> int:
        return int(self.cells.ndim)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(int(d) for d in self.cells.shape)

    @property
    def h(self) -> float:
        return float(self.spacing)

    @property
    def cell_volume(self) -> float:
        return self.spacing**self.n

    @property
    def volume(self) -> float:
        return float(np.count_nonzero(self.cells)) * self.cell_volume

    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        return self.origin, self.origin + np.array(self.dims) * self.spacing

    def centers(self) -> np.ndarray:
        """Cell centers, shape dims + (n,)."""
        axes = [
            self.origin[k] + (np.arange(d) + 0.5) * self.spacing
            for k, d in enumerate(self.dims)
        ]
        return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)

    def cell_index(self, points: np.ndarray) -> np.ndarray:
        return np.floor((np.asarray(points, dtype=float) - self.origin) / self.spacing).astype(int)

    def contains(self, points: np.ndarray) -> np.ndarray:
        index = self.cell_index(points)
        valid = np.all((index >= 0) & (index < np.array(self.dims)), axis=-1)
        result = np.zeros(index.shape[:-1], dtype=bool)
        if np.any(valid):
            inner = index[valid]
            result[valid] = self.cells[tuple(inner.T)]
        return result

    def with_cells(self, cells: np.ndarray) -> VoxelSet:
        return VoxelSet(
            cells=cells, origin=self.origin, spacing=self.spacing, smoothing=self.smoothing
        )

    def padded_to(self, lo: np.ndarray, hi: np.ndarray) -> VoxelSet:
        """Grow the grid with empty cells until it covers the box [lo, hi].

        The border of every voxel set is empty, so the added cells are
        complement and E itself does not change.
        """
        origin, top = self.bounds()
        below = np.maximum(np.ceil((origin - np.asarray(lo, dtype=float)) / self.spacing), 0)
        above = np.maximum(np.ceil((np.asarray(hi, dtype=float) - top) / self.spacing), 0)
        if not below.any() and not above.any():
            return self
        widths = [(int(b), int(a)) for b, a in zip(below, above, strict=True)]
        return VoxelSet(
            cells=np.pad(self.cells, widths),
            origin=origin - below * self.spacing,
            spacing=self.spacing,
            smoothing=self.smoothing,
        )


def _margin_occupied(cells: np.ndarray) -> bool:
    for axis in range(cells.ndim):
        if np.any(np.take(cells, 0, axis=axis)) or np.any(np.take(cells, -1, axis=axis)):
            return True
    return False


def rasterize(
    s: PolyCurveSet, h: float, smoothing: float = 2.0, margin: int = 2
) -> VoxelSet:
    """Cell is set iff its center lies in s (even-odd rule)."""
    if h <= 0:
        raise InvalidSetError(f"Spacing must be > 0, got {h}")
    lo, hi = s.bounds()
    i_lo = np.floor(lo / h).astype(int) - margin
    i_hi = np.ceil(hi / h).astype(int) + margin
    dims = np.maximum(i_hi - i_lo, 2 * margin)
    origin = i_lo * h
    voxels = VoxelSet(
        cells=np.zeros(tuple(dims), dtype=bool), origin=origin, spacing=h, smoothing=smoothing
    )
    if not s.loops:
        return voxels
    return voxels.with_cells(s.contains(voxels.centers()))


def extract_boundary(v: VoxelSet, smoothing: float | None = None) -> BoundaryPatch:
    """Level set 1/2 of the mollified indicator.

    smoothing 0 returns the raw cell faces. Otherwise the indicator is
    convolved with a Gaussian of standard deviation ``smoothing`` cells
    (truncated at 4 sigma) and contoured by marching squares (n=2) or
    Lewiner marching cubes (n=3). Facet normals are minus the normalized
    gradient of the mollified field at the facet centroid.
    """
    sigma = v.smoothing if smoothing is None else smoothing
    if not 0 <= sigma <= MAX_SMOOTHING:
        raise InvalidSetError(f"Smoothing must lie in [0, {MAX_SMOOTHING}] cells")
    common = {"provenance": Provenance.EXTRACTED, "smoothing": sigma, "spacing": v.h}
    if not v.cells.any():
        return BoundaryPatch.empty(v.n, flag=PatchFlag.EMPTY_SET, **common)
    if v.cells.all():
        return BoundaryPatch.empty(v.n, flag=PatchFlag.FULL_SET, **common)
    if sigma == 0:
        patch = _cell_faces(v)
        singular = _saddle_points(np.pad(v.cells, 1), v, pad=1)
    else:
        pad = int(math.ceil(TRUNCATE * sigma)) + 2
        field = ndimage.gaussian_filter(
            np.pad(v.cells.astype(float), pad),
            sigma=sigma,
            mode="constant",
            cval=0.0,
            truncate=TRUNCATE,
        )
        patch = _contour(field, v, pad, sigma)
        singular = _saddle_points(field > LEVEL, v, pad=pad)
    return patch._replace(singular_points=singular)


def _to_world(index_coords: np.ndarray, v: VoxelSet, pad: int) -> np.ndarray:
    return v.origin + (index_coords - pad + 0.5) * v.h


def _contour(field: np.ndarray, v: VoxelSet, pad: int, sigma: float) -> BoundaryPatch:
    if v.n == 2:
        pieces = [c for c in measure.find_contours(field, LEVEL) if len(c) >= 2]
        if not pieces:
            return BoundaryPatch.empty(2, provenance=Provenance.EXTRACTED, spacing=v.h)
        segments = np.concatenate(
            [np.stack([c[:-1], c[1:]], axis=1) for c in pieces], axis=0
        )
    else:
        verts, faces, _, _ = measure.marching_cubes(field, level=LEVEL, method="lewiner")
        segments = verts[faces]

    centroids_idx = segments.mean(axis=1)
    gradients = np.stack(
        [
            ndimage.map_coordinates(g, centroids_idx.T, order=1, mode="nearest")
            for g in np.gradient(field)
        ],
        axis=1,
    )
    if v.n == 2:
        sizes = np.linalg.norm(segments[:, 1] - segments[:, 0], axis=1)
    else:
        sizes = 0.5 * np.linalg.norm(
            np.cross(segments[:, 1] - segments[:, 0], segments[:, 2] - segments[:, 0]),
            axis=1,
        )
    grad_norm = np.linalg.norm(gradients, axis=1)
    keep = (sizes > 1e-12) & (grad_norm > 1e-12)
    if np.count_nonzero(~keep):
        logger.debug(f"Dropped {np.count_nonzero(~keep)} degenerate facets")
    normals = -gradients[keep] / grad_norm[keep, None]
    return BoundaryPatch(
        n=v.n,
        centroids=_to_world(centroids_idx[keep], v, pad),
        normals=normals,
        measures=sizes[keep] * v.h ** (v.n - 1),
        vertices=_to_world(segments[keep], v, pad),
        provenance=Provenance.EXTRACTED,
        smoothing=sigma,
        spacing=v.h,
    )


def _cell_faces(v: VoxelSet) -> BoundaryPatch:
    padded = np.pad(v.cells, 1)
    h = v.h
    centroids, normals, vertices = [], [], []
    for axis in range(v.n):
        lower = np.take(padded, np.arange(padded.shape[axis] - 1), axis=axis)
        upper = np.take(padded, np.arange(1, padded.shape[axis]), axis=axis)
        for sign, mask in ((1.0, lower & ~upper), (-1.0, upper & ~lower)):
            index = np.argwhere(mask).astype(float)
            if not len(index):
                continue
            # Face between padded cells i and i+1 along axis; cell i of padded is i-1 of v
            corner = v.origin + (index - 1.0) * h
            corner[:, axis] += h
            normal = np.zeros(v.n)
            normal[axis] = sign
            others = [k for k in range(v.n) if k != axis]
            if v.n == 2:
                step = np.zeros(2)
                step[others[0]] = h
                vertices.append(np.stack([corner, corner + step], axis=1))
                centroids.append(corner + step / 2)
                normals.append(np.tile(normal, (len(index), 1)))
            else:
                u = np.zeros(3)
                w = np.zeros(3)
                u[others[0]] = h
                w[others[1]] = h
                for tri in ((0, u, u + w), (0, u + w, w)):
                    corners = np.stack([corner + np.asarray(p) for p in tri], axis=1)
                    vertices.append(corners)
                    centroids.append(corners.mean(axis=1))
                    normals.append(np.tile(normal, (len(index), 1)))
    vertices_arr = np.concatenate(vertices)
    measure_each = h if v.n == 2 else h * h / 2
    return BoundaryPatch(
        n=v.n,
        centroids=np.concatenate(centroids),
        normals=np.concatenate(normals),
        measures=np.full(len(vertices_arr), measure_each),
        vertices=vertices_arr,
        provenance=Provenance.EXTRACTED,
        smoothing=0.0,
        spacing=h,
    )


def _saddle_points(binary: np.ndarray, v: VoxelSet, pad: int) -> np.ndarray:
    """Shared corners of diagonal 2x2 configurations, where sheets touch."""
    points = []
    for a in range(v.n):
        for b in range(a + 1, v.n):
            def shifted(da: int, db: int) -> np.ndarray:
                index = [slice(None)] * v.n
                index[a] = slice(da, binary.shape[a] - 1 + da)
                index[b] = slice(db, binary.shape[b] - 1 + db)
                return binary[tuple(index)]

            p00, p11 = shifted(0, 0), shifted(1, 1)
            p01, p10 = shifted(0, 1), shifted(1, 0)
            diagonal = (p00 & p11 & ~p01 & ~p10) | (p01 & p10 & ~p00 & ~p11)
            index = np.argwhere(diagonal).astype(float)
            if len(index):
                index[:, a] += 0.5
                index[:, b] += 0.5
                points.append(_to_world(index, v, pad))
    if not points:
        return np.zeros((0, v.n))
    return np.concatenate(points)
