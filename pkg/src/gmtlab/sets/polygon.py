"""Exact 2D sets bounded by polygonal loops."""

from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar

import numpy as np
import shapely

from gmtlab.sets.patch import BoundaryPatch, Provenance
from gmtlab.sets.regions import Ball


class InvalidSetError(ValueError):
    """Raised when loops or voxel data do not describe a valid set."""


def signed_area(loop: np.ndarray) -> float:
    x, y = loop[:, 0], loop[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


@dataclass(frozen=True, eq=False)
class PolyCurveSet:
    """Union of polygonal loops under the even-odd rule.

    Outer loops run counter-clockwise and holes clockwise, so the outward
    normal of every edge is its direction rotated by -90 degrees.
    """

    loops: tuple[np.ndarray, ...]
    n: ClassVar[int] = 2

    def __post_init__(self) -> None:
        loops = tuple(np.asarray(loop, dtype=float).reshape(-1, 2) for loop in self.loops)
        object.__setattr__(self, "loops", loops)
        self._validate()

    @classmethod
    def from_loops(cls, loops: list[np.ndarray] | tuple[np.ndarray, ...]) -> PolyCurveSet:
        """Build a set, orienting each loop by its nesting depth."""
        arrays = [_drop_closing_vertex(np.asarray(loop, dtype=float)) for loop in loops]
        polygons = [shapely.Polygon(loop) for loop in arrays if len(loop) >= 3]
        oriented = []
        for i, loop in enumerate(arrays):
            if len(loop) < 3:
                raise InvalidSetError(f"Loop {i} has fewer than 3 vertices")
            anchor = shapely.Point(*loop[0])
            depth = sum(
                1
                for j, polygon in enumerate(polygons)
                if j != i and polygon.contains(anchor)
            )
            counter_clockwise = signed_area(loop) > 0
            if counter_clockwise != (depth % 2 == 0):
                loop = loop[::-1]
            oriented.append(loop)
        return cls(loops=tuple(oriented))

    def _validate(self) -> None:
        rings = []
        for i, loop in enumerate(self.loops):
            if len(loop) < 3:
                raise InvalidSetError(f"Loop {i} has fewer than 3 vertices")
            edges = np.roll(loop, -1, axis=0) - loop
            if np.any(np.linalg.norm(edges, axis=1) == 0):
                raise InvalidSetError(f"Loop {i} has a zero-length edge")
            ring = shapely.LinearRing(loop)
            if not ring.is_simple:
                raise InvalidSetError(f"Loop {i} is not simple")
            rings.append(ring)
        for i in range(len(rings)):
            for j in range(i + 1, len(rings)):
                if rings[i].intersects(rings[j]):
                    raise InvalidSetError(f"Loops {i} and {j} intersect")
        polygons = [shapely.Polygon(loop) for loop in self.loops]
        for i, loop in enumerate(self.loops):
            anchor = shapely.Point(*loop[0])
            depth = sum(
                1 for j, p in enumerate(polygons) if j != i and p.contains(anchor)
            )
            expected_ccw = depth % 2 == 0
            if (signed_area(loop) > 0) != expected_ccw:
                role = "outer" if expected_ccw else "hole"
                raise InvalidSetError(
                    f"Loop {i} ({role}) has the wrong orientation; "
                    "outer loops are counter-clockwise and holes clockwise"
                )

    @property
    def area(self) -> float:
        return float(sum(signed_area(loop) for loop in self.loops))

    def contains(self, points: np.ndarray) -> np.ndarray:
        """Even-odd membership of points (shape (..., 2))."""
        points = np.asarray(points, dtype=float)
        inside = np.zeros(points.shape[:-1], dtype=bool)
        for loop in self.loops:
            inside ^= shapely.contains_xy(
                shapely.Polygon(loop), points[..., 0], points[..., 1]
            )
        return inside

    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        if not self.loops:
            return np.zeros(2), np.zeros(2)
        stacked = np.concatenate(self.loops)
        return stacked.min(axis=0), stacked.max(axis=0)

    def vertices(self) -> np.ndarray:
        return np.concatenate(self.loops) if self.loops else np.zeros((0, 2))

    def scaled(self, factor: float) -> PolyCurveSet:
        return PolyCurveSet(loops=tuple(loop * factor for loop in self.loops))


def _drop_closing_vertex(loop: np.ndarray) -> np.ndarray:
    if len(loop) > 1 and np.array_equal(loop[0], loop[-1]):
        return loop[:-1]
    return loop


def boundary_of_poly(s: PolyCurveSet) -> BoundaryPatch:
    """One facet per edge with its outward unit normal and length."""
    if not s.loops:
        return BoundaryPatch.empty(2)
    starts = np.concatenate(s.loops)
    ends = np.concatenate([np.roll(loop, -1, axis=0) for loop in s.loops])
    edges = ends - starts
    lengths = np.linalg.norm(edges, axis=1)
    if np.any(lengths == 0):
        raise InvalidSetError("Degenerate zero-length edge")
    normals = np.column_stack([edges[:, 1], -edges[:, 0]]) / lengths[:, None]
    return BoundaryPatch(
        n=2,
        centroids=(starts + ends) / 2,
        normals=normals,
        measures=lengths,
        vertices=np.stack([starts, ends], axis=1),
        provenance=Provenance.EXACT,
    )


def _disk_edge_area(a: np.ndarray, b: np.ndarray, radius: float) -> float:
    """Signed area of (disk of radius r at the origin) intersected with triangle (0, a, b)."""
    d = b - a
    qa = float(d @ d)
    qb = 2.0 * float(a @ d)
    qc = float(a @ a) - radius**2
    cuts = [0.0]
    disc = qb * qb - 4 * qa * qc
    if disc > 0:
        root = np.sqrt(disc)
        for t in sorted(((-qb - root) / (2 * qa), (-qb + root) / (2 * qa))):
            if 0.0 < t < 1.0:
                cuts.append(t)
    cuts.append(1.0)
    total = 0.0
    for lo, hi in zip(cuts[:-1], cuts[1:], strict=True):
        p = a + lo * d
        q = a + hi * d
        mid = (p + q) / 2
        cross = p[0] * q[1] - p[1] * q[0]
        if mid @ mid <= radius**2:
            total += 0.5 * cross
        else:
            angle = np.arctan2(cross, float(p @ q))
            total += 0.5 * radius**2 * angle
    return total


def poly_volume_in_ball(s: PolyCurveSet, ball: Ball) -> float:
    """|E intersected with B_r(x)| exactly, summing signed disk-triangle areas per edge."""
    total = 0.0
    for loop in s.loops:
        rel = loop - ball.center
        for a, b in zip(rel, np.roll(rel, -1, axis=0), strict=True):
            total += _disk_edge_area(a, b, ball.radius)
    return total
