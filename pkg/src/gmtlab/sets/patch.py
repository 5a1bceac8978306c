"""Reduced boundary as facets: centroid, outward unit normal, H^{n-1} measure."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from gmtlab.core.constants import CLOSED_PATCH_TOLERANCE, UNIT_NORMAL_TOLERANCE
from gmtlab.sets.regions import Region

# Barycentric sample points used to estimate the inside fraction of a triangle
_TRIANGLE_SAMPLES = np.array(
    [[2 / 3, 1 / 6, 1 / 6], [1 / 6, 2 / 3, 1 / 6], [1 / 6, 1 / 6, 2 / 3]]
)


class Provenance(str, Enum):
    EXACT = "exact"
    EXTRACTED = "extracted"


class PatchFlag(str, Enum):
    NONE = "none"
    EMPTY_SET = "empty_set"
    FULL_SET = "full_set"


@dataclass(frozen=True, eq=False)
class BoundaryPatch:
    """Facets of the reduced boundary.

    ``vertices`` holds the segment endpoints (n=2, shape (m, 2, 2)) or the
    triangle corners (n=3, shape (m, 3, 3)) of every facet. After a 3D clip
    the measure is the inside fraction of the triangle area while the
    vertices are unchanged.
    """

    n: int
    centroids: np.ndarray
    normals: np.ndarray
    measures: np.ndarray
    vertices: np.ndarray
    provenance: Provenance = Provenance.EXACT
    smoothing: float = 0.0
    spacing: float | None = None
    flag: PatchFlag = PatchFlag.NONE
    singular_points: np.ndarray = field(default_factory=lambda: np.zeros((0, 2)))

    def __post_init__(self) -> None:
        m = len(self.measures)
        for name, shape in (
            ("centroids", (m, self.n)),
            ("normals", (m, self.n)),
            ("vertices", (m, self.n, self.n)),
        ):
            value = np.asarray(getattr(self, name), dtype=float).reshape(shape)
            object.__setattr__(self, name, value)
        object.__setattr__(self, "measures", np.asarray(self.measures, dtype=float))
        object.__setattr__(
            self,
            "singular_points",
            np.asarray(self.singular_points, dtype=float).reshape(-1, self.n),
        )
        if m and np.any(self.measures <= 0):
            raise ValueError("Facet measures must be positive")
        if m and np.max(np.abs(np.linalg.norm(self.normals, axis=1) - 1.0)) > (
            UNIT_NORMAL_TOLERANCE
        ):
            raise ValueError("Facet normals must be unit vectors")

    @classmethod
    def empty(
        cls,
        n: int,
        provenance: Provenance = Provenance.EXACT,
        flag: PatchFlag = PatchFlag.NONE,
        **kwargs,
    ) -> BoundaryPatch:
        return cls(
            n=n,
            centroids=np.zeros((0, n)),
            normals=np.zeros((0, n)),
            measures=np.zeros(0),
            vertices=np.zeros((0, n, n)),
            provenance=provenance,
            flag=flag,
            **kwargs,
        )

    def __len__(self) -> int:
        return len(self.measures)

    @property
    def is_empty(self) -> bool:
        return len(self.measures) == 0

    @property
    def total_measure(self) -> float:
        return float(np.sum(self.measures))

    @property
    def mean_normal(self) -> np.ndarray:
        """m = sum of measure * normal."""
        return self.measures @ self.normals if len(self) else np.zeros(self.n)

    @property
    def closedness_tolerance(self) -> float:
        if self.provenance == Provenance.EXACT:
            return CLOSED_PATCH_TOLERANCE * max(1.0, self.total_measure)
        return 3.0 * (self.spacing or 0.0) * self.total_measure

    def is_closed(self) -> bool:
        """Divergence identity: the measure-weighted normals sum to zero."""
        return bool(np.linalg.norm(self.mean_normal) <= self.closedness_tolerance)

    def select(self, mask: np.ndarray, measures: np.ndarray | None = None) -> BoundaryPatch:
        """Sub-patch of the facets in mask, optionally with new measures."""
        return self._replace(
            centroids=self.centroids[mask],
            normals=self.normals[mask],
            measures=(self.measures if measures is None else measures)[mask],
            vertices=self.vertices[mask],
        )

    def _replace(self, **changes) -> BoundaryPatch:
        fields = {
            "n": self.n,
            "centroids": self.centroids,
            "normals": self.normals,
            "measures": self.measures,
            "vertices": self.vertices,
            "provenance": self.provenance,
            "smoothing": self.smoothing,
            "spacing": self.spacing,
            "flag": self.flag,
            "singular_points": self.singular_points,
        }
        fields.update(changes)
        return BoundaryPatch(**fields)

    def subdivided(self, max_length: float) -> BoundaryPatch:
        """Split n=2 segments into pieces no longer than max_length; n=3 is returned as is."""
        if self.n != 2 or self.is_empty:
            return self
        pieces = np.maximum(1, np.ceil(self.measures / max_length).astype(int))
        if np.all(pieces == 1):
            return self
        index = np.repeat(np.arange(len(self)), pieces)
        offsets = np.concatenate([np.arange(k) for k in pieces])
        counts = pieces[index]
        a = self.vertices[index, 0]
        d = self.vertices[index, 1] - a
        start = a + d * (offsets / counts)[:, None]
        end = a + d * ((offsets + 1) / counts)[:, None]
        return self._replace(
            centroids=(start + end) / 2,
            normals=self.normals[index],
            measures=self.measures[index] / counts,
            vertices=np.stack([start, end], axis=1),
        )


def clip_to_region(
    patch: BoundaryPatch, region: Region, inside: bool = True
) -> BoundaryPatch:
    """Clip facets against a ball or cylinder.

    n=2 segments are split exactly at the region boundary. n=3 facets keep
    their triangle and are weighted by the fraction of three interior sample
    points lying in the region. With ``inside=False`` the complement is kept,
    so both halves add up to the full patch.
    """
    if patch.is_empty:
        return patch
    if patch.n == 2:
        return _clip_segments(patch, region, inside)
    return _clip_triangles(patch, region, inside)


def _clip_segments(patch: BoundaryPatch, region: Region, inside: bool) -> BoundaryPatch:
    a = patch.vertices[:, 0]
    b = patch.vertices[:, 1]
    t0, t1 = region.segment_intervals(a, b)
    hit = t1 > t0
    if inside:
        index = np.flatnonzero(hit)
        lo, hi = t0[hit], t1[hit]
    else:
        # Up to two pieces per segment: before entering and after leaving
        lo = np.concatenate([np.zeros(len(a)), np.where(hit, t1, 1.0)])
        hi = np.concatenate([np.where(hit, t0, 1.0), np.ones(len(a))])
        index = np.concatenate([np.arange(len(a)), np.arange(len(a))])
    keep = hi - lo > 1e-15
    index, lo, hi = index[keep], lo[keep], hi[keep]
    singular = patch.singular_points
    if len(singular):
        mask = region.contains(singular)
        singular = singular[mask if inside else ~mask]
    if not len(index):
        return BoundaryPatch.empty(
            2,
            provenance=patch.provenance,
            smoothing=patch.smoothing,
            spacing=patch.spacing,
            flag=patch.flag,
            singular_points=singular,
        )
    d = b[index] - a[index]
    start = a[index] + lo[:, None] * d
    end = a[index] + hi[:, None] * d
    lengths = np.linalg.norm(end - start, axis=1)
    keep = lengths > 0
    return patch._replace(
        centroids=((start + end) / 2)[keep],
        normals=patch.normals[index][keep],
        measures=lengths[keep],
        vertices=np.stack([start, end], axis=1)[keep],
        singular_points=singular,
    )


def _clip_triangles(patch: BoundaryPatch, region: Region, inside: bool) -> BoundaryPatch:
    samples = np.einsum("sk,mkd->msd", _TRIANGLE_SAMPLES, patch.vertices)
    fraction = region.contains(samples).mean(axis=1)
    if not inside:
        fraction = 1.0 - fraction
    keep = fraction > 0
    singular = patch.singular_points
    if len(singular):
        mask = region.contains(singular)
        singular = singular[mask if inside else ~mask]
    return patch._replace(
        centroids=patch.centroids[keep],
        normals=patch.normals[keep],
        measures=(patch.measures * fraction)[keep],
        vertices=patch.vertices[keep],
        singular_points=singular,
    )
