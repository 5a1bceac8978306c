"""Spherical excess, cylindrical excess and L2 flatness on clipped patches."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from gmtlab.core.logging import get_logger
from gmtlab.sets import (
    Ball,
    BoundaryPatch,
    Cylinder,
    DiscreteSet,
    boundary_of,
    clip_to_region,
)

logger = get_logger(__name__)

# |m| below this fraction of the mass is treated as a tie between directions
TIE_TOLERANCE = 1e-12


class EmptyBoundaryError(ValueError):
    """Raised when a cylinder-based functional sees no boundary."""


@dataclass(frozen=True)
class DirectionFit:
    """Minimizer of the spherical excess, found through the mean normal m.

    Since |nu - nu_E|^2 / 2 = 1 - nu . nu_E, the minimum over the sphere is
    attained at nu = m / |m| and equals (mass - |m|) / r^{n-1}.
    """

    nu_opt: np.ndarray
    excess: float
    mass: float
    mean_normal: np.ndarray
    facet_count: int
    tie: bool = False
    empty: bool = False


@dataclass(frozen=True)
class FlatnessFit:
    value: float
    h_opt: float


def _default_direction(n: int) -> np.ndarray:
    e = np.zeros(n)
    e[-1] = 1.0
    return e


def fit_direction(clipped: BoundaryPatch, r: float) -> DirectionFit:
    n = clipped.n
    if clipped.is_empty:
        return DirectionFit(
            nu_opt=_default_direction(n),
            excess=0.0,
            mass=0.0,
            mean_normal=np.zeros(n),
            facet_count=0,
            empty=True,
        )
    mass = clipped.total_measure
    m = clipped.mean_normal
    norm = float(np.linalg.norm(m))
    scale = r ** (n - 1)
    if norm <= TIE_TOLERANCE * mass:
        logger.debug("Mean normal vanishes; minimizing direction is arbitrary")
        return DirectionFit(
            nu_opt=_default_direction(n),
            excess=mass / scale,
            mass=mass,
            mean_normal=m,
            facet_count=len(clipped),
            tie=True,
        )
    return DirectionFit(
        nu_opt=m / norm,
        excess=max(0.0, mass - norm) / scale,
        mass=mass,
        mean_normal=m,
        facet_count=len(clipped),
    )


def spherical_excess(e: DiscreteSet, x: np.ndarray, r: float) -> DirectionFit:
    """Exc(E, x, r) with its minimizing direction."""
    clipped = clip_to_region(boundary_of(e), Ball(x, r))
    return fit_direction(clipped, r)


def directional_excess(clipped: BoundaryPatch, nu: np.ndarray, r: float) -> float:
    """(1 / r^{n-1}) * integral of (1 - nu . nu_E) over the given facets."""
    nu = np.asarray(nu, dtype=float) / np.linalg.norm(nu)
    return float(np.sum((1.0 - clipped.normals @ nu) * clipped.measures)) / r ** (
        clipped.n - 1
    )


def cylindrical_excess(e: DiscreteSet, x: np.ndarray, r: float, nu: np.ndarray) -> float:
    """Exc_nu(E, x, r) over the cylinder C_nu(x, r)."""
    clipped = clip_to_region(boundary_of(e), Cylinder(x, r, nu))
    if clipped.is_empty:
        raise EmptyBoundaryError(
            f"No boundary in the cylinder at {np.asarray(x).tolist()}, r={r:.4g}"
        )
    return directional_excess(clipped, nu, r)


def _vertex_heights(clipped: BoundaryPatch, x: np.ndarray, nu: np.ndarray) -> np.ndarray:
    return (clipped.vertices - x) @ nu


def _quadratic_integrals(heights: np.ndarray, shift: float, measures: np.ndarray) -> float:
    """Exact integral of (height - shift)^2 over segments or triangles with linear height."""
    d = heights - shift
    if d.shape[1] == 2:
        per_facet = (d[:, 0] ** 2 + d[:, 0] * d[:, 1] + d[:, 1] ** 2) / 3.0
    else:
        per_facet = (
            np.sum(d**2, axis=1)
            + d[:, 0] * d[:, 1]
            + d[:, 1] * d[:, 2]
            + d[:, 2] * d[:, 0]
        ) / 6.0
    return float(per_facet @ measures)


def flatness_on_patch(
    clipped: BoundaryPatch, x: np.ndarray, r: float, nu: np.ndarray
) -> FlatnessFit:
    nu = np.asarray(nu, dtype=float) / np.linalg.norm(nu)
    heights = _vertex_heights(clipped, np.asarray(x, dtype=float), nu)
    mass = clipped.total_measure
    h_opt = float(heights.mean(axis=1) @ clipped.measures) / mass
    value = _quadratic_integrals(heights, h_opt, clipped.measures) / r ** (clipped.n + 1)
    return FlatnessFit(value=value, h_opt=h_opt)


def flatness_at(
    e: DiscreteSet, x: np.ndarray, r: float, nu: np.ndarray, h: float
) -> float:
    """Flatness integrand evaluated at a fixed shift h instead of the optimal one."""
    nu = np.asarray(nu, dtype=float) / np.linalg.norm(nu)
    clipped = clip_to_region(boundary_of(e), Cylinder(x, r, nu))
    if clipped.is_empty:
        raise EmptyBoundaryError("No boundary in the cylinder")
    heights = _vertex_heights(clipped, np.asarray(x, dtype=float), nu)
    return _quadratic_integrals(heights, h, clipped.measures) / r ** (clipped.n + 1)


def flatness(e: DiscreteSet, x: np.ndarray, r: float, nu: np.ndarray) -> FlatnessFit:
    """f_{2,nu}(E, x, r) = min over h of (1/r^{n+1}) * integral of ((y - x).nu - h)^2."""
    clipped = clip_to_region(boundary_of(e), Cylinder(x, r, nu))
    if clipped.is_empty:
        raise EmptyBoundaryError(
            f"No boundary in the cylinder at {np.asarray(x).tolist()}, r={r:.4g}"
        )
    return flatness_on_patch(clipped, x, r, nu)
