import numpy as np

from gmtlab.anisotropy import Anisotropy, phi_eval
from gmtlab.sets import BoundaryPatch, Region, clip_to_region


def perimeter(b: BoundaryPatch, region: Region | None = None) -> float:
    """Sum of facet measures after optional clipping."""
    if region is not None:
        b = clip_to_region(b, region)
    return b.total_measure


def perimeter_phi(b: BoundaryPatch, a: Anisotropy, region: Region | None = None) -> float:
    """P_Phi(E, U) = sum of Phi(centroid, normal) * measure over the (clipped) facets."""
    if region is not None:
        b = clip_to_region(b, region)
    if b.is_empty:
        return 0.0
    values = np.asarray(phi_eval(a, b.centroids, b.normals))
    return float(values @ b.measures)
