from gmtlab.sets.boundary import (
    OffBoundaryError,
    OutsideDomainError,
    boundary_of,
    boundary_tolerance,
    distance_to_boundary,
    ensure_inside_domain,
    ensure_on_boundary,
    is_exact,
    nearest_boundary_point,
    resolution,
    sample_boundary_points,
)
from gmtlab.sets.factory import (
    GeneratorSpecError,
    add_noise,
    available_generators,
    generate,
    register_generator,
)
from gmtlab.sets.io import SetFormatError, load_set, save_set
from gmtlab.sets.patch import BoundaryPatch, PatchFlag, Provenance, clip_to_region
from gmtlab.sets.polygon import InvalidSetError, PolyCurveSet, boundary_of_poly
from gmtlab.sets.regions import Ball, Cylinder, Region
from gmtlab.sets.volume import DiscreteSet, region_cells, volume_in
from gmtlab.sets.voxel import VoxelSet, extract_boundary, rasterize

__all__ = [
    "Ball",
    "BoundaryPatch",
    "Cylinder",
    "DiscreteSet",
    "GeneratorSpecError",
    "InvalidSetError",
    "OffBoundaryError",
    "OutsideDomainError",
    "PatchFlag",
    "PolyCurveSet",
    "Provenance",
    "Region",
    "SetFormatError",
    "VoxelSet",
    "add_noise",
    "available_generators",
    "boundary_of",
    "boundary_of_poly",
    "boundary_tolerance",
    "clip_to_region",
    "distance_to_boundary",
    "ensure_inside_domain",
    "ensure_on_boundary",
    "extract_boundary",
    "generate",
    "is_exact",
    "load_set",
    "nearest_boundary_point",
    "rasterize",
    "region_cells",
    "register_generator",
    "resolution",
    "sample_boundary_points",
    "save_set",
    "volume_in",
]
