import numpy as np
import pytest

from gmtlab.sets import (
    Ball,
    OffBoundaryError,
    OutsideDomainError,
    boundary_of,
    distance_to_boundary,
    ensure_inside_domain,
    ensure_on_boundary,
    nearest_boundary_point,
    sample_boundary_points,
)


class TestBoundaryAccess:
    def test_boundary_is_cached(self, circle):
        """Test that the patch is computed once per set."""
        assert boundary_of(circle) is boundary_of(circle)

    def test_distance_to_circle(self, circle):
        """Test exact point-to-segment distances."""
        distances = distance_to_boundary(boundary_of(circle), np.array([[0.0, 0.0], [2.0, 0.0]]))

        np.testing.assert_allclose(distances, [1.0, 1.0], atol=1e-5)

    def test_nearest_point_projects(self, circle):
        """Test that (2, 0) projects onto the vertex (1, 0)."""
        y = nearest_boundary_point(circle, np.array([2.0, 0.0]))

        np.testing.assert_allclose(y, [1.0, 0.0], atol=1e-9)

    def test_nearest_point_on_voxels(self, voxel_halfspace):
        """Test that voxel boundaries project close to the interface."""
        y = nearest_boundary_point(voxel_halfspace, np.array([0.0, 0.3]))

        assert abs(y[1]) < voxel_halfspace.h

    def test_ensure_on_boundary_accepts_vertex(self, circle):
        """Test that boundary points pass."""
        ensure_on_boundary(circle, np.array([1.0, 0.0]))

    def test_ensure_on_boundary_rejects_centre(self, circle):
        """Test that interior points are rejected with their distance."""
        with pytest.raises(OffBoundaryError, match="from the boundary"):
            ensure_on_boundary(circle, np.array([0.0, 0.0]))

    def test_ball_leaving_the_domain(self, voxel_halfspace):
        """Test that balls must stay inside the voxel grid."""
        ensure_inside_domain(voxel_halfspace, Ball(np.zeros(2), 0.5))

        with pytest.raises(OutsideDomainError):
            ensure_inside_domain(voxel_halfspace, Ball(np.array([0.9, 0.0]), 0.5))

    def test_polygons_have_no_domain(self, circle):
        """Test that exact sets accept any ball."""
        ensure_inside_domain(circle, Ball(np.zeros(2), 10.0))


class TestSampleBoundaryPoints:
    def test_stride_thins_the_sample(self, circle):
        """Test that stride k keeps every k-th centroid."""
        patch = boundary_of(circle)

        points = sample_boundary_points(patch, stride=64, seed=0)

        assert len(points) == len(patch) // 64

    def test_seed_fixes_offset(self, circle):
        """Test that the same seed gives the same sample."""
        patch = boundary_of(circle)

        np.testing.assert_array_equal(
            sample_boundary_points(patch, stride=7, seed=4),
            sample_boundary_points(patch, stride=7, seed=4),
        )
