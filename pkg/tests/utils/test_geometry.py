import math

import numpy as np
import pytest

from gmtlab.utils.geometry import (
    angle_between,
    dyadic_radii,
    normalize,
    orthonormal_frame,
    unit_ball_volume,
)


class TestGeometry:
    @pytest.mark.parametrize(
        ("n", "expected"), [(1, 2.0), (2, math.pi), (3, 4 / 3 * math.pi)]
    )
    def test_unit_ball_volume(self, n, expected):
        """Test omega_n in low dimensions."""
        assert unit_ball_volume(n) == pytest.approx(expected)

    def test_dyadic_radii(self):
        """Test halving down to r_min inclusive."""
        assert dyadic_radii(1.0, 0.25) == [1.0, 0.5, 0.25]
        assert dyadic_radii(1.0, 2.0) == [1.0]

    def test_normalize_rows(self):
        """Test that normalize works along the last axis."""
        result = normalize(np.array([[3.0, 4.0], [0.0, 2.0]]))

        np.testing.assert_allclose(result, [[0.6, 0.8], [0.0, 1.0]])

    def test_planar_frame_of_e2(self):
        """Test that e2 gives the world frame."""
        np.testing.assert_allclose(orthonormal_frame(np.array([0.0, 1.0])), np.eye(2))

    def test_spatial_frame(self):
        """Test that the 3D frame is orthonormal, right-handed and ends with nu."""
        nu = normalize(np.array([1.0, 2.0, 2.0]))

        frame = orthonormal_frame(nu)

        np.testing.assert_allclose(frame.T @ frame, np.eye(3), atol=1e-12)
        np.testing.assert_allclose(frame[:, 2], nu)
        assert np.linalg.det(frame) == pytest.approx(1.0)

    def test_angle_between(self):
        """Test the angle of orthogonal vectors."""
        assert angle_between(np.array([1.0, 0.0]), np.array([0.0, 3.0])) == pytest.approx(
            math.pi / 2
        )
