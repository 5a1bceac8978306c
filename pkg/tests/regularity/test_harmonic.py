import numpy as np
import pytest

from gmtlab.regularity import (
    bump_dictionary,
    first_variation_residual,
    harmonicity_residual,
    lipschitz_approx,
    tangential_matrix,
)
from gmtlab.sets import generate

E2 = np.array([0.0, 1.0])
X0 = np.zeros(2)


class TestBumpDictionary:
    def test_planar_dictionary_has_twelve_bumps(self):
        """Test the size of the dictionary in one tangential dimension."""
        assert len(bump_dictionary(0.5, 1)) == 12

    def test_spatial_dictionary_has_twelve_bumps(self):
        """Test the size of the dictionary in two tangential dimensions."""
        assert len(bump_dictionary(0.5, 2)) == 12

    def test_supports_stay_inside(self):
        """Test that every bump is supported in B'_r."""
        r = 0.5
        for bump in bump_dictionary(r, 1):
            assert abs(bump.centre[0]) + bump.scale <= r + 1e-12

    def test_sup_gradient(self):
        """Test sup |b'| = 8 / (3 sqrt 3 rho) for the one-dimensional bump."""
        bump = bump_dictionary(0.5, 1)[0]

        assert bump.sup_gradient(resolution=20001) == pytest.approx(
            8 / (3 * np.sqrt(3) * bump.scale), rel=1e-4
        )


class TestHarmonicity:
    def test_tangential_matrix_euclidean(self, euclidean):
        """Test that the euclidean tangential matrix is the identity."""
        np.testing.assert_allclose(tangential_matrix(euclidean, X0, E2), [[1.0]])

    def test_affine_graph_is_harmonic(self, make_slope, euclidean):
        """Test that an affine graph has a vanishing residual."""
        la = lipschitz_approx(make_slope(0.1), X0, 0.5, E2)

        result = harmonicity_residual(la, euclidean, X0)

        assert result.value < 1e-3
        assert len(result.residuals) == 12

    def test_curved_graph_is_not_harmonic(self, euclidean):
        """Test that a sine graph has a visible residual."""
        shape = generate("graph:f=sine;amp=0.05;freq=6")
        la = lipschitz_approx(shape, X0, 0.5, E2)

        result = harmonicity_residual(la, euclidean, X0)

        assert result.value > 1e-4
        assert result.residuals[result.worst_index] == result.value

    def test_first_variation_of_line(self, make_slope, euclidean):
        """Test that the boundary form vanishes on a straight line."""
        result = first_variation_residual(make_slope(0.1), euclidean, X0, 0.5, E2)

        assert result.value < 1e-4
