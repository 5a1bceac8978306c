import numpy as np
import pytest

from gmtlab.anisotropy import AnisotropyError, AnisotropyKind, parse_anisotropy


class TestParseAnisotropy:
    def test_euclidean_defaults(self):
        """Test that euclidean gets lambda = 1 and ell = 0 without measuring."""
        a = parse_anisotropy("euclidean")

        assert a.kind == AnisotropyKind.EUCLIDEAN
        assert a.lam == 1.0
        assert a.ell == 0.0
        np.testing.assert_array_equal(a.matrix, np.eye(2))

    def test_euclidean_in_three_dimensions(self):
        """Test that n selects the matrix size."""
        a = parse_anisotropy("euclidean", n=3)

        assert a.n == 3

    def test_quadratic_diagonal(self):
        """Test that n coefficients form a diagonal matrix."""
        a = parse_anisotropy("quadratic:1,4;lambda=3")

        np.testing.assert_array_equal(a.matrix, np.diag([1.0, 4.0]))
        assert a.lam == 3.0

    def test_quadratic_upper_triangle(self):
        """Test that n(n+1)/2 coefficients fill the upper triangle symmetrically."""
        a = parse_anisotropy("quadratic:2,0.5,1;lambda=2")

        np.testing.assert_array_equal(a.matrix, np.array([[2.0, 0.5], [0.5, 1.0]]))

    def test_quadratic_measures_constants(self):
        """Test that undeclared constants are measured and cover the Hessian bound."""
        a = parse_anisotropy("quadratic:1,4")

        # |hess Phi| reaches 4 at e1
        assert a.lam >= 4.0
        assert a.ell == 0.0

    def test_modulated(self):
        """Test that modulated integrands carry the bump and a positive ell."""
        a = parse_anisotropy("modulated:euclidean;beta=0.1;center=0,0;radius=1")

        assert a.kind == AnisotropyKind.MODULATED
        assert a.modulation is not None
        assert a.modulation.beta == pytest.approx(0.1)
        assert a.ell > 0

    def test_modulated_missing_keys(self):
        """Test that modulated lists the options it needs."""
        with pytest.raises(AnisotropyError, match="radius"):
            parse_anisotropy("modulated:euclidean;beta=0.1;center=0,0")

    def test_unknown_kind_lists_available(self):
        """Test that an unknown kind names the registered ones."""
        with pytest.raises(AnisotropyError, match="Available: euclidean, quadratic"):
            parse_anisotropy("cubic:1,2")

    def test_malformed_option(self):
        """Test that options without '=' are rejected."""
        with pytest.raises(AnisotropyError, match="Malformed option"):
            parse_anisotropy("euclidean;lambda")

    def test_unknown_option(self):
        """Test that unknown option keys are rejected."""
        with pytest.raises(AnisotropyError, match="Unknown options"):
            parse_anisotropy("euclidean;gamma=2")

    def test_wrong_coefficient_count(self):
        """Test that a coefficient count matching no layout is rejected."""
        with pytest.raises(AnisotropyError, match="coefficients"):
            parse_anisotropy("quadratic:1,2,3,4,5")

    def test_unsupported_dimension(self):
        """Test that only n in {2, 3} is accepted."""
        with pytest.raises(AnisotropyError, match="Only n"):
            parse_anisotropy("euclidean", n=4)
