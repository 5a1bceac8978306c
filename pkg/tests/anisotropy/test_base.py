import numpy as np
import pytest

from gmtlab.anisotropy import (
    Anisotropy,
    AnisotropyError,
    AnisotropyKind,
    Modulation,
    phi_eval,
    phi_grad,
    phi_hess,
)


class TestPhiEval:
    def test_euclidean_is_norm(self, euclidean):
        """Test that the euclidean integrand is the Euclidean norm."""
        value = phi_eval(euclidean, np.zeros(2), np.array([3.0, 4.0]))

        assert value == pytest.approx(5.0)

    def test_quadratic_values_on_axes(self, ellipse_form):
        """Test that diag(1, 4) gives 1 on e1 and 2 on e2."""
        x = np.zeros(2)

        assert phi_eval(ellipse_form, x, np.array([1.0, 0.0])) == pytest.approx(1.0)
        assert phi_eval(ellipse_form, x, np.array([0.0, 1.0])) == pytest.approx(2.0)

    def test_positive_homogeneity(self, ellipse_form):
        """Test that Phi(x, t nu) = t Phi(x, nu) for t > 0."""
        nu = np.array([0.3, -0.7])

        single = phi_eval(ellipse_form, np.zeros(2), nu)
        scaled = phi_eval(ellipse_form, np.zeros(2), 2.5 * nu)

        assert scaled == pytest.approx(2.5 * single)

    def test_broadcasts_over_rows(self, euclidean):
        """Test that a stack of normals yields one value per row."""
        normals = np.array([[1.0, 0.0], [0.0, 2.0], [3.0, 4.0]])

        values = phi_eval(euclidean, np.zeros((3, 2)), normals)

        np.testing.assert_allclose(values, [1.0, 2.0, 5.0])

    def test_zero_vector_raises(self, euclidean):
        """Test that Phi is undefined at the zero vector."""
        with pytest.raises(AnisotropyError, match="zero vector"):
            phi_eval(euclidean, np.zeros(2), np.zeros(2))


class TestDerivatives:
    def test_gradient_is_zero_homogeneous(self, ellipse_form):
        """Test that the gradient does not change when nu is scaled."""
        nu = np.array([0.6, 0.8])

        np.testing.assert_allclose(
            phi_grad(ellipse_form, np.zeros(2), nu),
            phi_grad(ellipse_form, np.zeros(2), 3.0 * nu),
        )

    def test_euler_identity(self, ellipse_form):
        """Test that grad Phi . nu = Phi on unit vectors."""
        nu = np.array([0.6, 0.8])

        grad = phi_grad(ellipse_form, np.zeros(2), nu)

        assert grad @ nu == pytest.approx(phi_eval(ellipse_form, np.zeros(2), nu))

    def test_hessian_annihilates_normal(self, ellipse_form):
        """Test that the Hessian maps nu to zero by 1-homogeneity."""
        nu = np.array([0.6, 0.8])

        hess = phi_hess(ellipse_form, np.zeros(2), nu)

        np.testing.assert_allclose(hess @ nu, np.zeros(2), atol=1e-12)

    def test_hessian_norm_at_first_axis(self, ellipse_form):
        """Test that the Hessian of diag(1, 4) at e1 is diag(0, 4)."""
        hess = phi_hess(ellipse_form, np.zeros(2), np.array([1.0, 0.0]))

        np.testing.assert_allclose(hess, np.diag([0.0, 4.0]), atol=1e-12)


class TestModulation:
    def test_bump_profile(self):
        """Test that the bump is 1 at the center and 0 outside the radius."""
        m = Modulation(beta=0.1, center=np.zeros(2), radius=1.0)

        assert m.bump(np.zeros(2)) == pytest.approx(1.0)
        assert m.bump(np.array([1.5, 0.0])) == pytest.approx(0.0)
        assert m.factor(np.zeros(2)) == pytest.approx(1.1)

    def test_bump_lipschitz_closed_form(self):
        """Test Lip(g) = 8 / (3 sqrt(3) rho)."""
        m = Modulation(beta=0.1, center=np.zeros(2), radius=0.5)

        assert m.bump_lipschitz == pytest.approx(16.0 / (3.0 * np.sqrt(3.0)))

    @pytest.mark.parametrize("radius", [0.25, 0.5, 2.0])
    def test_bump_lipschitz_matches_finite_differences(self, radius):
        """Test that the steepest radial difference quotient reaches the closed form."""
        m = Modulation(beta=0.1, center=np.array([0.3, -0.2]), radius=radius)
        s = np.linspace(0.0, 1.2 * radius, 20001)
        points = m.center + s[:, None] * np.array([0.6, 0.8])

        quotients = np.abs(np.diff(m.bump(points))) / np.diff(s)

        assert np.max(quotients) <= m.bump_lipschitz * (1 + 1e-9)
        assert np.max(quotients) == pytest.approx(m.bump_lipschitz, rel=1e-4)

    def test_negative_amplitude_raises(self):
        """Test that beta < 0 is rejected."""
        with pytest.raises(AnisotropyError, match="amplitude"):
            Modulation(beta=-0.1, center=np.zeros(2), radius=1.0)


class TestAnisotropyInvariants:
    def test_rejects_asymmetric_matrix(self):
        """Test that a non-symmetric matrix is rejected."""
        with pytest.raises(AnisotropyError, match="symmetric"):
            Anisotropy(kind=AnisotropyKind.QUADRATIC, matrix=np.array([[1.0, 0.5], [0.0, 1.0]]))

    def test_rejects_indefinite_matrix(self):
        """Test that a matrix with a negative eigenvalue is rejected."""
        with pytest.raises(AnisotropyError, match="positive definite"):
            Anisotropy(kind=AnisotropyKind.QUADRATIC, matrix=np.diag([1.0, -1.0]))

    def test_rejects_lambda_below_one(self):
        """Test that lambda < 1 is rejected."""
        with pytest.raises(AnisotropyError, match="lambda must be >= 1"):
            Anisotropy(kind=AnisotropyKind.EUCLIDEAN, matrix=np.eye(2), lam=0.5)

    def test_rejects_eigenvalues_outside_window(self):
        """Test that eigenvalues must lie in [1/lambda^2, lambda^2]."""
        with pytest.raises(AnisotropyError, match="outside"):
            Anisotropy(kind=AnisotropyKind.QUADRATIC, matrix=np.diag([1.0, 9.0]), lam=2.0)

    def test_euclidean_has_zero_ell(self):
        """Test that a euclidean integrand cannot declare ell > 0."""
        with pytest.raises(AnisotropyError, match="ell = 0"):
            Anisotropy(kind=AnisotropyKind.EUCLIDEAN, matrix=np.eye(2), ell=0.1)

    def test_modulated_needs_modulation(self):
        """Test that a modulated kind without a bump is rejected."""
        with pytest.raises(AnisotropyError, match="needs a modulation"):
            Anisotropy(kind=AnisotropyKind.MODULATED, matrix=np.eye(2))

    def test_with_constants_keeps_matrix(self, ellipse_form):
        """Test that replacing constants keeps the integrand."""
        relaxed = ellipse_form.with_constants(lam=5.0, ell=0.0)

        np.testing.assert_array_equal(relaxed.matrix, ellipse_form.matrix)
        assert relaxed.lam == 5.0
