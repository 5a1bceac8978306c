import numpy as np
import pytest

from gmtlab.excess import EmptyBoundaryError
from gmtlab.excess import spherical_excess
from gmtlab.regularity import (
    RegularityHypotheses,
    epsilon_of_delta,
    plane_disk_samples,
    reifenberg_check,
)


class TestReifenbergCheck:
    def test_halfspace_is_flat(self, halfspace):
        """Test that every sub-ball of a flat boundary has distance zero."""
        report = reifenberg_check(halfspace, np.zeros(2), 0.5, delta=0.05)

        assert report.passed
        assert report.delta_measured == pytest.approx(0.0, abs=1e-9)
        assert len(report.subballs) == 16

    def test_circle_delta(self, circle):
        """Test that the measured delta on the circle is about r/4."""
        report = reifenberg_check(circle, np.array([1.0, 0.0]), 0.15, delta=0.1, seed=1)

        assert 0.025 < report.delta_measured < 0.06
        assert report.separation_ok
        assert report.worst_ball is not None

    def test_first_subball_is_centred(self, circle):
        """Test that the first sub-ball is B_{r/2}(x)."""
        x = np.array([1.0, 0.0])

        report = reifenberg_check(circle, x, 0.2, delta=0.1)

        np.testing.assert_allclose(report.subballs[0].y, x)
        assert report.subballs[0].r == pytest.approx(0.1)

    def test_cross_corner_fails_separation(self, cross):
        """Test that a reflex corner puts E above the fitted plane."""
        report = reifenberg_check(cross, np.array([0.2, 0.2]), 0.2, delta=0.1)

        assert not report.separation_ok
        assert not report.passed

    def test_seed_is_reproducible(self, circle):
        """Test that the same seed samples the same sub-balls."""
        x = np.array([1.0, 0.0])

        first = reifenberg_check(circle, x, 0.2, delta=0.1, seed=5)
        second = reifenberg_check(circle, x, 0.2, delta=0.1, seed=5)

        assert first.delta_measured == second.delta_measured

    def test_planes_are_unit_normals(self, circle):
        """Test that the plane map holds unit normals."""
        report = reifenberg_check(circle, np.array([1.0, 0.0]), 0.2, delta=0.1)

        for normal in report.planes.values():
            assert np.linalg.norm(normal) == pytest.approx(1.0)

    def test_delta_must_be_positive(self, circle):
        """Test that delta <= 0 is rejected."""
        with pytest.raises(ValueError, match="delta"):
            reifenberg_check(circle, np.array([1.0, 0.0]), 0.2, delta=0.0)

    def test_empty_ball(self, circle):
        """Test that a ball without boundary is an error."""
        with pytest.raises(EmptyBoundaryError):
            reifenberg_check(circle, np.zeros(2), 0.5, delta=0.1)


class TestPlaneDiskSamples:
    def test_planar_samples_on_line(self):
        """Test that planar samples lie on the line through y within the radius."""
        y = np.array([0.5, 0.5])

        samples = plane_disk_samples(y, 0.2, np.array([0.0, 1.0]), 100)

        np.testing.assert_allclose(samples[:, 1], 0.5)
        assert np.max(np.abs(samples[:, 0] - 0.5)) <= 0.2

    def test_spatial_samples_in_disk(self):
        """Test that spatial samples fill the disk orthogonal to the normal."""
        normal = np.array([0.0, 0.0, 1.0])

        samples = plane_disk_samples(np.zeros(3), 0.3, normal, 500)

        np.testing.assert_allclose(samples[:, 2], 0.0, atol=1e-12)
        assert np.max(np.linalg.norm(samples, axis=1)) <= 0.3


class TestEpsilonOfDelta:
    def test_closed_form(self):
        """Test epsilon(delta) = 16/3 delta^2."""
        assert epsilon_of_delta(0.1) == pytest.approx(16 / 300)

    def test_rejects_non_positive_delta(self):
        """Test that delta must be positive."""
        with pytest.raises(ValueError, match="delta"):
            epsilon_of_delta(0.0)

    @pytest.mark.parametrize("r", [0.1, 0.2])
    def test_matches_circle_family(self, circle, r):
        """Test that circle excess at r sits near epsilon of the delta measured at r."""
        x = np.array([1.0, 0.0])
        report = reifenberg_check(circle, x, r, delta=0.2, seed=3)
        excess = spherical_excess(circle, x, r).excess

        assert epsilon_of_delta(report.delta_measured / 2) < excess
        assert excess < epsilon_of_delta(2 * report.delta_measured)


class TestRegularityHypotheses:
    def test_small_quantities_hold(self):
        """Test that Lambda, excess and ell r below epsilon satisfy the hypotheses."""
        hypotheses = RegularityHypotheses(
            delta=0.1, lambda_hat=0.01, sup_excess=0.02, ell_r=0.0
        )

        assert hypotheses.epsilon == pytest.approx(16 / 300)
        assert hypotheses.hold
        assert hypotheses.violated == []

    def test_large_excess_is_reported(self):
        """Test that an excess above epsilon breaks the hypotheses even with tiny Lambda."""
        hypotheses = RegularityHypotheses(
            delta=0.1, lambda_hat=0.0, sup_excess=0.4, ell_r=0.1
        )

        assert not hypotheses.hold
        assert hypotheses.violated == ["ell_r", "sup_excess"]

    def test_missing_trusted_excess_fails(self):
        """Test that a scan without trusted scales cannot satisfy the hypotheses."""
        hypotheses = RegularityHypotheses(
            delta=0.1, lambda_hat=0.0, sup_excess=None, ell_r=0.0
        )

        assert hypotheses.violated == ["sup_excess"]
