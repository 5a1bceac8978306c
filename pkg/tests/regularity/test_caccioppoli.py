import math

import numpy as np
import pytest

from gmtlab.core.constants import CACCIOPPOLI_BOUND
from gmtlab.regularity import caccioppoli_ratio

E1 = np.array([1.0, 0.0])
E2 = np.array([0.0, 1.0])
X0 = np.zeros(2)


class TestCaccioppoliRatio:
    def test_slope_closed_form(self, make_slope):
        """Test Exc(r) / f(2r) = 3 (sqrt(1 + s^2) - 1) / (s^2 sqrt(1 + s^2))."""
        s = 0.1
        root = math.sqrt(1 + s**2)

        result = caccioppoli_ratio(make_slope(s), X0, 0.25, E2, lam=0.0, ell=0.0)

        assert result.ratio == pytest.approx(3 * (root - 1) / (s**2 * root), rel=1e-6)
        assert result.precondition_ok
        assert not result.infinite

    def test_lambda_enters_denominator(self, make_slope):
        """Test that Lambda + ell r is added to the flatness."""
        result = caccioppoli_ratio(make_slope(0.1), X0, 0.25, E2, lam=0.5, ell=2.0)

        assert result.denominator == pytest.approx(result.flatness + 0.5 + 0.5)
        assert result.ratio == pytest.approx(result.excess / result.denominator)

    def test_zero_over_zero(self, halfspace):
        """Test that 0/0 is reported as 0."""
        result = caccioppoli_ratio(halfspace, X0, 0.25, E2, lam=0.0, ell=0.0)

        assert result.ratio == 0.0
        assert not result.infinite

    def test_tilted_axis(self, halfspace):
        """Test that a tilted axis sees both excess and flatness on a flat boundary."""
        nu = np.array([math.sin(0.1), math.cos(0.1)])

        result = caccioppoli_ratio(halfspace, X0, 0.25, nu, lam=0.0, ell=0.0)

        assert result.excess > 0
        assert result.ratio == pytest.approx(result.excess / result.flatness)

    def test_large_excess_clears_precondition(self, circle):
        """Test that a large excess at 4r clears the precondition but still computes."""
        result = caccioppoli_ratio(circle, np.array([1.0, 0.0]), 0.2, E2, lam=0.0, ell=0.0)

        assert not result.precondition_ok
        assert result.ratio > 0

    @pytest.mark.parametrize(
        "r, precondition_ok",
        [(0.4, False), (0.2, False), (0.1, False), (0.05, True)],
    )
    def test_circle_family_stays_bounded(self, circle, r, precondition_ok):
        """Test that the circle ratio at its own normal stays below the bound at every radius."""
        result = caccioppoli_ratio(circle, E1, r, E1, lam=0.0, ell=0.0)

        assert not result.infinite
        assert 0 < result.ratio <= CACCIOPPOLI_BOUND
        assert result.precondition_ok is precondition_ok
