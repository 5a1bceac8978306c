import math

import numpy as np
import pytest

from gmtlab.excess import (
    EmptyBoundaryError,
    cylindrical_excess,
    directional_excess,
    flatness,
    flatness_at,
    spherical_excess,
)
from gmtlab.sets import Ball, boundary_of, clip_to_region, generate

E2 = np.array([0.0, 1.0])
X0 = np.zeros(2)

EXACT_CORPUS = [
    "ball:R=1",
    "cross:w=0.4;L=1",
    "graph:f=linear;s=0.3",
    "graph:f=sine;amp=0.05;freq=6",
]
# Centre, radius pairs with boundary in the ball
INSTANCES = [
    ("ball:R=1", (1.0, 0.0), 0.3),
    ("cross:w=0.4;L=1", (0.2, 0.2), 0.1),
    ("graph:f=linear;s=0.3", (0.0, 0.0), 0.5),
    ("graph:f=sine;amp=0.05;freq=6", (0.0, 0.0), 0.4),
]


def _random_boundary_points(shape, rng: np.random.Generator, count: int) -> np.ndarray:
    loop = shape.loops[0]
    i = rng.integers(len(loop), size=count)
    t = rng.random(count)[:, None]
    return loop[i] + t * (loop[(i + 1) % len(loop)] - loop[i])


class TestSphericalExcess:
    def test_halfspace_is_flat(self, halfspace):
        """Test that a flat boundary has zero excess and normal e2."""
        fit = spherical_excess(halfspace, X0, 0.5)

        assert fit.excess <= 1e-12
        np.testing.assert_allclose(fit.nu_opt, E2, atol=1e-12)

    def test_circle_closed_form(self, circle):
        """Test Exc = 4 (alpha - sin alpha) with alpha = 2 arcsin(1/4) at r = 1/2."""
        alpha = 2 * math.asin(0.25)

        fit = spherical_excess(circle, np.array([1.0, 0.0]), 0.5)

        assert fit.excess == pytest.approx(4 * (alpha - math.sin(alpha)), rel=5e-3)
        np.testing.assert_allclose(fit.nu_opt, [1.0, 0.0], atol=1e-9)

    def test_empty_ball(self, circle):
        """Test that a ball without boundary reports zero excess and empty."""
        fit = spherical_excess(circle, X0, 0.5)

        assert fit.empty
        assert fit.excess == 0.0

    def test_reflex_corner(self, cross):
        """Test Exc = 2 - sqrt 2 where two orthogonal edges meet."""
        fit = spherical_excess(cross, np.array([0.2, 0.2]), 0.1)

        assert not fit.tie
        assert fit.excess == pytest.approx(2 - math.sqrt(2))
        np.testing.assert_allclose(fit.nu_opt, [math.sqrt(0.5), math.sqrt(0.5)])

    def test_scale_inequality(self, circle):
        """Test Exc(r') <= (r / r')^{n-1} Exc(r) for r' < r."""
        x = np.array([1.0, 0.0])
        r, r_small = 0.5, 0.2

        big = spherical_excess(circle, x, r).excess
        small = spherical_excess(circle, x, r_small).excess

        assert small <= (r / r_small) * big + 1e-12

    @pytest.mark.parametrize("spec", EXACT_CORPUS)
    def test_scale_inequality_on_random_triples(self, spec):
        """Test Exc(x, r') <= (r / r') Exc(x, r) on 50 seeded triples per shape."""
        shape = generate(spec)
        rng = np.random.default_rng(11)
        points = _random_boundary_points(shape, rng, 50)
        radii = rng.uniform(0.05, 0.5, size=50)
        ratios = rng.uniform(0.1, 1.0, size=50)

        for x, r, ratio in zip(points, radii, ratios, strict=True):
            big = spherical_excess(shape, x, r).excess
            small = spherical_excess(shape, x, ratio * r).excess

            assert small <= big / ratio * (1 + 1e-9) + 1e-12

    @pytest.mark.parametrize("spec,x,r", INSTANCES)
    def test_fitted_direction_minimizes(self, spec, x, r):
        """Test that no sampled direction has smaller excess than nu_opt."""
        shape = generate(spec)
        x = np.array(x)
        fit = spherical_excess(shape, x, r)
        clipped = clip_to_region(boundary_of(shape), Ball(x, r))
        angles = np.random.default_rng(5).uniform(0, 2 * np.pi, size=64)

        for angle in angles:
            nu = np.array([math.cos(angle), math.sin(angle)])
            assert directional_excess(clipped, nu, r) >= fit.excess - 1e-12

    def test_translation_inequality(self, circle):
        """Test Exc(y, r/2) <= 2 Exc(x, r) for |y - x| <= r/2."""
        x = np.array([1.0, 0.0])
        angle = 0.2
        y = np.array([math.cos(angle), math.sin(angle)])

        assert spherical_excess(circle, y, 0.25).excess <= 2 * spherical_excess(
            circle, x, 0.5
        ).excess + 1e-12


class TestCylindricalExcess:
    def test_slope_closed_form(self, make_slope):
        """Test Exc_e2 = 2 (sqrt(1 + s^2) - 1) on the line y = s t."""
        s = 0.1

        value = cylindrical_excess(make_slope(s), X0, 0.5, E2)

        assert value == pytest.approx(2 * (math.sqrt(1 + s**2) - 1), abs=1e-6)

    def test_spherical_below_cylindrical(self, circle):
        """Test that the ball excess never exceeds the cylinder excess along any axis."""
        x = np.array([1.0, 0.0])
        r = 0.3
        spherical = spherical_excess(circle, x, r).excess

        for angle in (0.0, 0.1, 0.4):
            nu = np.array([math.cos(angle), math.sin(angle)])
            assert spherical <= cylindrical_excess(circle, x, r, nu) + 1e-12

    @pytest.mark.parametrize("spec,x,r", INSTANCES)
    def test_spherical_below_cylindrical_random_axes(self, spec, x, r):
        """Test Exc(x, r) <= Exc_nu(x, r) on 64 seeded unit directions."""
        shape = generate(spec)
        x = np.array(x)
        spherical = spherical_excess(shape, x, r).excess
        angles = np.random.default_rng(7).uniform(0, 2 * np.pi, size=64)

        for angle in angles:
            nu = np.array([math.cos(angle), math.sin(angle)])
            assert spherical <= cylindrical_excess(shape, x, r, nu) + 1e-9

    def test_cylinder_at_reduced_radius(self, circle):
        """Test Exc_nu(r / sqrt 2) <= sqrt 2 Exc(r) with nu the ball minimizer."""
        x = np.array([1.0, 0.0])
        fit = spherical_excess(circle, x, 0.5)

        value = cylindrical_excess(circle, x, 0.5 / math.sqrt(2), fit.nu_opt)

        assert value <= math.sqrt(2) * fit.excess + 1e-12

    def test_empty_cylinder_raises(self, circle):
        """Test that a cylinder without boundary is an error."""
        with pytest.raises(EmptyBoundaryError):
            cylindrical_excess(circle, X0, 0.5, E2)


class TestFlatness:
    def test_slope_closed_form(self, make_slope):
        """Test f = (2/3) s^2 sqrt(1 + s^2) with optimal shift 0."""
        s = 0.1

        fit = flatness(make_slope(s), X0, 0.5, E2)

        assert fit.value == pytest.approx((2 / 3) * s**2 * math.sqrt(1 + s**2), abs=1e-6)
        assert fit.h_opt == pytest.approx(0.0, abs=1e-12)

    def test_halfspace_is_flat(self, halfspace):
        """Test that a flat boundary has zero flatness."""
        assert flatness(halfspace, X0, 0.5, E2).value == pytest.approx(0.0, abs=1e-12)

    def test_optimal_shift_minimizes(self, make_slope):
        """Test that a fixed shift never beats the optimal one."""
        shape = make_slope(0.2)
        fit = flatness(shape, X0, 0.5, E2)

        for h in (-0.05, 0.02, 0.1):
            assert flatness_at(shape, X0, 0.5, E2, h) >= fit.value - 1e-12

    def test_offset_line(self):
        """Test that the optimal shift follows an offset line."""
        shape = generate("graph:f=linear;s=0;c=0.05")

        fit = flatness(shape, X0, 0.5, E2)

        assert fit.h_opt == pytest.approx(0.05)
        assert fit.value == pytest.approx(0.0, abs=1e-12)
