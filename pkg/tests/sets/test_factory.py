import numpy as np
import pytest

from gmtlab.anisotropy import parse_anisotropy
from gmtlab.sets import (
    GeneratorSpecError,
    PolyCurveSet,
    VoxelSet,
    add_noise,
    available_generators,
    generate,
)


class TestGenerate:
    def test_available_generators(self):
        """Test that the registry lists every shape plus noisy."""
        assert available_generators() == [
            "ball",
            "cross",
            "graph",
            "halfspace",
            "noisy",
            "wulff",
        ]

    def test_ball_is_exact_polygon(self, circle):
        """Test that a planar ball is a 2048-gon through (1, 0)."""
        assert isinstance(circle, PolyCurveSet)
        assert len(circle.loops[0]) == 2048
        np.testing.assert_allclose(circle.loops[0][0], [1.0, 0.0])

    def test_spacing_rasterizes(self):
        """Test that h turns a planar shape into voxels."""
        shape = generate("ball:R=0.5;h=0.0625")

        assert isinstance(shape, VoxelSet)
        assert shape.h == pytest.approx(0.0625)

    def test_three_dimensional_ball(self):
        """Test that n=3 builds a voxel ball."""
        shape = generate("ball:n=3;R=0.25;h=0.0625")

        assert isinstance(shape, VoxelSet)
        assert shape.n == 3
        assert shape.volume == pytest.approx(4 / 3 * np.pi * 0.25**3, rel=0.2)

    def test_fraction_values(self):
        """Test that numbers may be written as fractions."""
        shape = generate("ball:R=1/2;h=1/32")

        assert shape.h == pytest.approx(1 / 32)

    def test_cross_has_reflex_corners(self, cross):
        """Test that the cross passes through its four corners."""
        vertices = cross.vertices()

        for corner in ([0.2, 0.2], [-0.2, 0.2], [-0.2, -0.2], [0.2, -0.2]):
            assert np.min(np.linalg.norm(vertices - corner, axis=1)) < 1e-12

    def test_square_caps(self):
        """Test the square-capped cross area 4 * w * L - w^2."""
        shape = generate("cross:w=0.4;L=1;caps=square")

        assert shape.area == pytest.approx(4 * 0.4 * 1.0 - 0.4**2)

    def test_wulff_shape_of_ellipse_form(self):
        """Test that the Wulff shape of diag(1, 4) is the ellipse with semi-axes 1 and 2."""
        a = parse_anisotropy("quadratic:1,4;lambda=4.5")

        shape = generate("wulff:scale=1", anisotropy=a)

        assert shape.area == pytest.approx(2 * np.pi, rel=1e-3)

    def test_unknown_shape(self):
        """Test that unknown names list the available shapes."""
        with pytest.raises(GeneratorSpecError, match="Available: ball"):
            generate("torus:R=1")

    def test_malformed_option(self):
        """Test that options need key=value."""
        with pytest.raises(GeneratorSpecError, match="Malformed option"):
            generate("ball:R")

    def test_invalid_number(self):
        """Test that non-numeric values are reported with their key."""
        with pytest.raises(GeneratorSpecError, match="'R'"):
            generate("ball:R=big")


class TestNoise:
    def test_noisy_is_seeded(self):
        """Test that the same seed flips the same cells."""
        spec = "noisy:base=ball:R=0.5;p=0.05;seed=7;h=0.0625"

        first = generate(spec)
        second = generate(spec)

        np.testing.assert_array_equal(first.cells, second.cells)

    def test_noise_spares_the_border(self, voxel_ball):
        """Test that the two-cell border is never flipped."""
        noisy = add_noise(voxel_ball, p=1.0, seed=0)

        assert not noisy.cells[:2].any()
        assert noisy.cells[2:-2, 2:-2].sum() == (~voxel_ball.cells[2:-2, 2:-2]).sum()

    def test_noisy_needs_base(self):
        """Test that noisy requires base= first."""
        with pytest.raises(GeneratorSpecError, match="base="):
            generate("noisy:p=0.1")

    def test_flip_rate_range(self):
        """Test that p outside [0, 1] is rejected."""
        with pytest.raises(GeneratorSpecError, match="flip rate"):
            generate("noisy:base=ball:R=0.5;p=2")
