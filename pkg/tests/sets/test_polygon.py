import math

import numpy as np
import pytest

from gmtlab.sets import Ball, InvalidSetError, PolyCurveSet, boundary_of, volume_in

UNIT_SQUARE = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])


class TestPolyCurveSet:
    def test_area_and_membership(self):
        """Test area and even-odd membership of the unit square."""
        square = PolyCurveSet(loops=(UNIT_SQUARE,))

        assert square.area == pytest.approx(1.0)
        np.testing.assert_array_equal(
            square.contains(np.array([[0.5, 0.5], [1.5, 0.5]])), [True, False]
        )

    def test_clockwise_outer_loop_is_rejected(self):
        """Test that an outer loop must run counter-clockwise."""
        with pytest.raises(InvalidSetError, match="wrong orientation"):
            PolyCurveSet(loops=(UNIT_SQUARE[::-1],))

    def test_from_loops_orients_holes(self):
        """Test that from_loops orients an inner loop as a hole."""
        hole = 0.25 + 0.5 * UNIT_SQUARE

        annulus = PolyCurveSet.from_loops([UNIT_SQUARE[::-1], hole])

        assert annulus.area == pytest.approx(0.75)
        assert not annulus.contains(np.array([0.5, 0.5]))

    def test_self_intersecting_loop(self):
        """Test that a bow-tie loop is rejected."""
        bow_tie = np.array([[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]])

        with pytest.raises(InvalidSetError, match="not simple"):
            PolyCurveSet(loops=(bow_tie,))

    def test_short_loop(self):
        """Test that loops need three vertices."""
        with pytest.raises(InvalidSetError, match="fewer than 3"):
            PolyCurveSet(loops=(UNIT_SQUARE[:2],))


class TestPolygonBoundary:
    def test_outward_normals(self):
        """Test that the bottom edge of the square has normal -e2."""
        patch = boundary_of(PolyCurveSet(loops=(UNIT_SQUARE,)))

        np.testing.assert_allclose(patch.normals[0], [0.0, -1.0])
        assert patch.total_measure == pytest.approx(4.0)

    def test_closed_loop(self, circle):
        """Test that the weighted normals of a closed loop sum to zero."""
        assert boundary_of(circle).is_closed()


class TestVolumeIn:
    def test_quarter_disk_at_corner(self):
        """Test that a ball at the square's corner captures a quarter disk."""
        square = PolyCurveSet(loops=(UNIT_SQUARE,))

        volume = volume_in(square, Ball(np.zeros(2), 0.5))

        assert volume == pytest.approx(math.pi * 0.25 / 4)

    def test_ball_containing_the_set(self, circle):
        """Test that a large ball captures the whole polygon."""
        assert volume_in(circle, Ball(np.zeros(2), 2.0)) == pytest.approx(circle.area)

    def test_half_disk_on_halfspace(self, halfspace):
        """Test that a ball centred on a flat boundary is half inside."""
        volume = volume_in(halfspace, Ball(np.zeros(2), 0.5))

        assert volume == pytest.approx(math.pi * 0.25 / 2)
