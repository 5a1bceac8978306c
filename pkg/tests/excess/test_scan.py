import numpy as np
import pytest

from gmtlab.excess import ScaleEntry, ScaleScan, multiscale_scan
from gmtlab.sets import OffBoundaryError, nearest_boundary_point


def _entry(
    k: int, r: float, excess: float = 0.0, flags: tuple[str, ...] = ()
) -> ScaleEntry:
    return ScaleEntry(
        k=k,
        r=r,
        excess=excess,
        nu_opt=np.array([0.0, 1.0]),
        flatness=0.0,
        cyl_excess=0.0,
        facet_count=1,
        flags=flags,
    )


class TestMultiscaleScan:
    def test_halfspace_stays_flat(self, halfspace):
        """Test that every scale of a flat boundary is trusted with zero excess."""
        scan = multiscale_scan(halfspace, np.zeros(2), theta=0.5, r0=0.5, k_max=5)

        assert len(scan.entries) == 6
        assert not scan.truncated
        assert scan.sup_excess <= 1e-12
        assert scan.deepest_trusted_radius == pytest.approx(0.5 / 32)

    def test_circle_matches_closed_form(self, circle):
        """Test Exc at r = 1/2, 1/4, 1/8 on the unit circle against the arc formula.

        The circle is a 2048-gon, so values sit about 0.5% below the smooth ones.
        """
        scan = multiscale_scan(circle, np.array([1.0, 0.0]), theta=0.5, r0=0.5, k_max=2)

        excesses = [entry.excess for entry in scan.entries]
        assert excesses == pytest.approx([0.08496, 0.02103, 0.005246], rel=0.01)
        assert all(entry.trusted for entry in scan.entries)

    def test_circle_excess_decays(self, circle):
        """Test that excess on the circle shrinks with the radius."""
        scan = multiscale_scan(circle, np.array([1.0, 0.0]), theta=0.5, r0=0.5, k_max=4)
        excesses = [entry.excess for entry in scan.entries]

        assert excesses == sorted(excesses, reverse=True)
        assert scan.sup_excess == excesses[0]

    def test_extracted_boundary_truncates(self, voxel_ball):
        """Test that the scan stops once a ball holds fewer than eight facets."""
        x = nearest_boundary_point(voxel_ball, np.array([0.5, 0.0]))

        scan = multiscale_scan(voxel_ball, x, theta=0.5, r0=0.25, k_max=6)

        assert scan.truncated
        assert len(scan.entries) < 7
        assert all(entry.trusted for entry in scan.entries)

    def test_point_off_boundary(self, circle):
        """Test that the centre must be on the boundary."""
        with pytest.raises(OffBoundaryError):
            multiscale_scan(circle, np.zeros(2), theta=0.5, r0=0.5, k_max=3)

    def test_theta_range(self, halfspace):
        """Test that theta must lie in (0, 1)."""
        with pytest.raises(ValueError, match="theta"):
            multiscale_scan(halfspace, np.zeros(2), theta=1.5, r0=0.5, k_max=3)

    def test_k_max_range(self, halfspace):
        """Test that at least two scales are requested."""
        with pytest.raises(ValueError, match="k_max"):
            multiscale_scan(halfspace, np.zeros(2), theta=0.5, r0=0.5, k_max=0)


class TestScaleScan:
    def test_radii_must_decrease(self):
        """Test that entries are ordered from large to small radius."""
        with pytest.raises(ValueError, match="decreasing"):
            ScaleScan(
                x=np.zeros(2), theta=0.5, r0=0.5, entries=[_entry(0, 0.25), _entry(1, 0.5)]
            )

    def test_needs_entries(self):
        """Test that an empty scan is rejected."""
        with pytest.raises(ValueError, match="at least one"):
            ScaleScan(x=np.zeros(2), theta=0.5, r0=0.5, entries=[])

    def test_untrusted_flag(self):
        """Test that the untrusted flag excludes an entry."""
        entry = ScaleEntry(
            k=0,
            r=0.1,
            excess=0.0,
            nu_opt=np.array([0.0, 1.0]),
            flatness=0.0,
            cyl_excess=0.0,
            facet_count=3,
            flags=("untrusted",),
        )

        assert not entry.trusted

    def test_sup_trusted_excess_skips_untrusted_scales(self):
        """Test that untrusted scales count for sup_excess but not for the trusted sup."""
        scan = ScaleScan(
            x=np.zeros(2),
            theta=0.5,
            r0=0.5,
            entries=[_entry(0, 0.5, 0.01), _entry(1, 0.25, 0.3, ("untrusted",))],
        )

        assert scan.sup_excess == pytest.approx(0.3)
        assert scan.sup_trusted_excess == pytest.approx(0.01)

    def test_sup_trusted_excess_without_trusted_scales(self):
        """Test that a scan with no trusted scale has no trusted sup."""
        scan = ScaleScan(
            x=np.zeros(2), theta=0.5, r0=0.5, entries=[_entry(0, 0.5, 0.2, ("untrusted",))]
        )

        assert scan.sup_trusted_excess is None
