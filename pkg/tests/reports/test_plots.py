"""Tests for static plots."""

import numpy as np

from gmtlab.almostmin import LambdaCertificate
from gmtlab.excess import multiscale_scan
from gmtlab.reports import plot_boundary, plot_certificate, plot_scan
from gmtlab.sets import boundary_of


class TestPlots:
    """Tests for the SVG writers."""

    def test_plot_scan(self, temp_dir, halfspace):
        """Test that a scan with zero excess still plots on log axes."""
        scan = multiscale_scan(halfspace, np.zeros(2), 0.5, 0.5, 3)

        path = plot_scan(scan, temp_dir / "scan.svg")

        assert path.is_file()
        assert path.read_text().lstrip().startswith("<?xml")

    def test_plot_certificate_without_samples(self, temp_dir):
        """Test that an empty certificate plots its zero line."""
        certificate = LambdaCertificate(
            samples=[], r0=0.25, alpha=0.0, metrication_bound=0.04, order=8
        )

        path = plot_certificate(certificate, temp_dir / "plots" / "gaps.svg")

        assert path.is_file()

    def test_plot_boundary_is_deterministic(self, temp_dir, cross):
        """Test that identical data gives identical files."""
        marks = np.array([[0.2, 0.2]])

        first = plot_boundary(boundary_of(cross), temp_dir / "a.svg", marks)
        second = plot_boundary(boundary_of(cross), temp_dir / "b.svg", marks)

        assert first.read_bytes() == second.read_bytes()
