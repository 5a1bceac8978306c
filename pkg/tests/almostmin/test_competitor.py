import numpy as np
import pytest

from gmtlab.almostmin import (
    CutMetricError,
    TooManyFreeCellsError,
    brute_force_competitor,
    cut_weights,
    local_optimal_competitor,
)
from gmtlab.sets import VoxelSet


def _random_instance(seed: int) -> VoxelSet:
    rng = np.random.default_rng(seed)
    cells = np.zeros((12, 12), dtype=bool)
    cells[2:-2, 2:-2] = rng.random((8, 8)) < 0.5
    return VoxelSet(cells=cells, origin=np.zeros(2), spacing=1.0, smoothing=0.0)


class TestLocalOptimalCompetitor:
    def test_flat_interface_is_optimal(self, voxel_halfspace, euclidean):
        """Test that a straight interface has no cheaper competitor."""
        spec = cut_weights(euclidean, voxel_halfspace.h, 8)

        competitor = local_optimal_competitor(voxel_halfspace, np.zeros(2), 0.25, spec)

        assert competitor.gap_energy == 0.0
        assert competitor.free_cells > 0
        np.testing.assert_array_equal(competitor.cells.cells, voxel_halfspace.cells)

    def test_isolated_cell_is_removed(self, voxel_speck, voxel_halfspace, euclidean):
        """Test that the competitor deletes an isolated cell inside the ball."""
        spec = cut_weights(euclidean, voxel_speck.h, 8)

        competitor = local_optimal_competitor(voxel_speck, np.zeros(2), 0.25, spec)

        assert competitor.gap > 0
        assert competitor.relative_gap > 0
        np.testing.assert_array_equal(competitor.cells.cells, voxel_halfspace.cells)

    def test_window_must_fit(self, voxel_halfspace, euclidean):
        """Test that the ball plus the neighbourhood reach stays in the domain."""
        spec = cut_weights(euclidean, voxel_halfspace.h, 8)

        with pytest.raises(CutMetricError, match="leaves the voxel domain"):
            local_optimal_competitor(voxel_halfspace, np.array([0.9, 0.0]), 0.25, spec)

    def test_spacing_must_match(self, voxel_halfspace, euclidean):
        """Test that the cut metric is tied to the grid spacing."""
        spec = cut_weights(euclidean, 2 * voxel_halfspace.h, 8)

        with pytest.raises(CutMetricError, match="built for h"):
            local_optimal_competitor(voxel_halfspace, np.zeros(2), 0.25, spec)


class TestBruteForceOracle:
    @pytest.mark.parametrize("seed", range(100))
    def test_matches_min_cut(self, seed, euclidean):
        """Test that exhaustive enumeration agrees with the min cut."""
        v = _random_instance(seed)
        spec = cut_weights(euclidean, 1.0, 8)
        x = np.array([6.0, 6.0])

        brute = brute_force_competitor(v, x, 2.5, spec)
        cut = local_optimal_competitor(v, x, 2.5, spec)

        assert brute.free_cells == 12
        assert brute.energy_after == cut.energy_after
        np.testing.assert_array_equal(brute.cells.cells, cut.cells.cells)

    def test_anisotropic_instance(self, ellipse_form):
        """Test the oracle against the min cut under an anisotropic metric."""
        v = _random_instance(7)
        spec = cut_weights(ellipse_form, 1.0, 16)
        x = np.array([6.0, 6.0])

        brute = brute_force_competitor(v, x, 2.5, spec)
        cut = local_optimal_competitor(v, x, 2.5, spec)

        assert brute.energy_after == cut.energy_after

    def test_enumeration_cap(self, euclidean):
        """Test that enumeration refuses more than the configured number of cells."""
        v = _random_instance(0)
        spec = cut_weights(euclidean, 1.0, 8)

        with pytest.raises(TooManyFreeCellsError, match="capped"):
            brute_force_competitor(v, np.array([6.0, 6.0]), 3.9, spec)
