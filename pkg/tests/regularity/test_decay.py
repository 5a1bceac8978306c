import numpy as np
import pytest

from gmtlab.almostmin import certify_lambda, polish
from gmtlab.core.constants import SMALL_EXCESS_THRESHOLD
from gmtlab.excess import multiscale_scan, spherical_excess
from gmtlab.sets import generate, nearest_boundary_point


@pytest.mark.slow
class TestExcessDecay:
    def test_polished_circle_decays_across_dyadic_radii(self, euclidean):
        """Test sup_k Exc(theta^k r0) <= 10 (Exc(r0) + lambda_hat) on a polished noisy circle."""
        r0 = 0.125
        noisy = generate("noisy:base=ball:R=0.5;p=0.02;seed=3;h=0.0078125")
        polished = polish(noisy, 0.1, euclidean)
        x = nearest_boundary_point(polished, np.array([0.5, 0.0]))

        initial = spherical_excess(polished, x, r0).excess
        certificate = certify_lambda(polished, euclidean, r0, points=x[None, :])
        scan = multiscale_scan(polished, x, theta=0.5, r0=r0, k_max=3)

        assert initial <= SMALL_EXCESS_THRESHOLD
        assert certificate.conclusive
        # the deepest radius is two cells wide and may fall below the facet floor
        assert len(scan.trusted_entries) >= 3
        assert scan.sup_trusted_excess <= 10 * (initial + certificate.lambda_hat)
