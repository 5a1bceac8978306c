"""certify: sampled Lambda certificate on the voxel set."""

from __future__ import annotations

import numpy as np

from gmtlab.almostmin import (
    LambdaCertificate,
    certify_point,
    cut_weights,
    default_radii,
    with_window_room,
)
from gmtlab.cli.core.context import Context
from gmtlab.cli.theme import console
from gmtlab.core.constants import EXIT_OK, EXIT_THRESHOLD_VIOLATED
from gmtlab.core.settings import settings
from gmtlab.reports import certificate_table, plot_certificate
from gmtlab.sets import VoxelSet, boundary_of, sample_boundary_points


class CertifyHandler:
    def __init__(self, context: Context) -> None:
        self.context = context

    async def certify(self, v: VoxelSet) -> LambdaCertificate:
        """Gaps over every (centre, radius), centres spread over worker threads."""
        c = self.context.config
        if c.x is not None:
            points = np.atleast_2d(np.asarray(c.x, dtype=float))
        else:
            points = sample_boundary_points(boundary_of(v), stride=c.stride, seed=c.seed)
        radii = default_radii(v, c.r0) if c.radii is None else list(c.radii)
        v = with_window_room(v, points, max(radii, default=0.0))
        spec = cut_weights(self.context.anisotropy, v.h, c.order)
        results = await self.context.map(
            lambda x: certify_point(v, spec, x, radii, c.alpha), list(points)
        )
        return LambdaCertificate(
            samples=[s for samples, _ in results for s in samples],
            r0=c.r0,
            alpha=c.alpha,
            metrication_bound=spec.metrication_bound,
            order=c.order,
            skipped=sum(skipped for _, skipped in results),
        )

    async def report(self, certificate: LambdaCertificate) -> bool:
        c = self.context.config
        await self.context.write_table(
            "certificate.csv", certificate_table(certificate, c.n)
        )
        await self.context.write_plot(
            plot_certificate, f"certificate.{settings.cli.plot_format}", certificate
        )
        console.print(f"[muted]{certificate.metrication_note}[/muted]")
        console.print(f"[muted]{certificate.note}[/muted]")
        if certificate.skipped:
            console.print_warning(
                f"{certificate.skipped} windows skipped (outside the domain)"
            )
        if not certificate.conclusive:
            console.print_error(
                f"Certificate inconclusive: {len(certificate.samples)} samples, "
                f"{certificate.skipped} skipped windows"
            )
        passed = certificate.conclusive and certificate.lambda_hat <= c.lambda_threshold
        console.print_verdict(
            passed,
            f"lambda_hat {certificate.lambda_hat:.6g} "
            f"(multiplicative {certificate.relative_lambda_hat:.4g}, "
            f"threshold {c.lambda_threshold:.4g}, {len(certificate.samples)} samples)",
        )
        return passed

    async def handle(self) -> int:
        certificate = await self.certify(self.context.voxels())
        passed = await self.report(certificate)
        return EXIT_OK if passed else EXIT_THRESHOLD_VIOLATED
