"""Static SVG plots written next to the CSV tables."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from gmtlab.almostmin import LambdaCertificate  # noqa: E402
from gmtlab.excess import ScaleScan  # noqa: E402
from gmtlab.sets import BoundaryPatch  # noqa: E402

# Fixed ids and no timestamp, so identical data gives identical files
plt.rcParams["svg.hashsalt"] = "gmtlab"
SVG_METADATA = {"Date": None}


def _save(fig: plt.Figure, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, format=path.suffix.lstrip(".") or "svg", metadata=SVG_METADATA)
    plt.close(fig)
    return path


def plot_scan(scan: ScaleScan, path: Path) -> Path:
    """Excess and flatness against the radius, log-log."""
    fig, ax = plt.subplots(figsize=(5, 4))
    radii = [e.r for e in scan.entries]
    floor = 1e-16
    ax.loglog(radii, [max(e.excess, floor) for e in scan.entries], "o-", label="Exc")
    ax.loglog(
        radii,
        [max(e.flatness, floor) if np.isfinite(e.flatness) else np.nan for e in scan.entries],
        "s--",
        label="flatness",
    )
    ax.set_xlabel("r")
    ax.set_ylabel("value")
    ax.set_title(f"Scale scan at {np.round(scan.x, 4).tolist()}")
    ax.legend()
    return _save(fig, path)


def plot_certificate(certificate: LambdaCertificate, path: Path) -> Path:
    """Gap of every sample against its radius, with lambda_hat as a line."""
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.scatter([s.r for s in certificate.samples], [s.gap for s in certificate.samples], s=8)
    ax.axhline(certificate.lambda_hat, color="tab:red", linewidth=1, label="lambda_hat")
    ax.set_xscale("log")
    ax.set_xlabel("r")
    ax.set_ylabel("gap")
    ax.legend()
    return _save(fig, path)


def plot_boundary(
    patch: BoundaryPatch, path: Path, marks: np.ndarray | None = None
) -> Path:
    """Planar boundary segments, with optional marked points (n=2 only)."""
    fig, ax = plt.subplots(figsize=(5, 5))
    if patch.n == 2 and not patch.is_empty:
        for a, b in patch.vertices:
            ax.plot([a[0], b[0]], [a[1], b[1]], color="tab:blue", linewidth=0.8)
    if marks is not None and len(marks):
        ax.scatter(marks[:, 0], marks[:, 1], color="tab:red", s=16, zorder=3)
    ax.set_aspect("equal", "box")
    return _save(fig, path)
