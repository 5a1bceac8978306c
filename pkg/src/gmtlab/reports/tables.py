"""CSV tables: a header line, a ``# config_hash=`` line, the rows, an optional footer."""

from __future__ import annotations

import csv
import io
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from gmtlab.almostmin import LambdaCertificate, SingularScanReport
from gmtlab.anisotropy import ValidationReport
from gmtlab.anisotropy.validation import TERM_LINES
from gmtlab.excess import ScaleScan
from gmtlab.measures import DensityReport
from gmtlab.regularity import (
    CaccioppoliResult,
    HeightBound,
    LipschitzApprox,
    ReifenbergReport,
    TiltReport,
)

Cell = str | int | float | bool


def format_cell(value: Cell) -> str:
    if isinstance(value, bool | np.bool_):
        return "1" if value else "0"
    if isinstance(value, int | np.integer):
        return str(int(value))
    if isinstance(value, float | np.floating):
        return f"{float(value):.12g}"
    return str(value)


def coordinate_names(prefix: str, n: int) -> list[str]:
    if prefix == "x":
        return ["x", "y", "z"][:n]
    return [f"{prefix}{i + 1}" for i in range(n)]


@dataclass
class Table:
    header: list[str]
    rows: list[list[Cell]] = field(default_factory=list)
    footer: list[list[Cell]] = field(default_factory=list)

    def add(self, *values: Cell | Sequence[float] | np.ndarray) -> None:
        row: list[Cell] = []
        for value in values:
            if isinstance(value, np.ndarray | list | tuple):
                row.extend(float(v) for v in value)
            else:
                row.append(value)
        if len(row) != len(self.header):
            raise ValueError(f"Row has {len(row)} cells, header has {len(self.header)}")
        self.rows.append(row)

    def render(self, config_hash: str) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.header)
        buffer.write(f"# config_hash={config_hash}\n")
        for row in [*self.rows, *self.footer]:
            writer.writerow([format_cell(v) for v in row])
        return buffer.getvalue()

    def column(self, name: str) -> list[Cell]:
        index = self.header.index(name)
        return [row[index] for row in self.rows]


def write_table(path: Path, table: Table, config_hash: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(table.render(config_hash), encoding="utf-8")
    return path


def validation_table(report: ValidationReport) -> Table:
    table = Table(["term", "line", "value", "violated"])
    violated = {v.term for v in report.violations}
    for term, value in report.terms.items():
        table.add(term, TERM_LINES[term], value, term in violated)
    table.footer.append(["LAMBDA_MIN", report.lambda_min, "ELL_MIN", report.ell_min])
    return table


def density_table(report: DensityReport) -> Table:
    table = Table(
        [
            *coordinate_names("x", report.n),
            "r",
            "volume_ratio",
            "perimeter_ratio",
            "inner_ratio",
            "phi_perimeter_ratio",
            "flags",
        ]
    )
    for s in report.samples:
        table.add(
            s.x,
            s.r,
            s.volume_ratio,
            s.perimeter_ratio,
            s.inner_ratio,
            s.phi_perimeter_ratio,
            "|".join(s.flags),
        )
    return table


def scan_table(scan: ScaleScan) -> Table:
    n = len(scan.x)
    table = Table(
        [
            "k",
            "r",
            "excess",
            *coordinate_names("nu", n),
            "flatness",
            "cyl_excess",
            "facet_count",
            "flags",
        ]
    )
    for entry in scan.entries:
        table.add(
            entry.k,
            entry.r,
            entry.excess,
            entry.nu_opt,
            entry.flatness,
            entry.cyl_excess,
            entry.facet_count,
            "|".join(entry.flags),
        )
    return table


def certificate_table(certificate: LambdaCertificate, n: int) -> Table:
    table = Table([*coordinate_names("x", n), "r", "gap"])
    for sample in certificate.samples:
        table.add(sample.x, sample.r, sample.gap)
    table.footer.append(
        ["SKIPPED", certificate.skipped, "CONCLUSIVE", certificate.conclusive]
    )
    table.footer.append(["LAMBDA_HAT", certificate.lambda_hat, "R0", certificate.r0])
    return table


def lipschitz_grid_table(la: LipschitzApprox) -> Table:
    """Node coordinates, height and good flag: the ``u.csv`` dump."""
    dim = la.n - 1
    table = Table([*coordinate_names("t", dim), "u", "good"])
    grid = la.grid[la.inside_mask]
    for t, u, good in zip(
        grid, la.u[la.inside_mask], la.good_mask[la.inside_mask], strict=True
    ):
        table.add(t, float(u), bool(good))
    return table


def reifenberg_table(report: ReifenbergReport) -> Table:
    n = len(report.x)
    table = Table(
        [
            *coordinate_names("x", n),
            "r",
            *coordinate_names("nu", n),
            "distance",
            "separation_ok",
            "skipped",
        ]
    )
    for b in report.subballs:
        table.add(b.y, b.r, b.normal, b.distance, b.separation_ok, b.skipped)
    table.footer.append(
        ["DELTA_MEASURED", report.delta_measured, "SEPARATION_OK", report.separation_ok]
    )
    return table


def height_table(x: np.ndarray, bound: HeightBound) -> Table:
    table = Table([*coordinate_names("x", len(x)), "r", "sup_height", "misplaced_volume"])
    table.add(x, bound.r, bound.sup_height, bound.misplaced_volume)
    return table


def caccioppoli_table(points: np.ndarray, results: list[CaccioppoliResult]) -> Table:
    n = points.shape[1]
    table = Table(
        [
            *coordinate_names("x", n),
            "r",
            "excess",
            "flatness",
            "lambda",
            "ell",
            "ratio",
            "infinite",
            "precondition_ok",
        ]
    )
    for x, c in zip(points, results, strict=True):
        table.add(
            x,
            c.r,
            c.excess,
            c.flatness,
            c.lam,
            c.ell,
            c.ratio,
            c.infinite,
            c.precondition_ok,
        )
    return table


def tilt_table(reports: list[TiltReport]) -> Table:
    n = len(reports[0].x) if reports else 2
    table = Table(
        [
            *coordinate_names("x", n),
            "r",
            "theta",
            *coordinate_names("nu_old", n),
            *coordinate_names("nu_new", n),
            "excess_before",
            "excess_after",
            "decay_ratio",
            "chi",
            "tilt",
            "dirichlet",
        ]
    )
    for t in reports:
        table.add(
            t.x,
            t.r,
            t.theta,
            t.nu_old,
            t.nu_new,
            t.excess_before,
            t.excess_after,
            t.decay_ratio,
            t.chi,
            t.tilt,
            t.dirichlet,
        )
    return table


def singular_table(report: SingularScanReport, n: int) -> Table:
    table = Table([*coordinate_names("x", n), "deepest_trusted_radius", "min_excess"])
    for c in report.candidates:
        table.add(c.x, c.deepest_trusted_radius, c.min_excess)
    table.footer.append(["SCANNED", report.scanned, "FLAGGED", len(report.candidates)])
    return table
