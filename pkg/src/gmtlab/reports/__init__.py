from gmtlab.reports.plots import plot_boundary, plot_certificate, plot_scan
from gmtlab.reports.tables import (
    Table,
    caccioppoli_table,
    certificate_table,
    density_table,
    height_table,
    lipschitz_grid_table,
    reifenberg_table,
    scan_table,
    singular_table,
    tilt_table,
    validation_table,
    write_table,
)

__all__ = [
    "Table",
    "caccioppoli_table",
    "certificate_table",
    "density_table",
    "height_table",
    "lipschitz_grid_table",
    "plot_boundary",
    "plot_certificate",
    "plot_scan",
    "reifenberg_table",
    "scan_table",
    "singular_table",
    "tilt_table",
    "validation_table",
    "write_table",
]
