"""Voxel (GMTVOX1) and polygon text file formats."""

from pathlib import Path

import numpy as np

from gmtlab.core.constants import VOXEL_FILE_MAGIC
from gmtlab.sets.polygon import PolyCurveSet
from gmtlab.sets.voxel import VoxelSet


class SetFormatError(ValueError):
    """Raised for malformed set files."""


def _parse_floats(text: str, key: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",")]
    except ValueError as e:
        raise SetFormatError(f"Invalid {key} '{text}'") from e


def read_voxel_bytes(data: bytes, smoothing: float = 2.0) -> VoxelSet:
    """Decode a GMTVOX1 payload; cells are stored first axis fastest."""
    try:
        magic, header, body = data.split(b"\n", 2)
    except ValueError as e:
        raise SetFormatError("Voxel file needs a magic line and a header line") from e
    if magic.decode("ascii", errors="replace").strip() != VOXEL_FILE_MAGIC:
        raise SetFormatError(f"Missing {VOXEL_FILE_MAGIC} magic line")
    fields: dict[str, str] = {}
    for token in header.decode("ascii", errors="replace").split():
        key, sep, value = token.partition("=")
        if not sep:
            raise SetFormatError(f"Malformed header token '{token}'")
        fields[key] = value
    missing = {"n", "dims", "origin", "spacing"} - fields.keys()
    if missing:
        raise SetFormatError(f"Header misses {sorted(missing)}")
    n = int(fields["n"])
    dims = tuple(int(d) for d in _parse_floats(fields["dims"], "dims"))
    origin = _parse_floats(fields["origin"], "origin")
    spacing = _parse_floats(fields["spacing"], "spacing")[0]
    if n not in (2, 3) or len(dims) != n or len(origin) != n:
        raise SetFormatError(f"Inconsistent header '{header.decode()}'")
    count = int(np.prod(dims))
    if len(body) != count:
        raise SetFormatError(f"Expected {count} cell bytes, found {len(body)}")
    raw = np.frombuffer(body, dtype=np.uint8)
    if np.any(raw > 1):
        raise SetFormatError("Cell bytes must be 0x00 or 0x01")
    cells = raw.reshape(dims, order="F").astype(bool)
    return VoxelSet(cells=cells, origin=np.array(origin), spacing=spacing, smoothing=smoothing)


def write_voxel_bytes(v: VoxelSet) -> bytes:
    def join(values) -> str:
        return ",".join(f"{float(x):.17g}" if isinstance(x, float) else str(x) for x in values)

    header = (
        f"n={v.n} dims={join(v.dims)} "
        f"origin={join([float(o) for o in v.origin])} spacing={float(v.spacing):.17g}"
    )
    body = v.cells.astype(np.uint8).tobytes(order="F")
    return f"{VOXEL_FILE_MAGIC}\n{header}\n".encode("ascii") + body


def read_polygon_text(text: str) -> PolyCurveSet:
    """One ``x,y`` vertex per line, blank line between loops, ``#`` comments."""
    loops: list[list[tuple[float, float]]] = [[]]
    for number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            if not raw_line.strip() and loops[-1]:
                loops.append([])
            continue
        try:
            x, y = (float(v) for v in line.split(","))
        except ValueError as e:
            raise SetFormatError(f"Line {number}: expected 'x,y', got '{line}'") from e
        loops[-1].append((x, y))
    return PolyCurveSet.from_loops([np.array(loop) for loop in loops if loop])


def write_polygon_text(s: PolyCurveSet) -> str:
    blocks = [
        "\n".join(f"{x:.17g},{y:.17g}" for x, y in loop) for loop in s.loops
    ]
    return "\n\n".join(blocks) + "\n"


def load_set(path: Path, smoothing: float = 2.0) -> PolyCurveSet | VoxelSet:
    """Dispatch on content: GMTVOX1 magic means voxels, anything else polygon text."""
    data = path.read_bytes()
    if data.startswith(VOXEL_FILE_MAGIC.encode("ascii")):
        return read_voxel_bytes(data, smoothing=smoothing)
    return read_polygon_text(data.decode("utf-8"))


def save_set(path: Path, e: PolyCurveSet | VoxelSet) -> None:
    if isinstance(e, VoxelSet):
        path.write_bytes(write_voxel_bytes(e))
    else:
        path.write_text(write_polygon_text(e), encoding="utf-8")
