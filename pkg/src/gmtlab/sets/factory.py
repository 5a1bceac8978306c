"""Shape generators addressed by config strings such as ``ball:R=1``.

``h=<spacing>`` rasterizes any planar shape into voxels; ``n=3`` asks for the
3D voxel version of ``ball`` and ``halfspace``. ``noisy`` wraps another spec:
``noisy:base=ball:R=1;p=0.05;seed=7``; the keys ``p``, ``seed`` and ``h``
belong to the noise, every other option to the base shape.
"""

from __future__ import annotations

from collections.abc import Callable
from fractions import Fraction

import numpy as np
import shapely
from scipy.spatial import HalfspaceIntersection

from gmtlab.anisotropy import Anisotropy, parse_anisotropy, phi_eval
from gmtlab.core.logging import get_logger
from gmtlab.sets.polygon import PolyCurveSet
from gmtlab.sets.volume import DiscreteSet
from gmtlab.sets.voxel import VoxelSet, rasterize

logger = get_logger(__name__)

NOISE_KEYS = {"p", "seed", "h"}


class GeneratorSpecError(ValueError):
    """Raised for malformed or unknown generator specs."""


Options = dict[str, str]
Generator = Callable[[Options, Anisotropy | None, float], DiscreteSet]
_GENERATOR_REGISTRY: dict[str, Generator] = {}


def register_generator(name: str):
    """Decorator adding a shape builder to the registry."""

    def decorator(builder: Generator) -> Generator:
        _GENERATOR_REGISTRY[name] = builder
        return builder

    return decorator


def available_generators() -> list[str]:
    return sorted([*_GENERATOR_REGISTRY, "noisy"])


def _number(options: Options, key: str, default: float) -> float:
    if key not in options:
        return default
    try:
        return float(Fraction(options[key]))
    except (ValueError, ZeroDivisionError) as e:
        raise GeneratorSpecError(f"Invalid number for '{key}': '{options[key]}'") from e


def _vector(options: Options, key: str, default: tuple[float, ...]) -> np.ndarray:
    if key not in options:
        return np.array(default, dtype=float)
    try:
        return np.array([float(Fraction(v)) for v in options[key].split(",")])
    except (ValueError, ZeroDivisionError) as e:
        raise GeneratorSpecError(f"Invalid vector for '{key}': '{options[key]}'") from e


def _split(spec: str) -> tuple[str, list[str]]:
    name, _, rest = spec.strip().partition(":")
    tokens = [t.strip() for t in rest.split(";") if t.strip()]
    return name.strip().lower(), tokens


def _options(tokens: list[str]) -> Options:
    options: Options = {}
    for token in tokens:
        key, sep, value = token.partition("=")
        if not sep:
            raise GeneratorSpecError(f"Malformed option '{token}'")
        options[key.strip()] = value.strip()
    return options


def generate(
    spec: str, anisotropy: Anisotropy | None = None, smoothing: float = 2.0
) -> DiscreteSet:
    """Build the set described by spec."""
    name, tokens = _split(spec)
    if name == "noisy":
        return _noisy(tokens, anisotropy, smoothing)
    if name not in _GENERATOR_REGISTRY:
        raise GeneratorSpecError(
            f"Unknown shape '{name}'. Available: {', '.join(available_generators())}"
        )
    options = _options(tokens)
    shape = _GENERATOR_REGISTRY[name](options, anisotropy, smoothing)
    if isinstance(shape, PolyCurveSet) and "h" in options:
        return rasterize(shape, _number(options, "h", 0.0), smoothing=smoothing)
    return shape


def _polygon_from_shapely(polygon: shapely.Polygon) -> PolyCurveSet:
    oriented = shapely.geometry.polygon.orient(polygon, sign=1.0)
    return PolyCurveSet(loops=(np.asarray(oriented.exterior.coords)[:-1],))


def _implicit_voxels(
    inside: Callable[[np.ndarray], np.ndarray],
    lo: np.ndarray,
    hi: np.ndarray,
    h: float,
    smoothing: float,
    margin: int = 2,
) -> VoxelSet:
    i_lo = np.floor(lo / h).astype(int) - margin
    i_hi = np.ceil(hi / h).astype(int) + margin
    grid = VoxelSet(
        cells=np.zeros(tuple(i_hi - i_lo), dtype=bool),
        origin=i_lo * h,
        spacing=h,
        smoothing=smoothing,
    )
    cells = inside(grid.centers())
    interior = np.zeros_like(cells)
    interior[(slice(margin, -margin),) * grid.n] = True
    return grid.with_cells(cells & interior)


@register_generator("halfspace")
def _halfspace(options: Options, anisotropy: Anisotropy | None, smoothing: float) -> DiscreteSet:
    n = int(_number(options, "n", 2))
    normal = _vector(options, "normal", (0.0,) * (n - 1) + (1.0,))
    if normal.shape != (n,) or np.linalg.norm(normal) == 0:
        raise GeneratorSpecError(f"halfspace normal must be a nonzero {n}-vector")
    normal = normal / np.linalg.norm(normal)
    offset = _number(options, "offset", 0.0)
    size = _number(options, "size", 2.0)
    if n == 3:
        h = _number(options, "h", 1 / 32)
        return _implicit_voxels(
            lambda c: c @ normal <= offset, -np.full(3, size), np.full(3, size), h, smoothing
        )
    tangent = np.array([-normal[1], normal[0]])
    base = offset * normal
    far = 8 * size
    half_plane = shapely.Polygon(
        [
            base - far * tangent,
            base + far * tangent,
            base + far * tangent - far * normal,
            base - far * tangent - far * normal,
        ]
    )
    clipped = shapely.box(-size, -size, size, size).intersection(half_plane)
    if clipped.is_empty:
        raise GeneratorSpecError("halfspace misses the bounding box")
    return _polygon_from_shapely(clipped)


@register_generator("ball")
def _ball(options: Options, anisotropy: Anisotropy | None, smoothing: float) -> DiscreteSet:
    n = int(_number(options, "n", 2))
    radius = _number(options, "R", 1.0)
    center = _vector(options, "center", (0.0,) * n)
    if radius <= 0 or center.shape != (n,):
        raise GeneratorSpecError("ball needs R > 0 and an n-dimensional center")
    if n == 3:
        h = _number(options, "h", 1 / 32)
        return _implicit_voxels(
            lambda c: np.sum((c - center) ** 2, axis=-1) < radius**2,
            center - radius,
            center + radius,
            h,
            smoothing,
        )
    m = int(_number(options, "m", 2048))
    if m < 3:
        raise GeneratorSpecError("ball needs m >= 3 vertices")
    angles = 2 * np.pi * np.arange(m) / m
    loop = center + radius * np.column_stack([np.cos(angles), np.sin(angles)])
    return PolyCurveSet(loops=(loop,))


@register_generator("wulff")
def _wulff(options: Options, anisotropy: Anisotropy | None, smoothing: float) -> DiscreteSet:
    """Convex body {x : x.nu <= scale Phi(0, nu) for all nu}, 720 directions."""
    a = anisotropy or parse_anisotropy("euclidean")
    if a.n != 2:
        raise GeneratorSpecError("wulff shapes are built for n=2")
    count = int(_number(options, "directions", 720))
    scale = _number(options, "scale", 1.0)
    angles = 2 * np.pi * np.arange(count) / count
    normals = np.column_stack([np.cos(angles), np.sin(angles)])
    support = scale * np.asarray(phi_eval(a, np.zeros((count, 2)), normals))
    halfspaces = np.column_stack([normals, -support])
    vertices = HalfspaceIntersection(halfspaces, np.zeros(2)).intersections
    order = np.argsort(np.arctan2(vertices[:, 1], vertices[:, 0]))
    return _polygon_from_shapely(shapely.Polygon(vertices[order]))


def _semicircle(center: np.ndarray, radius: float, start: float, points: int) -> list:
    angles = start + np.pi * np.arange(points + 1) / points
    return list(center + radius * np.column_stack([np.cos(angles), np.sin(angles)]))


@register_generator("cross")
def _cross(options: Options, anisotropy: Anisotropy | None, smoothing: float) -> DiscreteSet:
    """Plus shape with four reflex corners at (+-w/2, +-w/2)."""
    w = _number(options, "w", 0.4)
    arm = _number(options, "L", 1.0)
    caps = options.get("caps", "round")
    if not 0 < w / 2 < arm:
        raise GeneratorSpecError("cross needs 0 < w/2 < L")
    if caps not in ("round", "square"):
        raise GeneratorSpecError(f"cross caps must be round or square, got '{caps}'")
    c = w / 2
    points: list = []
    # Arms counter-clockwise: +x, +y, -x, -y; each arm is a tip followed by the next reflex corner
    for k in range(4):
        rot = np.array(
            [[np.cos(k * np.pi / 2), -np.sin(k * np.pi / 2)],
             [np.sin(k * np.pi / 2), np.cos(k * np.pi / 2)]]
        )
        if caps == "round":
            cap_points = int(_number(options, "cap_points", 32))
            tip = _semicircle(np.array([arm, 0.0]), c, -np.pi / 2, cap_points)
        else:
            tip = [np.array([arm, -c]), np.array([arm, c])]
        corner = np.array([c, c])
        points.extend(rot @ p for p in [*tip, corner])
    return PolyCurveSet(loops=(np.round(np.array(points), 15),))


@register_generator("graph")
def _graph(options: Options, anisotropy: Anisotropy | None, smoothing: float) -> DiscreteSet:
    """Subgraph {(t, y) : |t| <= L, -depth <= y <= f(t)}."""
    kind = options.get("f", "linear")
    half = _number(options, "L", 2.0)
    depth = _number(options, "depth", 2.0)
    if kind == "linear":
        slope = _number(options, "s", 0.1)
        offset = _number(options, "c", 0.0)
        ts = np.array([half, -half])
        ys = slope * ts + offset
    elif kind == "sine":
        amp = _number(options, "amp", 0.1)
        freq = _number(options, "freq", 3.0)
        samples = int(_number(options, "samples", 2001))
        ts = np.linspace(half, -half, samples)
        ys = amp * np.sin(freq * ts)
    else:
        raise GeneratorSpecError(f"graph f must be linear or sine, got '{kind}'")
    if np.min(ys) <= -depth:
        raise GeneratorSpecError("graph dips below its bottom edge")
    loop = [np.array([-half, -depth]), np.array([half, -depth])]
    loop.extend(np.column_stack([ts, ys]))
    return PolyCurveSet(loops=(np.array(loop),))


def _noisy(tokens: list[str], anisotropy: Anisotropy | None, smoothing: float) -> VoxelSet:
    noise_tokens = [t for t in tokens if t.partition("=")[0].strip() in NOISE_KEYS]
    base_tokens = [t for t in tokens if t not in noise_tokens]
    if not base_tokens or not base_tokens[0].startswith("base="):
        raise GeneratorSpecError("noisy needs base=<spec> as its first option")
    base_spec = ";".join([base_tokens[0].partition("=")[2], *base_tokens[1:]])
    noise = _options(noise_tokens)
    p = _number(noise, "p", 0.05)
    seed = int(_number(noise, "seed", 0))
    h = _number(noise, "h", 1 / 64)
    if not 0 <= p <= 1:
        raise GeneratorSpecError(f"flip rate must lie in [0, 1], got {p}")
    base = generate(base_spec, anisotropy=anisotropy, smoothing=smoothing)
    voxels = base if isinstance(base, VoxelSet) else rasterize(base, h, smoothing=smoothing)
    return add_noise(voxels, p, seed)


def add_noise(v: VoxelSet, p: float, seed: int) -> VoxelSet:
    """Flip each cell with probability p, leaving a two-cell border untouched."""
    rng = np.random.default_rng(seed)
    flips = rng.random(v.dims) < p
    interior = np.zeros(v.dims, dtype=bool)
    interior[(slice(2, -2),) * v.n] = True
    logger.debug(f"noisy: flipping {np.count_nonzero(flips & interior)} cells")
    return v.with_cells(v.cells ^ (flips & interior))
