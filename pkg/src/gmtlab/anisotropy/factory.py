"""Build anisotropies from config strings.

Accepted forms::

    euclidean
    quadratic:a11,a22                   (diagonal)
    quadratic:a11,a12,a22               (upper triangle, n=2)
    quadratic:a11,a12,a21,a22           (full)
    modulated:<base>;beta=<b>;center=<x,y[,z]>;radius=<r>

Any form may append ``;lambda=<l>;ell=<e>`` to declare constants. Without
them the constants are measured and inflated by the configured margin.
"""

from collections.abc import Callable

import numpy as np

from gmtlab.anisotropy.base import (
    Anisotropy,
    AnisotropyError,
    AnisotropyKind,
    Modulation,
)
from gmtlab.anisotropy.validation import measure_constants
from gmtlab.core.logging import get_logger
from gmtlab.core.settings import settings

logger = get_logger(__name__)

_KIND_REGISTRY: dict[str, Callable[[str, int], np.ndarray]] = {}


def register_kind(name: str):
    """Register a builder returning the coefficient matrix for a base kind."""

    def decorator(
        builder: Callable[[str, int], np.ndarray],
    ) -> Callable[[str, int], np.ndarray]:
        _KIND_REGISTRY[name] = builder
        return builder

    return decorator


@register_kind("euclidean")
def _euclidean(args: str, n: int) -> np.ndarray:
    if args:
        raise AnisotropyError(f"euclidean takes no arguments, got '{args}'")
    return np.eye(n)


@register_kind("quadratic")
def _quadratic(args: str, n: int) -> np.ndarray:
    try:
        values = [float(v) for v in args.split(",") if v.strip()]
    except ValueError as e:
        raise AnisotropyError(f"Invalid quadratic coefficients '{args}'") from e
    if len(values) == n:
        return np.diag(values)
    if len(values) == n * (n + 1) // 2:
        matrix = np.zeros((n, n))
        matrix[np.triu_indices(n)] = values
        return matrix + np.triu(matrix, 1).T
    if len(values) == n * n:
        return np.array(values).reshape(n, n)
    raise AnisotropyError(
        f"quadratic needs {n}, {n * (n + 1) // 2} or {n * n} coefficients for n={n}, "
        f"got {len(values)}"
    )


def _parse_vector(text: str, n: int, key: str) -> np.ndarray:
    try:
        vector = np.array([float(v) for v in text.split(",")])
    except ValueError as e:
        raise AnisotropyError(f"Invalid {key} '{text}'") from e
    if vector.shape != (n,):
        raise AnisotropyError(f"{key} must have {n} components, got '{text}'")
    return vector


def _parse_float(options: dict[str, str], key: str) -> float | None:
    if key not in options:
        return None
    try:
        return float(options[key])
    except ValueError as e:
        raise AnisotropyError(f"Invalid {key} '{options[key]}'") from e


def _build_matrix(base: str, n: int) -> tuple[str, np.ndarray]:
    name, _, args = base.partition(":")
    name = name.strip().lower()
    if name not in _KIND_REGISTRY:
        available = ", ".join(sorted(_KIND_REGISTRY))
        raise AnisotropyError(f"Unknown anisotropy '{name}'. Available: {available}")
    return name, _KIND_REGISTRY[name](args.strip(), n)


def parse_anisotropy(spec: str, n: int = 2) -> Anisotropy:
    """Parse a config string into a validated Anisotropy."""
    if n not in (2, 3):
        raise AnisotropyError(f"Only n in {{2, 3}} is supported, got {n}")
    head, *option_tokens = [t.strip() for t in spec.strip().split(";")]
    options: dict[str, str] = {}
    for token in option_tokens:
        if not token:
            continue
        key, sep, value = token.partition("=")
        if not sep:
            raise AnisotropyError(f"Malformed option '{token}' in '{spec}'")
        options[key.strip().lower()] = value.strip()

    modulation = None
    if head.lower().startswith("modulated:"):
        base = head.split(":", 1)[1]
        name, matrix = _build_matrix(base, n)
        missing = {"beta", "center", "radius"} - options.keys()
        if missing:
            raise AnisotropyError(f"modulated needs {sorted(missing)} in '{spec}'")
        modulation = Modulation(
            beta=_parse_float(options, "beta") or 0.0,
            center=_parse_vector(options["center"], n, "center"),
            radius=_parse_float(options, "radius") or 0.0,
        )
        kind = AnisotropyKind.MODULATED
    else:
        name, matrix = _build_matrix(head, n)
        kind = AnisotropyKind(name)

    unknown = options.keys() - {"beta", "center", "radius", "lambda", "ell"}
    if unknown:
        raise AnisotropyError(f"Unknown options {sorted(unknown)} in '{spec}'")

    lam = _parse_float(options, "lambda")
    ell = _parse_float(options, "ell")

    eigenvalues = np.linalg.eigvalsh(matrix)
    if eigenvalues[0] <= 0:
        raise AnisotropyError(f"Coefficient matrix of '{spec}' is not positive definite")
    # Provisional constants satisfying the eigenvalue invariant, replaced below
    provisional = Anisotropy(
        kind=kind,
        matrix=matrix,
        lam=max(1.0, float(np.sqrt(max(eigenvalues[-1], 1 / eigenvalues[0])))),
        ell=0.0,
        modulation=modulation,
        spec=spec,
    )

    if kind == AnisotropyKind.EUCLIDEAN and lam is None:
        lam, ell = 1.0, 0.0
    if lam is None or ell is None:
        lam_min, ell_min = measure_constants(
            provisional, sample_count=settings.numerics.anisotropy_samples
        )
        margin = settings.numerics.anisotropy_margin
        if lam is None:
            lam = max(1.0, lam_min * margin)
        if ell is None:
            ell = ell_min * margin if kind == AnisotropyKind.MODULATED else 0.0
        logger.debug(f"Anisotropy '{spec}': lambda={lam:.6g}, ell={ell:.6g}")

    return provisional.with_constants(lam, ell)
