"""Sampling-based check of the ellipticity conditions.

Every quantity appearing in the four lines of the ellipticity conditions is
bounded individually:

    line 1   bounds              1/lambda <= Phi <= lambda
    line 2   spatial_lipschitz   |Phi(x, nu) - Phi(y, nu)| <= ell |x - y|
             gradient_lipschitz  |grad Phi(x, nu) - grad Phi(y, nu)| <= ell |x - y|
    line 3   gradient_norm       |grad Phi| <= lambda
             hessian_norm        |hess Phi| <= lambda
             hessian_lipschitz   |hess Phi(x, nu) - hess Phi(x, nu')| <= lambda |nu - nu'|
    line 4   tangential_convexity  hess Phi e.e >= |e - (e.nu) nu|^2 / lambda
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from gmtlab.anisotropy.base import Anisotropy, phi_eval, phi_grad, phi_hess
from gmtlab.core.logging import get_logger

logger = get_logger(__name__)

FD_STEP = 1e-5
FD_RELATIVE_TOLERANCE = 1e-4
# Relative slack when comparing measured constants to declared ones
COMPARISON_SLACK = 1e-9

TERM_LINES = {
    "bounds": 1,
    "spatial_lipschitz": 2,
    "gradient_lipschitz": 2,
    "gradient_norm": 3,
    "hessian_norm": 3,
    "hessian_lipschitz": 3,
    "tangential_convexity": 4,
}
LAMBDA_TERMS = (
    "bounds",
    "gradient_norm",
    "hessian_norm",
    "hessian_lipschitz",
    "tangential_convexity",
)
ELL_TERMS = ("spatial_lipschitz", "gradient_lipschitz")


@dataclass(frozen=True)
class Violation:
    term: str
    line: int
    required: float
    declared: float
    witness: dict[str, list[float]]


@dataclass(frozen=True)
class ValidationReport:
    sample_count: int
    seed: int
    lambda_min: float
    ell_min: float
    declared_lambda: float
    declared_ell: float
    terms: dict[str, float]
    gradient_fd_error: float
    violations: list[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations and self.gradient_fd_error <= FD_RELATIVE_TOLERANCE

    @property
    def binding_term(self) -> str:
        """Term that fixes lambda_min."""
        return max(LAMBDA_TERMS, key=lambda t: self.terms[t])


def _sample_unit(rng: np.random.Generator, count: int, n: int) -> np.ndarray:
    v = rng.standard_normal((count, n))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _sample_points(
    a: Anisotropy, rng: np.random.Generator, count: int
) -> np.ndarray:
    if a.modulation is None:
        return rng.uniform(-1.0, 1.0, size=(count, a.n))
    m = a.modulation
    return m.center + rng.uniform(-1.25 * m.radius, 1.25 * m.radius, size=(count, a.n))


def _argmax(values: np.ndarray) -> int:
    return int(np.argmax(values))


def validate_ellipticity(
    a: Anisotropy, sample_count: int = 10_000, seed: int = 0
) -> ValidationReport:
    """Measure the tightest (lambda, ell) on a seeded sample and compare to the declared ones."""
    if sample_count < 1:
        raise ValueError(f"sample_count must be >= 1, got {sample_count}")
    rng = np.random.default_rng(seed)
    n = a.n
    x = _sample_points(a, rng, sample_count)
    nu = _sample_unit(rng, sample_count, n)
    e = _sample_unit(rng, sample_count, n)

    # y close to x resolves the local Lipschitz quotient of the bump
    spread = (a.modulation.radius if a.modulation else 1.0) * 1e-4
    y = x + spread * _sample_unit(rng, sample_count, n)

    # nu' at a spread of distances from nu
    scales = 10.0 ** rng.uniform(-3.0, 0.0, size=(sample_count, 1))
    nu_prime = nu + scales * _sample_unit(rng, sample_count, n)
    nu_prime /= np.linalg.norm(nu_prime, axis=1, keepdims=True)

    phi = np.asarray(phi_eval(a, x, nu))
    grad = phi_grad(a, x, nu)
    hess = phi_hess(a, x, nu)

    terms: dict[str, np.ndarray] = {}
    terms["bounds"] = np.maximum(phi, 1.0 / phi)

    dxy = np.linalg.norm(x - y, axis=1)
    terms["spatial_lipschitz"] = np.abs(phi - np.asarray(phi_eval(a, y, nu))) / dxy
    terms["gradient_lipschitz"] = np.linalg.norm(grad - phi_grad(a, y, nu), axis=1) / dxy

    terms["gradient_norm"] = np.linalg.norm(grad, axis=1)
    terms["hessian_norm"] = np.linalg.norm(hess, ord=2, axis=(1, 2))
    dnu = np.linalg.norm(nu - nu_prime, axis=1)
    terms["hessian_lipschitz"] = (
        np.linalg.norm(hess - phi_hess(a, x, nu_prime), ord=2, axis=(1, 2)) / dnu
    )

    e_perp = e - np.sum(e * nu, axis=1, keepdims=True) * nu
    perp2 = np.sum(e_perp**2, axis=1)
    quad = np.einsum("ki,kij,kj->k", e, hess, e)
    active = perp2 > 1e-12
    convexity = np.zeros(sample_count)
    convexity[active] = perp2[active] / np.maximum(quad[active], 1e-300)
    terms["tangential_convexity"] = convexity

    fd_error = _gradient_fd_error(a, x[: min(sample_count, 500)], nu[: min(sample_count, 500)])

    measured = {term: float(np.max(values)) for term, values in terms.items()}
    lambda_min = max(1.0, *(measured[t] for t in LAMBDA_TERMS))
    ell_min = max(measured[t] for t in ELL_TERMS)

    violations: list[Violation] = []
    for term, values in terms.items():
        declared = a.lam if term in LAMBDA_TERMS else a.ell
        if measured[term] > declared * (1 + COMPARISON_SLACK) + COMPARISON_SLACK:
            k = _argmax(values)
            witness = {
                "x": x[k].tolist(),
                "y": y[k].tolist(),
                "nu": nu[k].tolist(),
                "nu_prime": nu_prime[k].tolist(),
                "e": e[k].tolist(),
            }
            violations.append(
                Violation(
                    term=term,
                    line=TERM_LINES[term],
                    required=measured[term],
                    declared=declared,
                    witness=witness,
                )
            )
            logger.debug(
                f"Ellipticity line {TERM_LINES[term]} ({term}) violated: "
                f"{measured[term]:.6g} > {declared:.6g}"
            )

    return ValidationReport(
        sample_count=sample_count,
        seed=seed,
        lambda_min=lambda_min,
        ell_min=ell_min,
        declared_lambda=a.lam,
        declared_ell=a.ell,
        terms=measured,
        gradient_fd_error=fd_error,
        violations=violations,
    )


def _gradient_fd_error(a: Anisotropy, x: np.ndarray, nu: np.ndarray) -> float:
    """Worst relative gap between the closed-form gradient and central differences."""
    grad = phi_grad(a, x, nu)
    fd = np.zeros_like(grad)
    for i in range(a.n):
        step = np.zeros(a.n)
        step[i] = FD_STEP
        fd[:, i] = (
            np.asarray(phi_eval(a, x, nu + step)) - np.asarray(phi_eval(a, x, nu - step))
        ) / (2 * FD_STEP)
    scale = np.maximum(np.linalg.norm(grad, axis=1), 1e-12)
    return float(np.max(np.linalg.norm(fd - grad, axis=1) / scale))


def measure_constants(
    a: Anisotropy, sample_count: int = 10_000, seed: int = 0
) -> tuple[float, float]:
    report = validate_ellipticity(a, sample_count=sample_count, seed=seed)
    return report.lambda_min, report.ell_min
