"""Uniformly elliptic, regular anisotropic integrands Phi(x, nu)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np


class AnisotropyError(ValueError):
    """Raised for invalid integrands or arguments outside their domain."""


class AnisotropyKind(str, Enum):
    EUCLIDEAN = "euclidean"
    QUADRATIC = "quadratic"
    MODULATED = "modulated"


@dataclass(frozen=True, eq=False)
class Modulation:
    """Spatial factor 1 + beta * g(x) with g(x) = (1 - |x - c|^2 / rho^2)^2 on B_rho(c)."""

    beta: float
    center: np.ndarray
    radius: float

    def __post_init__(self) -> None:
        if self.beta < 0:
            raise AnisotropyError(f"Modulation amplitude must be >= 0, got {self.beta}")
        if self.radius <= 0:
            raise AnisotropyError(f"Bump radius must be > 0, got {self.radius}")
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))

    @property
    def bump_lipschitz(self) -> float:
        """Lip(g) = 8 / (3 sqrt(3) rho).

        With s = |x - c|, g'(s) = -4 s (1 - s^2 / rho^2) / rho^2, whose modulus peaks at
        s = rho / sqrt(3).
        """
        return 8.0 / (3.0 * math.sqrt(3.0) * self.radius)

    def bump(self, x: np.ndarray) -> np.ndarray:
        s2 = np.sum((np.asarray(x, dtype=float) - self.center) ** 2, axis=-1) / (
            self.radius**2
        )
        return np.where(s2 < 1.0, (1.0 - s2) ** 2, 0.0)

    def factor(self, x: np.ndarray) -> np.ndarray:
        return 1.0 + self.beta * self.bump(x)


@dataclass(frozen=True, eq=False)
class Anisotropy:
    """Phi(x, nu) = (1 + beta g(x)) sqrt(nu^T A nu) with declared constants (lambda, ell)."""

    kind: AnisotropyKind
    matrix: np.ndarray
    lam: float = 1.0
    ell: float = 0.0
    modulation: Modulation | None = None
    spec: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        matrix = np.asarray(self.matrix, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise AnisotropyError(f"Coefficient matrix must be square, got {matrix.shape}")
        if matrix.shape[0] not in (2, 3):
            raise AnisotropyError(f"Only n in {{2, 3}} is supported, got {matrix.shape[0]}")
        if not np.allclose(matrix, matrix.T, atol=1e-12):
            raise AnisotropyError("Coefficient matrix must be symmetric")
        eigenvalues = np.linalg.eigvalsh(matrix)
        if eigenvalues[0] <= 0:
            raise AnisotropyError("Coefficient matrix must be positive definite")
        if self.lam < 1:
            raise AnisotropyError(f"lambda must be >= 1, got {self.lam}")
        if self.ell < 0:
            raise AnisotropyError(f"ell must be >= 0, got {self.ell}")
        lam2 = self.lam**2
        if eigenvalues[0] < 1 / lam2 - 1e-12 or eigenvalues[-1] > lam2 + 1e-12:
            raise AnisotropyError(
                f"Eigenvalues {eigenvalues.tolist()} outside [1/lambda^2, lambda^2] "
                f"for lambda={self.lam}"
            )
        if self.kind == AnisotropyKind.MODULATED and self.modulation is None:
            raise AnisotropyError("Modulated anisotropy needs a modulation")
        if self.kind == AnisotropyKind.EUCLIDEAN and self.ell != 0:
            raise AnisotropyError("Euclidean anisotropy has ell = 0")
        if self.modulation is not None and self.modulation.center.shape != (
            matrix.shape[0],
        ):
            raise AnisotropyError("Bump center dimension does not match the matrix")
        object.__setattr__(self, "matrix", matrix)

    @property
    def n(self) -> int:
        return int(self.matrix.shape[0])

    def factor(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.modulation is None:
            return np.ones(x.shape[:-1])
        return self.modulation.factor(x)

    def with_constants(self, lam: float, ell: float) -> Anisotropy:
        return Anisotropy(
            kind=self.kind,
            matrix=self.matrix,
            lam=lam,
            ell=ell,
            modulation=self.modulation,
            spec=self.spec,
        )


def _unit(nu: np.ndarray) -> np.ndarray:
    nu = np.asarray(nu, dtype=float)
    norm = np.linalg.norm(nu, axis=-1, keepdims=True)
    if np.any(norm == 0):
        raise AnisotropyError("Phi is undefined at the zero vector")
    return nu / norm


def phi_eval(a: Anisotropy, x: np.ndarray, nu: np.ndarray) -> np.ndarray | float:
    """Phi(x, nu); positively 1-homogeneous in nu. Broadcasts over leading axes."""
    nu = np.asarray(nu, dtype=float)
    if np.any(np.linalg.norm(nu, axis=-1) == 0):
        raise AnisotropyError("Phi is undefined at the zero vector")
    q = np.sqrt(np.einsum("...i,ij,...j->...", nu, a.matrix, nu))
    value = a.factor(np.broadcast_to(x, nu.shape)) * q
    return float(value) if np.ndim(value) == 0 else value


def phi_grad(a: Anisotropy, x: np.ndarray, nu: np.ndarray) -> np.ndarray:
    """Gradient in nu: (1 + beta g) A nu / q; 0-homogeneous."""
    nu = _unit(nu)
    a_nu = nu @ a.matrix
    q = np.sqrt(np.sum(a_nu * nu, axis=-1, keepdims=True))
    factor = a.factor(np.broadcast_to(x, nu.shape))[..., None]
    return factor * a_nu / q


def phi_hess(a: Anisotropy, x: np.ndarray, nu: np.ndarray) -> np.ndarray:
    """Hessian in nu at the unit vector: (1 + beta g)(A / q - (A nu)(A nu)^T / q^3)."""
    nu = _unit(nu)
    a_nu = nu @ a.matrix
    q = np.sqrt(np.sum(a_nu * nu, axis=-1))[..., None, None]
    factor = a.factor(np.broadcast_to(x, nu.shape))[..., None, None]
    outer = a_nu[..., :, None] * a_nu[..., None, :]
    return factor * (a.matrix / q - outer / q**3)
