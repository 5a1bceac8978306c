"""Almost-harmonicity of the Lipschitz approximation, tested against a fixed bump dictionary."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from gmtlab.anisotropy import Anisotropy, phi_grad, phi_hess
from gmtlab.regularity.lipschitz import LipschitzApprox
from gmtlab.sets import Cylinder, DiscreteSet, boundary_of, clip_to_region
from gmtlab.utils.geometry import normalize, orthonormal_frame, to_local

# Relative scales and centre fractions of the one-dimensional bumps
PLANAR_SCALES = (0.5, 0.35, 0.25)
PLANAR_CENTRES = (-0.75, -0.25, 0.25, 0.75)
SPATIAL_SCALES = (0.3, 0.25, 0.2)


@dataclass(frozen=True)
class Bump:
    """phi(t) = prod_i b((t_i - c_i) / rho) with b(s) = (1 - s^2)^2 on |s| < 1."""

    centre: np.ndarray
    scale: float

    def gradient(self, t: np.ndarray) -> np.ndarray:
        s = (np.asarray(t, dtype=float) - self.centre) / self.scale
        support = np.abs(s) < 1
        value = np.where(support, (1 - s**2) ** 2, 0.0)
        slope = np.where(support, -4 * s * (1 - s**2), 0.0) / self.scale
        columns = []
        for i in range(s.shape[-1]):
            others = np.prod(np.delete(value, i, axis=-1), axis=-1)
            columns.append(slope[..., i] * others)
        return np.stack(columns, axis=-1)

    def sup_gradient(self, resolution: int = 201) -> float:
        dim = len(self.centre)
        s = np.linspace(-1.0, 1.0, resolution)
        unit = np.stack(np.meshgrid(*([s] * dim), indexing="ij"), axis=-1)
        points = self.centre + self.scale * unit.reshape(-1, dim)
        return float(np.max(np.linalg.norm(self.gradient(points), axis=1)))


@dataclass(frozen=True)
class HarmonicityResidual:
    value: float
    residuals: np.ndarray
    matrix: np.ndarray

    @property
    def worst_index(self) -> int:
        return int(np.argmax(self.residuals))


def bump_dictionary(r: float, dim: int) -> list[Bump]:
    """Twelve bumps compactly supported in B'_r."""
    if dim == 1:
        return [
            Bump(centre=np.array([(r - r * rho) * c]), scale=r * rho)
            for rho in PLANAR_SCALES
            for c in PLANAR_CENTRES
        ]
    bumps = []
    for rho in SPATIAL_SCALES:
        d = 0.5 * (r / np.sqrt(2.0) - r * rho)
        for sx in (-1, 1):
            for sy in (-1, 1):
                bumps.append(Bump(centre=np.array([sx * d, sy * d]), scale=r * rho))
    return bumps


def tangential_matrix(a: Anisotropy, x: np.ndarray, nu: np.ndarray) -> np.ndarray:
    """A_ij = Hess Phi(x, nu) tau_i . tau_j in the frame of nu."""
    tau = orthonormal_frame(nu)[:, :-1]
    return tau.T @ phi_hess(a, x, nu) @ tau


def harmonicity_residual(
    la: LipschitzApprox, a: Anisotropy, x: np.ndarray
) -> HarmonicityResidual:
    """max over the dictionary of |(1/r^{n-1}) integral A grad u . grad phi| / sup |grad phi|."""
    dim = la.n - 1
    matrix = tangential_matrix(a, np.asarray(x, dtype=float), la.nu)
    t = la.grid[la.inside_mask]
    flux = la.gradient()[la.inside_mask] @ matrix.T
    weight = la.pitch**dim / la.r**dim
    residuals = []
    for bump in bump_dictionary(la.r, dim):
        grad_phi = bump.gradient(t)
        sup = bump.sup_gradient()
        integral = float(np.sum(flux * grad_phi)) * weight
        residuals.append(abs(integral) / sup if sup > 0 else 0.0)
    values = np.array(residuals)
    return HarmonicityResidual(value=float(values.max()), residuals=values, matrix=matrix)


def first_variation_residual(
    e: DiscreteSet, a: Anisotropy, x: np.ndarray, r: float, nu: np.ndarray
) -> HarmonicityResidual:
    """Boundary form: (1/r^{n-1}) integral of grad Phi(x, nu_E) . (grad' phi, 0) (nu_E . nu).

    Evaluated on the facets inside C_nu(x, r), subdivided so the bumps are
    resolved, and normalized by sup |grad' phi| like the grid residual.
    """
    x = np.asarray(x, dtype=float)
    nu = normalize(nu)
    frame = orthonormal_frame(nu)
    dim = e.n - 1
    clipped = clip_to_region(boundary_of(e), Cylinder(x, r, nu)).subdivided(r / 200)
    t = to_local(clipped.centroids, x, frame)[:, :dim]
    grad_phi_e = phi_grad(a, clipped.centroids, clipped.normals)
    tangential = grad_phi_e @ frame[:, :dim]
    weight = clipped.measures * (clipped.normals @ nu) / r**dim
    residuals = []
    for bump in bump_dictionary(r, dim):
        grad_phi = bump.gradient(t)
        sup = bump.sup_gradient()
        integral = float(np.sum(np.sum(tangential * grad_phi, axis=1) * weight))
        residuals.append(abs(integral) / sup if sup > 0 else 0.0)
    values = np.array(residuals)
    return HarmonicityResidual(
        value=float(values.max()),
        residuals=values,
        matrix=tangential_matrix(a, x, nu),
    )
