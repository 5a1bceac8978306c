"""Small geometric helpers shared by the numerical modules."""

import math

import numpy as np
from scipy.special import gamma


def unit_ball_volume(n: int) -> float:
    """Lebesgue measure of the unit ball in R^n (omega_n)."""
    return float(math.pi ** (n / 2) / gamma(n / 2 + 1))


def normalize(v: np.ndarray) -> np.ndarray:
    """Return v scaled to unit length along the last axis."""
    v = np.asarray(v, dtype=float)
    norm = np.linalg.norm(v, axis=-1, keepdims=True)
    return v / norm


def orthonormal_frame(nu: np.ndarray) -> np.ndarray:
    """Columns (tau_1, ..., tau_{n-1}, nu) of a right-handed orthonormal frame.

    For nu = e_n the tangent vectors are e_1, ..., e_{n-1}, so local
    coordinates coincide with world coordinates.
    """
    nu = normalize(nu)
    n = nu.shape[0]
    if n == 2:
        tau = np.array([nu[1], -nu[0]])
        return np.column_stack([tau, nu])
    helper = np.zeros(3)
    helper[int(np.argmin(np.abs(nu)))] = 1.0
    tau1 = normalize(helper - (helper @ nu) * nu)
    tau2 = np.cross(nu, tau1)
    return np.column_stack([tau1, tau2, nu])


def to_local(points: np.ndarray, x: np.ndarray, frame: np.ndarray) -> np.ndarray:
    """Coordinates of points in the frame centred at x (last column is height)."""
    return (np.asarray(points, dtype=float) - x) @ frame


def to_world(local: np.ndarray, x: np.ndarray, frame: np.ndarray) -> np.ndarray:
    return np.asarray(local, dtype=float) @ frame.T + x


def dyadic_radii(r0: float, r_min: float) -> list[float]:
    """r0, r0/2, r0/4, ... down to r_min (inclusive); always contains r0."""
    radii = [r0]
    while radii[-1] / 2 >= r_min:
        radii.append(radii[-1] / 2)
    return radii


def angle_between(u: np.ndarray, v: np.ndarray) -> float:
    cos = float(np.clip(normalize(u) @ normalize(v), -1.0, 1.0))
    return math.acos(cos)
