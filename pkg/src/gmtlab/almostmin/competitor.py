"""Best competitor inside a ball: exact discrete optimum by min cut, or by enumeration."""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx
import numpy as np
from networkx.algorithms.flow import boykov_kolmogorov

from gmtlab.almostmin.cut_metric import CutGraphSpec, CutMetricError
from gmtlab.core.constants import CUT_WEIGHT_RESOLUTION
from gmtlab.core.logging import get_logger
from gmtlab.core.settings import settings
from gmtlab.sets import VoxelSet

logger = get_logger(__name__)

# Codes enumerated per batch in the brute-force oracle
ENUMERATION_BATCH = 1 << 14


class TooManyFreeCellsError(ValueError):
    """Raised when exhaustive enumeration would need too many assignments."""


@dataclass(frozen=True, eq=False)
class Competitor:
    """Optimal F with F = E off the free cells.

    Energies are integers in units of 1 / ``scale``; ``gap`` is
    (P(E, W) - P(F, W)) / r^{n-1} in length units.
    """

    cells: VoxelSet
    x: np.ndarray
    r: float
    energy_before: int
    energy_after: int
    scale: float
    free_cells: int

    @property
    def gap_energy(self) -> float:
        return (self.energy_before - self.energy_after) / self.scale

    @property
    def gap(self) -> float:
        return max(0.0, self.gap_energy) / self.r ** (self.cells.n - 1)

    @property
    def relative_gap(self) -> float:
        """(P(E, W) - P(F, W)) / P(F, W), the multiplicative form of the deficit."""
        if self.energy_after <= 0:
            return 0.0
        return max(0, self.energy_before - self.energy_after) / self.energy_after


@dataclass(frozen=True, eq=False)
class CutProblem:
    """Edges touching the free cells, with integer weights.

    ``a`` and ``b`` index flattened cells; every edge with a free endpoint
    appears once. ``unary`` holds the integer fidelity weight of each free
    cell (zero for pure perimeter problems).
    """

    free: np.ndarray
    a: np.ndarray
    b: np.ndarray
    weights: np.ndarray
    unary: np.ndarray
    scale: float

    def energy(self, flat_cells: np.ndarray, reference: np.ndarray) -> int:
        pairwise = int(self.weights[flat_cells[self.a] != flat_cells[self.b]].sum())
        fidelity = int(self.unary[flat_cells[self.free] != reference[self.free]].sum())
        return pairwise + fidelity


def build_problem(
    v: VoxelSet,
    free_mask: np.ndarray,
    spec: CutGraphSpec,
    unary: float = 0.0,
) -> CutProblem:
    """Collect the edges with at least one free endpoint and quantize all weights."""
    if not np.isclose(spec.h, v.h):
        raise CutMetricError(f"Cut metric built for h={spec.h}, set has h={v.h}")
    shape = np.array(v.dims)
    free_index = np.argwhere(free_mask)
    centers = v.centers()
    a_parts, b_parts, w_parts = [], [], []
    for k, offset in enumerate(spec.offsets):
        for sign in (1, -1):
            neighbour = free_index + sign * offset
            if np.any(neighbour < 0) or np.any(neighbour >= shape):
                raise CutMetricError("Cut neighbourhood leaves the voxel domain")
            if sign < 0:
                # free-free edges were already added from their lower endpoint
                keep = ~free_mask[tuple(neighbour.T)]
                source, neighbour = free_index[keep], neighbour[keep]
            else:
                source = free_index
            midpoints = (centers[tuple(source.T)] + centers[tuple(neighbour.T)]) / 2
            a_parts.append(np.ravel_multi_index(tuple(source.T), v.dims))
            b_parts.append(np.ravel_multi_index(tuple(neighbour.T), v.dims))
            w_parts.append(spec.edge_weights(k, midpoints))
    a = np.concatenate(a_parts) if a_parts else np.zeros(0, dtype=int)
    b = np.concatenate(b_parts) if b_parts else np.zeros(0, dtype=int)
    w = np.concatenate(w_parts) if w_parts else np.zeros(0)
    scale = CUT_WEIGHT_RESOLUTION / float(w.max()) if len(w) else 1.0
    weights = np.rint(w * scale).astype(np.int64)
    free = np.ravel_multi_index(tuple(free_index.T), v.dims)
    unary_weights = np.zeros(len(free), dtype=np.int64)
    if unary > 0:
        cap = int(weights.sum()) + 1
        unary_weights[:] = min(int(round(unary * scale)), cap)
    return CutProblem(
        free=free, a=a, b=b, weights=weights, unary=unary_weights, scale=scale
    )


def _add_capacity(graph: nx.DiGraph, u, v, capacity: int) -> None:
    if capacity <= 0:
        return
    if graph.has_edge(u, v):
        graph[u][v]["capacity"] += capacity
    else:
        graph.add_edge(u, v, capacity=capacity)


def solve_min_cut(problem: CutProblem, flat_cells: np.ndarray) -> np.ndarray:
    """Minimal optimal membership of the free cells; ties go to the complement.

    The source side of the graph is the complement of F, and the partition
    returned by networkx keeps every node that cannot reach the sink on the
    source side, so F is the smallest minimizer.
    """
    free_set = set(problem.free.tolist())
    graph = nx.DiGraph()
    graph.add_nodes_from(["s", "t", *problem.free.tolist()])
    edges = zip(
        problem.a.tolist(), problem.b.tolist(), problem.weights.tolist(), strict=True
    )
    for p, q, w in edges:
        p_free, q_free = p in free_set, q in free_set
        if p_free and q_free:
            _add_capacity(graph, p, q, w)
            _add_capacity(graph, q, p, w)
            continue
        cell, fixed = (p, q) if p_free else (q, p)
        if flat_cells[fixed]:
            _add_capacity(graph, cell, "t", w)
        else:
            _add_capacity(graph, "s", cell, w)
    members = flat_cells[problem.free].tolist()
    for cell, w, member in zip(
        problem.free.tolist(), problem.unary.tolist(), members, strict=True
    ):
        if member:
            _add_capacity(graph, cell, "t", w)
        else:
            _add_capacity(graph, "s", cell, w)
    _, (outside, _) = nx.minimum_cut(graph, "s", "t", flow_func=boykov_kolmogorov)
    return np.array([cell not in outside for cell in problem.free.tolist()], dtype=bool)


def _free_cells(v: VoxelSet, x: np.ndarray, r: float) -> np.ndarray:
    """Cells lying entirely inside B_r(x)."""
    distance = np.linalg.norm(v.centers() - x, axis=-1)
    return distance <= r - v.h * np.sqrt(v.n) / 2


def _check_window(v: VoxelSet, x: np.ndarray, r: float) -> None:
    lo, hi = v.bounds()
    reach = r + 2 * v.h
    if np.any(x - reach < lo) or np.any(x + reach > hi):
        raise CutMetricError(
            f"Window B_{reach:.4g}({x.tolist()}) leaves the voxel domain"
        )


def local_optimal_competitor(
    e: VoxelSet, x: np.ndarray, r: float, spec: CutGraphSpec
) -> Competitor:
    """Global minimizer of the cut perimeter among F with F = E outside B_r(x)."""
    x = np.asarray(x, dtype=float)
    _check_window(e, x, r)
    free_mask = _free_cells(e, x, r)
    problem = build_problem(e, free_mask, spec)
    flat = e.cells.reshape(-1)
    before = problem.energy(flat, flat)
    if not len(problem.free):
        return Competitor(e, x, r, before, before, problem.scale, 0)
    result = flat.copy()
    result[problem.free] = solve_min_cut(problem, flat)
    after = problem.energy(result, flat)
    return Competitor(
        cells=e.with_cells(result.reshape(e.dims)),
        x=x,
        r=r,
        energy_before=before,
        energy_after=after,
        scale=problem.scale,
        free_cells=len(problem.free),
    )


def brute_force_competitor(
    e: VoxelSet, x: np.ndarray, r: float, spec: CutGraphSpec
) -> Competitor:
    """Enumerate every assignment of the free cells; keep the smallest minimizer."""
    x = np.asarray(x, dtype=float)
    _check_window(e, x, r)
    free_mask = _free_cells(e, x, r)
    k = int(np.count_nonzero(free_mask))
    limit = settings.numerics.brute_force_max_cells
    if k > limit:
        raise TooManyFreeCellsError(f"{k} free cells; enumeration is capped at {limit}")
    problem = build_problem(e, free_mask, spec)
    flat = e.cells.reshape(-1)
    before = problem.energy(flat, flat)
    if k == 0:
        return Competitor(e, x, r, before, before, problem.scale, 0)

    position = {cell: i for i, cell in enumerate(problem.free.tolist())}

    def column(cells: np.ndarray) -> np.ndarray:
        # Columns 0..k-1 are the free cells, k and k+1 the constants False and True
        return np.array(
            [position.get(c, k + int(flat[c])) for c in cells.tolist()], dtype=int
        )

    a_col, b_col = column(problem.a), column(problem.b)
    best_energy: int | None = None
    best_code = 0
    bit_values = 1 << np.arange(k, dtype=np.int64)
    for start in range(0, 1 << k, ENUMERATION_BATCH):
        codes = np.arange(start, min(start + ENUMERATION_BATCH, 1 << k), dtype=np.int64)
        bits = (codes[:, None] & bit_values) != 0
        constants = np.tile([False, True], (len(codes), 1))
        extended = np.concatenate([bits, constants], axis=1)
        differ = extended[:, a_col] != extended[:, b_col]
        energies = differ.astype(np.int64) @ problem.weights
        low = int(energies.min())
        minimizers = codes[energies == low]
        batch_code = int(np.bitwise_and.reduce(minimizers))
        if best_energy is None or low < best_energy:
            best_energy, best_code = low, batch_code
        elif low == best_energy:
            best_code &= batch_code
    result = flat.copy()
    result[problem.free] = (best_code & bit_values) != 0
    return Competitor(
        cells=e.with_cells(result.reshape(e.dims)),
        x=x,
        r=r,
        energy_before=before,
        energy_after=problem.energy(result, flat),
        scale=problem.scale,
        free_cells=k,
    )
