"""Matching primitives used by the schedulers.

Public functions take a graph as a mapping ``{(v, u): weight}`` (or any
iterable of ``(v, u)`` pairs where weights are irrelevant) and return a
``frozenset`` of ``(v, u)`` pairs.  The ``*_matrix`` helpers work on dense
0-based ``int64`` matrices and are what the solvers call in their loops.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Union

import numpy as np

from . import kernels

Matching = frozenset
Graph = Union[Mapping[tuple[int, int], int], Iterable[tuple[int, int]]]


class DecompositionError(RuntimeError):
    """A regularized graph had no perfect matching; regularize() is broken."""


def _as_weight_map(graph: Graph) -> dict[tuple[int, int], int]:
    if isinstance(graph, Mapping):
        return {(int(v), int(u)): int(w) for (v, u), w in graph.items()}
    return {(int(v), int(u)): 1 for v, u in graph}


def _compact(graph: Mapping[tuple[int, int], int]):
    """Dense matrix over the ids that actually occur, plus the id lists."""
    rows = sorted({v for v, _ in graph})
    cols = sorted({u for _, u in graph})
    ri = {v: i for i, v in enumerate(rows)}
    ci = {u: j for j, u in enumerate(cols)}
    mat = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for (v, u), w in graph.items():
        mat[ri[v], ci[u]] = w
    return mat, rows, cols


def _pairs(match_row: np.ndarray, rows, cols) -> frozenset:
    return frozenset((rows[i], cols[j]) for i, j in enumerate(match_row.tolist()) if j >= 0)


# -- load-greedy maximal matching -------------------------------------------


def load_order_matrix(weights: np.ndarray) -> np.ndarray:
    """Node codes sorted by load descending, rows before columns, then index.

    Row ``i`` has code ``i`` and column ``j`` has code ``nr + j``.
    """
    nr, nc = weights.shape
    loads = np.concatenate([weights.sum(axis=1), weights.sum(axis=0)])
    side = np.concatenate([np.zeros(nr, np.int64), np.ones(nc, np.int64)])
    index = np.concatenate([np.arange(nr), np.arange(nc)])
    # lexsort: last key is primary
    return np.lexsort((index, side, -loads)).astype(np.int64)


def greedy_load_matching_matrix(weights: np.ndarray) -> np.ndarray:
    weights = np.ascontiguousarray(weights, dtype=np.int64)
    return kernels.greedy_matching_by_order(weights, load_order_matrix(weights))


def load_order(graph: Graph) -> list[tuple[str, int]]:
    """The load-sorted node list as ``("v", id)`` / ``("u", id)`` labels."""
    mat, rows, cols = _compact(_as_weight_map(graph))
    nr = len(rows)
    return [("v", rows[c]) if c < nr else ("u", cols[c - nr]) for c in load_order_matrix(mat).tolist()]


def load_greedy_maximal_matching(graph: Graph) -> frozenset:
    """Maximal matching that serves the most loaded stations first.

    Nodes are visited in order of decreasing total weight (transmitters
    before receivers on ties, then by id).  Each unvisited node is paired
    with its free neighbour that comes first in that same order; nodes
    with no free neighbour are skipped.
    """
    wm = _as_weight_map(graph)
    if not wm:
        return frozenset()
    mat, rows, cols = _compact(wm)
    return _pairs(greedy_load_matching_matrix(mat), rows, cols)


# -- maximum cardinality ----------------------------------------------------


def max_cardinality_matching_matrix(adj: np.ndarray) -> np.ndarray:
    return kernels.max_matching(np.ascontiguousarray(adj, dtype=np.int64))


def max_cardinality_matching(graph: Graph) -> frozenset:
    wm = _as_weight_map(graph)
    if not wm:
        return frozenset()
    mat, rows, cols = _compact(wm)
    return _pairs(max_cardinality_matching_matrix(mat), rows, cols)


# -- step-4 augmentation ----------------------------------------------------


def augment_with_small_edges(
    matching: Iterable[tuple[int, int]], small_graph: Mapping[tuple[int, int], int]
) -> tuple[frozenset, list[tuple[int, int, int]]]:
    """Add small edges whose endpoints are both free, heaviest first.

    Existing pairs are never moved.  Returns the enlarged matching and the
    consumed ``(v, u, w)`` edges in the order they were added.
    """
    matching = set(matching)
    used_v = {v for v, _ in matching}
    used_u = {u for _, u in matching}
    consumed = []
    for (v, u), w in sorted(small_graph.items(), key=lambda kv: (-kv[1], kv[0])):
        if v in used_v or u in used_u:
            continue
        matching.add((v, u))
        used_v.add(v)
        used_u.add(u)
        consumed.append((v, u, w))
    return frozenset(matching), consumed


def augment_matrix(match_row: np.ndarray, small: np.ndarray) -> list[tuple[int, int]]:
    """Matrix form of :func:`augment_with_small_edges`; returns added cells."""
    free_row = match_row < 0
    free_col = np.ones(small.shape[1], dtype=bool)
    free_col[match_row[match_row >= 0]] = False
    ii, jj = np.nonzero(small)
    if ii.size == 0:
        return []
    ww = small[ii, jj]
    added = []
    for k in np.lexsort((jj, ii, -ww)).tolist():
        i, j = int(ii[k]), int(jj[k])
        if free_row[i] and free_col[j]:
            free_row[i] = False
            free_col[j] = False
            added.append((i, j))
    return added


# -- regularization and decomposition ---------------------------------------


@dataclass(frozen=True)
class RegularizedGraph:
    """Square bipartite multigraph in which every node has degree ``k``.

    ``row_nodes`` / ``col_nodes`` give the original id of each padded index
    or a negative label for an added node.  ``real`` and ``dummy`` count the
    parallel copies of each cell; ``weights`` holds real edge weights.
    """

    row_nodes: tuple[int, ...]
    col_nodes: tuple[int, ...]
    real: np.ndarray
    dummy: np.ndarray
    weights: np.ndarray
    k: int

    @property
    def n_dummy_edges(self) -> int:
        return int(self.dummy.sum())

    @property
    def n_real_edges(self) -> int:
        return int(self.real.sum())

    def degrees(self) -> tuple[np.ndarray, np.ndarray]:
        total = self.real + self.dummy
        return total.sum(axis=1), total.sum(axis=0)


def regularize_counts(counts: np.ndarray, row_ids, col_ids, weights=None) -> RegularizedGraph:
    """Pad a multigraph given as a count matrix until it is ``k``-regular.

    Rows and columns with no edges are dropped, the shorter side gets
    extra nodes, then zero-weight edges are added one at a time between the
    lowest-degree deficient row and the lowest-degree deficient column.
    """
    counts = np.asarray(counts, dtype=np.int64)
    if weights is None:
        weights = counts.copy()
    if counts.size == 0 or counts.sum() == 0:
        empty = np.zeros((0, 0), dtype=np.int64)
        return RegularizedGraph((), (), empty, empty.copy(), empty.copy(), 0)
    keep_r = np.nonzero(counts.sum(axis=1))[0]
    keep_c = np.nonzero(counts.sum(axis=0))[0]
    sub = counts[np.ix_(keep_r, keep_c)]
    nr, nc = sub.shape
    size = max(nr, nc)
    real = np.zeros((size, size), dtype=np.int64)
    real[:nr, :nc] = sub
    wts = np.zeros((size, size), dtype=np.int64)
    wts[:nr, :nc] = np.asarray(weights, dtype=np.int64)[np.ix_(keep_r, keep_c)]

    row_deg = real.sum(axis=1).tolist()
    col_deg = real.sum(axis=0).tolist()
    k = max(max(row_deg), max(col_deg))
    dummy = np.zeros((size, size), dtype=np.int64)
    while True:
        i = _min_deficient(row_deg, k)
        if i < 0:
            break
        j = _min_deficient(col_deg, k)
        dummy[i, j] += 1
        row_deg[i] += 1
        col_deg[j] += 1

    row_nodes = tuple(int(row_ids[r]) for r in keep_r) + tuple(-(x + 1) for x in range(size - nr))
    col_nodes = tuple(int(col_ids[c]) for c in keep_c) + tuple(-(x + 1) for x in range(size - nc))
    return RegularizedGraph(row_nodes, col_nodes, real, dummy, wts, int(k))


def _min_deficient(deg: list[int], k: int) -> int:
    best = -1
    for idx, value in enumerate(deg):
        if value < k and (best < 0 or value < deg[best]):
            best = idx
    return best


def regularize(small_graph: Mapping[tuple[int, int], int]) -> RegularizedGraph:
    wm = _as_weight_map(small_graph)
    if not wm:
        return regularize_counts(np.zeros((0, 0), dtype=np.int64), [], [])
    mat, rows, cols = _compact(wm)
    return regularize_counts((mat > 0).astype(np.int64), rows, cols, weights=mat)


def regular_decomposition_indices(rg: RegularizedGraph) -> list[list[tuple[int, int, bool]]]:
    """Peel ``k`` perfect matchings off ``rg``; cells as padded indices."""
    real = rg.real.copy()
    total = rg.real + rg.dummy
    size = total.shape[0]
    out = []
    for step in range(rg.k):
        match_row = kernels.max_matching(total)
        if size and (match_row < 0).any():
            raise DecompositionError(
                f"no perfect matching at extraction {step + 1} of {rg.k}"
            )
        layer = []
        for i, j in enumerate(match_row.tolist()):
            is_real = bool(real[i, j] > 0)
            if is_real:
                real[i, j] -= 1
            total[i, j] -= 1
            layer.append((i, j, is_real))
        out.append(layer)
    if total.any():
        raise DecompositionError("edges left after k extractions")
    return out


def regular_decomposition(rg: RegularizedGraph) -> list[tuple[tuple[int, int, bool], ...]]:
    """Split a ``k``-regular graph into ``k`` perfect matchings.

    Each matching is a tuple of ``(v, u, is_real)`` labelled with the ids in
    ``rg.row_nodes`` / ``rg.col_nodes`` (negative ids are padding nodes).
    """
    return [
        tuple((rg.row_nodes[i], rg.col_nodes[j], is_real) for i, j, is_real in layer)
        for layer in regular_decomposition_indices(rg)
    ]
