"""Split-graph scheduling.

Edges of weight at least ``d`` ("large") are scheduled by repeatedly taking
a load-greedy maximal matching and cutting it by a removal weight chosen so
the heaviest station drops as much as possible.  Small edges ride along in
free slots of those packets; whatever is left is regularized and split into
perfect matchings, one packet each, so it costs as few setups as possible.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .matching import (
    _as_weight_map,
    _compact,
    augment_matrix,
    greedy_load_matching_matrix,
    regular_decomposition_indices,
    regularize_counts,
)
from .kernels import reduced_max_load
from .model import Instance, Packet, Schedule

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SplitState:
    large: dict[tuple[int, int], int]
    small: dict[tuple[int, int], int]
    d: int


@dataclass(frozen=True)
class RemovalWeight:
    r: dict[tuple[int, int], int]
    R: int
    fallback: bool = False


@dataclass
class SgaStep:
    """One main-loop iteration, recorded when a trace list is passed in."""

    matching: list[tuple[int, int]]
    R: int
    fallback: bool
    added_small: list[tuple[int, int, int]] = field(default_factory=list)
    migrated: list[tuple[int, int, int]] = field(default_factory=list)


def split_graph(instance: Instance) -> SplitState:
    large = {(v, u): w for v, u, w in instance.edges if w >= instance.d}
    small = {(v, u): w for v, u, w in instance.edges if w < instance.d}
    return SplitState(large, small, instance.d)


def removal_weight_matrix(weights: np.ndarray, match_row: np.ndarray) -> tuple[int, np.ndarray, bool]:
    """Return ``(R, r, fallback)`` for the matched cells of ``weights``.

    ``r`` is aligned with the matched rows in increasing row order.
    """
    mi = np.nonzero(match_row >= 0)[0].astype(np.int64)
    mj = match_row[mi].astype(np.int64)
    mc = weights[mi, mj].astype(np.int64)
    row_load = weights.sum(axis=1).astype(np.int64)
    col_load = weights.sum(axis=0).astype(np.int64)
    W = int(max(row_load.max(), col_load.max()))
    after = reduced_max_load(row_load, col_load, mi, mj, mc)
    r = np.where(after == W - mc, mc, 0)
    R = int(r.max()) if r.size else 0
    if R > 0:
        return R, r, False
    return int(mc.min()), r, True


def removal_weight(large: Mapping[tuple[int, int], int], matching: Iterable[tuple[int, int]]) -> RemovalWeight:
    """Choose how much to cut from every matched edge this round.

    Candidate ``c(e)`` counts when cutting all matched edges by ``c(e)``
    (edges lighter than that vanish) lowers the maximum station load by
    exactly ``c(e)``; ``R`` is the largest such candidate.  When none
    qualifies, ``R`` falls back to the lightest matched edge so the loop
    always removes at least one edge.
    """
    wm = _as_weight_map(large)
    mat, rows, cols = _compact(wm)
    ri = {v: i for i, v in enumerate(rows)}
    ci = {u: j for j, u in enumerate(cols)}
    match_row = np.full(len(rows), -1, dtype=np.int64)
    for v, u in matching:
        match_row[ri[v]] = ci[u]
    R, r, fallback = removal_weight_matrix(mat, match_row)
    matched = [(rows[i], cols[int(match_row[i])]) for i in np.nonzero(match_row >= 0)[0]]
    return RemovalWeight(dict(zip(matched, (int(x) for x in r))), R, fallback)


def run_sga(instance: Instance, trace: list | None = None) -> Schedule:
    d = instance.d
    weights = instance.weight_matrix()
    large = np.where(weights >= d, weights, 0)
    small = np.where(weights < d, weights, 0)
    packets = []

    while large.any():
        match_row = greedy_load_matching_matrix(large)
        R, _, fallback = removal_weight_matrix(large, match_row)
        if fallback:
            log.debug("removal weight fell back to lightest matched edge (R=%d)", R)
        items = []
        for i in np.nonzero(match_row >= 0)[0].tolist():
            j = int(match_row[i])
            amount = min(int(large[i, j]), R)
            items.append((i + 1, j + 1, amount))
            large[i, j] -= amount
        added = []
        for i, j in augment_matrix(match_row, small):
            added.append((i + 1, j + 1, int(small[i, j])))
            small[i, j] = 0
        packets.append(Packet(R, items + added))

        moving = (large > 0) & (large < d)
        migrated = [(int(i) + 1, int(j) + 1, int(large[i, j])) for i, j in zip(*np.nonzero(moving))]
        small[moving] = large[moving]
        large[moving] = 0
        if trace is not None:
            trace.append(SgaStep([(v, u) for v, u, _ in items], R, fallback, added, migrated))

    packets.extend(_small_phase(small))
    return Schedule(tuple(packets))


def _small_phase(small: np.ndarray) -> list[Packet]:
    if not small.any():
        return []
    n, m = small.shape
    rg = regularize_counts(
        (small > 0).astype(np.int64), range(1, n + 1), range(1, m + 1), weights=small
    )
    packets = []
    for layer in regular_decomposition_indices(rg):
        items = [
            (rg.row_nodes[i], rg.col_nodes[j], int(rg.weights[i, j]))
            for i, j, is_real in layer
            if is_real
        ]
        if items:
            packets.append(Packet.of(items))
    return packets
