"""The two comparison schedulers.

``run_apbs`` rounds every message up to a multiple of ``d + 1`` and
schedules the resulting unit slices as perfect matchings of a regularized
multigraph.  ``run_a1`` repeatedly sends a maximum-cardinality matching and
picks each packet's length to minimize its own cost plus a lower bound on
what remains.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .matching import (
    _as_weight_map,
    _compact,
    max_cardinality_matching_matrix,
    regular_decomposition_indices,
    regularize_counts,
)
from .model import Instance, Packet, Schedule, matrix_load_and_degree


@dataclass(frozen=True)
class RoundedInstance:
    instance: Instance
    rounded: dict[tuple[int, int], int]
    copies: dict[tuple[int, int], int]


def round_up_weights(instance: Instance) -> RoundedInstance:
    step = instance.d + 1
    rounded = {}
    copies = {}
    for v, u, w in instance.edges:
        q = -(-w // step)
        rounded[v, u] = q * step
        copies[v, u] = q
    return RoundedInstance(instance, rounded, copies)


def run_apbs(instance: Instance) -> Schedule:
    if not instance.edges:
        return Schedule()
    step = instance.d + 1
    weights = instance.weight_matrix()
    counts = -(-weights // step)
    rg = regularize_counts(
        counts,
        range(1, instance.n_transmitters + 1),
        range(1, instance.n_receivers + 1),
        weights=weights,
    )
    left = rg.weights.copy()
    packets = []
    for layer in regular_decomposition_indices(rg):
        items = []
        for i, j, is_real in layer:
            if not is_real:
                continue
            amount = min(step, int(left[i, j]))
            left[i, j] -= amount
            items.append((rg.row_nodes[i], rg.col_nodes[j], amount))
        if items:
            packets.append(Packet.of(items))
    return Schedule(tuple(packets))


def _choose_duration(residual: np.ndarray, match_row: np.ndarray, d: int) -> tuple[int, int]:
    rows = np.nonzero(match_row >= 0)[0]
    cols = match_row[rows]
    matched = residual[rows, cols]
    best_t, best_obj = 0, None
    for t in sorted(set(matched.tolist())):
        trial = residual.copy()
        trial[rows, cols] -= np.minimum(matched, t)
        W, Delta = matrix_load_and_degree(trial)
        obj = t + d + W + d * Delta
        # ascending t, so "<=" keeps the larger t on ties
        if best_obj is None or obj <= best_obj:
            best_t, best_obj = t, obj
    return best_t, best_obj


def a1_packet_choice(
    residual: Mapping[tuple[int, int], int], matching: Iterable[tuple[int, int]], d: int
) -> int:
    """Packet length among the matched weights minimizing ``t + d + LB(rest)``.

    ``LB`` is ``W + d * Delta`` of what remains; ties go to the larger ``t``.
    """
    wm = _as_weight_map(residual)
    mat, rows, cols = _compact(wm)
    ri = {v: i for i, v in enumerate(rows)}
    ci = {u: j for j, u in enumerate(cols)}
    match_row = np.full(len(rows), -1, dtype=np.int64)
    for v, u in matching:
        match_row[ri[v]] = ci[u]
    return _choose_duration(mat, match_row, d)[0]


def run_a1(instance: Instance) -> Schedule:
    d = instance.d
    residual = instance.weight_matrix()
    packets = []
    while residual.any():
        match_row = max_cardinality_matching_matrix(residual)
        t, _ = _choose_duration(residual, match_row, d)
        items = []
        for i in np.nonzero(match_row >= 0)[0].tolist():
            j = int(match_row[i])
            amount = min(int(residual[i, j]), t)
            residual[i, j] -= amount
            items.append((i + 1, j + 1, amount))
        packets.append(Packet(t, items))
    return Schedule(tuple(packets))
