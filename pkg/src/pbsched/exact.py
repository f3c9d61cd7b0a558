"""Ground-truth solvers for small instances.

``optimal_makespan`` is a memoized branch and bound over residual demand
graphs.  ``full_range_optimal_makespan`` is a deliberately naive search used
to cross-check it.  ``min_total_duration_decomposition`` solves the
zero-overhead problem exactly.
"""

from __future__ import annotations

import sys
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .kernels import max_matching
from .model import Instance, Packet, Schedule

State = tuple[tuple[int, int, int], ...]


class OracleLimitExceeded(RuntimeError):
    """The instance or the search is too large for the exact oracle."""


@dataclass(frozen=True)
class SearchLimits:
    max_edges: int = 6
    max_total_weight: int = 30
    max_nodes_per_side: int = 4
    node_budget: int = 10**7

    def __post_init__(self):
        for name in ("max_edges", "max_total_weight", "max_nodes_per_side", "node_budget"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")


def _state_lb(state: State, d: int) -> int:
    if not state:
        return 0
    load = defaultdict(int)
    deg = defaultdict(int)
    for v, u, w in state:
        load["v", v] += w
        load["u", u] += w
        deg["v", v] += 1
        deg["u", u] += 1
    return max(load.values()) + d * max(deg.values())


def _canonical(state: State) -> State:
    """Relabel nodes by their incident-weight multiset so mirrored residuals share a key."""
    tx = defaultdict(list)
    rx = defaultdict(list)
    for v, u, w in state:
        tx[v].append(w)
        rx[u].append(w)
    rank_v = {v: r for r, v in enumerate(sorted(tx, key=lambda v: (sorted(tx[v]), v)))}
    rank_u = {u: r for r, u in enumerate(sorted(rx, key=lambda u: (sorted(rx[u]), u)))}
    return tuple(sorted((rank_v[v], rank_u[u], w) for v, u, w in state))


def _matchings(state: State, maximal_only: bool):
    """Every nonempty matching of ``state`` as a tuple of edge indices."""
    n = len(state)
    out = []

    def rec(k, chosen, used_v, used_u):
        if k == n:
            if chosen:
                out.append(tuple(chosen))
            return
        v, u, _ = state[k]
        if v not in used_v and u not in used_u:
            chosen.append(k)
            rec(k + 1, chosen, used_v | {v}, used_u | {u})
            chosen.pop()
        rec(k + 1, chosen, used_v, used_u)

    rec(0, [], frozenset(), frozenset())
    if maximal_only:
        def is_maximal(m):
            used_v = {state[k][0] for k in m}
            used_u = {state[k][1] for k in m}
            return all(v in used_v or u in used_u for v, u, _ in state)
        out = [m for m in out if is_maximal(m)]
    return out


def _apply(state: State, chosen, t: int) -> tuple[State, tuple]:
    chosen = set(chosen)
    nxt = []
    items = []
    for k, (v, u, w) in enumerate(state):
        if k in chosen:
            a = min(w, t)
            items.append((v, u, a))
            w -= a
        if w:
            nxt.append((v, u, w))
    return tuple(nxt), tuple(items)


def _check_limits(instance: Instance, limits: SearchLimits):
    if len(instance.edges) > limits.max_edges:
        raise OracleLimitExceeded(f"{len(instance.edges)} edges > max_edges {limits.max_edges}")
    total = sum(w for _, _, w in instance.edges)
    if total > limits.max_total_weight:
        raise OracleLimitExceeded(f"total weight {total} > {limits.max_total_weight}")
    n_v = len({v for v, _, _ in instance.edges})
    n_u = len({u for _, u, _ in instance.edges})
    if max(n_v, n_u, 0) > limits.max_nodes_per_side:
        raise OracleLimitExceeded(f"more than {limits.max_nodes_per_side} active nodes per side")


def optimal_makespan(instance: Instance, limits: SearchLimits | None = None) -> tuple[int, Schedule]:
    """Exact minimum makespan and a witness schedule.

    Branches on every maximal matching of the residual and on packet
    lengths drawn from that matching's residual weights (plus the smallest
    residual weight overall).  Raises :class:`OracleLimitExceeded` rather
    than returning an answer it cannot vouch for.
    """
    limits = limits or SearchLimits()
    _check_limits(instance, limits)
    d = instance.d
    memo: dict[State, int] = {}
    expanded = 0

    def children(state: State):
        floor = min(w for _, _, w in state)
        kids = []
        for m in _matchings(state, maximal_only=True):
            ts = {state[k][2] for k in m}
            ts.add(floor)
            for t in ts:
                nxt, items = _apply(state, m, t)
                kids.append((t + d + _state_lb(nxt, d), t, nxt, items))
        kids.sort(key=lambda k: (k[0], -k[1]))
        return kids

    def solve(state: State) -> int:
        nonlocal expanded
        if not state:
            return 0
        key = _canonical(state)
        if key in memo:
            return memo[key]
        expanded += 1
        if expanded > limits.node_budget:
            raise OracleLimitExceeded(f"node budget {limits.node_budget} exhausted")
        best = None
        for bound, t, nxt, _ in children(state):
            if best is not None and bound >= best:
                break
            value = t + d + solve(nxt)
            if best is None or value < best:
                best = value
        memo[key] = best
        return best

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 10 * limits.max_total_weight + 1000))
    try:
        root: State = tuple(instance.edges)
        best = solve(root)
        packets = []
        state = root
        while state:
            target = solve(state)
            for _, t, nxt, items in children(state):
                if t + d + solve(nxt) == target:
                    packets.append(Packet(t, items))
                    state = nxt
                    break
            else:  # pragma: no cover - memo values are exact
                raise AssertionError("witness reconstruction failed")
    finally:
        sys.setrecursionlimit(old_limit)
    return best, Schedule(tuple(packets))


def full_range_optimal_makespan(instance: Instance) -> int:
    """Slow reference: all matchings, every integer packet length."""
    d = instance.d

    @lru_cache(maxsize=None)
    def solve(state: State) -> int:
        if not state:
            return 0
        best = None
        for m in _matchings(state, maximal_only=False):
            top = max(state[k][2] for k in m)
            for t in range(1, top + 1):
                nxt, _ = _apply(state, m, t)
                value = t + d + solve(nxt)
                if best is None or value < best:
                    best = value
        return best

    return solve(tuple(instance.edges))


def min_total_duration_decomposition(instance: Instance) -> Schedule:
    """Schedule whose packet lengths sum to exactly ``W``.

    The demand matrix is embedded in a square matrix with every line sum
    equal to ``W`` (slack on the diagonal blocks).  Each round takes a
    perfect matching of its support, which always covers every station of
    maximum load, and cuts it by its smallest entry.
    """
    n, m = instance.n_transmitters, instance.n_receivers
    a = instance.weight_matrix()
    if not a.any():
        return Schedule()
    row_load = a.sum(axis=1)
    col_load = a.sum(axis=0)
    W = int(max(row_load.max(), col_load.max()))
    big = np.zeros((n + m, m + n), dtype=np.int64)
    big[:n, :m] = a
    big[:n, m:] = np.diag(W - row_load)
    big[n:, :m] = np.diag(W - col_load)
    big[n:, m:] = a.T

    packets = []
    while big.any():
        match_row = max_matching(big)
        if (match_row < 0).any():  # pragma: no cover - line sums are equal
            raise AssertionError("no perfect matching in balanced matrix")
        rows = np.arange(n + m)
        t = int(big[rows, match_row].min())
        items = [(i + 1, int(match_row[i]) + 1, t) for i in range(n) if match_row[i] < m]
        big[rows, match_row] -= t
        packets.append(Packet(t, items))
    return Schedule(tuple(packets))
