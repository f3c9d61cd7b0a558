import functools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from pbsched import _pykernels, kernels

try:
    from pbsched import _ckernels
except ImportError:  # pragma: no cover - extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")

matrices = st.tuples(st.integers(1, 8), st.integers(1, 8)).flatmap(
    lambda shape: arrays(np.int64, shape, elements=st.integers(0, 9) | st.just(0))
)


def brute_max_matching(adj):
    """Exhaustive search over row assignments, memoized on the used-column set."""
    nr, nc = adj.shape
    cells = adj.tolist()

    @functools.lru_cache(maxsize=None)
    def best(i, used):
        if i == nr:
            return 0
        out = best(i + 1, used)
        for j in range(nc):
            if cells[i][j] > 0 and not used >> j & 1:
                out = max(out, 1 + best(i + 1, used | 1 << j))
        return out

    return best(0, 0)


def check_matching(adj, match_row):
    cols = [j for j in match_row.tolist() if j >= 0]
    assert len(cols) == len(set(cols))
    for i, j in enumerate(match_row.tolist()):
        if j >= 0:
            assert adj[i, j] > 0


@settings(max_examples=200)
@given(matrices)
def test_python_max_matching_is_maximum(adj):
    match_row = _pykernels.max_matching(adj)
    check_matching(adj, match_row)
    assert (match_row >= 0).sum() == brute_max_matching(adj)


@needs_ext
@settings(max_examples=300)
@given(matrices)
def test_backends_agree(adj):
    assert np.array_equal(_pykernels.max_matching(adj), _ckernels.max_matching(adj))
    order = np.random.default_rng(int(adj.sum())).permutation(sum(adj.shape)).astype(np.int64)
    assert np.array_equal(
        _pykernels.greedy_matching_by_order(adj, order),
        _ckernels.greedy_matching_by_order(adj, order),
    )
    match_row = _pykernels.max_matching(adj)
    mi = np.nonzero(match_row >= 0)[0].astype(np.int64)
    mj = match_row[mi]
    mc = adj[mi, mj].astype(np.int64)
    rl, cl = adj.sum(axis=1), adj.sum(axis=0)
    assert np.array_equal(
        _pykernels.reduced_max_load(rl, cl, mi, mj, mc),
        _ckernels.reduced_max_load(rl, cl, mi, mj, mc),
    )


@settings(max_examples=200)
@given(matrices)
def test_reduced_max_load_matches_direct_simulation(adj):
    match_row = kernels.max_matching(adj)
    mi = np.nonzero(match_row >= 0)[0].astype(np.int64)
    mj = match_row[mi]
    mc = adj[mi, mj].astype(np.int64)
    got = kernels.reduced_max_load(adj.sum(axis=1), adj.sum(axis=0), mi, mj, mc)
    for k, cut in enumerate(mc.tolist()):
        trial = adj.copy()
        trial[mi, mj] -= np.minimum(mc, cut)
        assert got[k] == max(trial.sum(axis=1).max(), trial.sum(axis=0).max())


@settings(max_examples=200)
@given(matrices)
def test_greedy_by_order_is_maximal(adj):
    order = np.arange(sum(adj.shape), dtype=np.int64)[::-1].copy()
    match_row = kernels.greedy_matching_by_order(adj, order)
    check_matching(adj, match_row)
    used_cols = set(match_row[match_row >= 0].tolist())
    for i, j in zip(*np.nonzero(adj)):
        assert match_row[i] >= 0 or j in used_cols


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")
