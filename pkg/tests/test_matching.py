import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pbsched.matching import (
    augment_with_small_edges,
    load_greedy_maximal_matching,
    load_order,
    max_cardinality_matching,
    regular_decomposition,
    regularize,
    regularize_counts,
)

graphs = st.dictionaries(
    st.tuples(st.integers(1, 8), st.integers(1, 8)), st.integers(1, 30), max_size=30
)


def is_matching(m):
    return len({v for v, _ in m}) == len(m) == len({u for _, u in m})


def exhaustive_max(edges):
    edges = list(edges)
    for size in range(len(edges), 0, -1):
        for combo in itertools.combinations(edges, size):
            if is_matching(combo):
                return size
    return 0


# -- load-greedy ------------------------------------------------------------


def test_load_greedy_busiest_pair_first():
    g = {(1, 1): 3, (1, 2): 2, (2, 1): 2}
    assert load_order(g) == [("v", 1), ("u", 1), ("v", 2), ("u", 2)]
    assert load_greedy_maximal_matching(g) == {(1, 1)}


def test_load_greedy_tie_order():
    assert load_greedy_maximal_matching({(1, 2): 2, (2, 1): 2}) == {(1, 2), (2, 1)}


def test_load_greedy_single_and_empty():
    assert load_greedy_maximal_matching({(1, 1): 5}) == {(1, 1)}
    assert load_greedy_maximal_matching({}) == frozenset()


def test_load_greedy_prefers_heavy_neighbour():
    # u2 (load 6) leads the order and takes v1 (load 5) over v2 (load 3)
    g = {(1, 1): 1, (1, 2): 4, (2, 2): 2, (2, 1): 1}
    assert load_greedy_maximal_matching(g) == {(1, 2), (2, 1)}


@given(graphs)
def test_load_greedy_maximal(g):
    m = load_greedy_maximal_matching(g)
    assert is_matching(m)
    assert m <= set(g)
    mv = {v for v, _ in m}
    mu = {u for _, u in m}
    assert all(v in mv or u in mu for v, u in g)
    assert load_greedy_maximal_matching(dict(reversed(list(g.items())))) == m


# -- maximum cardinality ----------------------------------------------------


@pytest.mark.parametrize(
    "edges,size",
    [
        ({(1, 1), (1, 2), (2, 1)}, 2),
        ({(1, 1), (1, 2), (1, 3)}, 1),
        ({(1, 1), (1, 2), (2, 1), (2, 2)}, 2),
    ],
)
def test_max_cardinality_examples(edges, size):
    m = max_cardinality_matching(edges)
    assert len(m) == size and is_matching(m) and m <= edges


@settings(max_examples=150)
@given(st.sets(st.tuples(st.integers(1, 8), st.integers(1, 8)), max_size=14))
def test_max_cardinality_vs_exhaustive(edges):
    m = max_cardinality_matching(edges)
    assert is_matching(m) and m <= edges
    assert len(m) == exhaustive_max(edges)


# -- step-4 augmentation ----------------------------------------------------


def test_augment_adds_free_edge():
    m, consumed = augment_with_small_edges({(1, 1)}, {(2, 2): 3})
    assert m == {(1, 1), (2, 2)} and consumed == [(2, 2, 3)]


def test_augment_skips_occupied_endpoint():
    m, consumed = augment_with_small_edges({(1, 1)}, {(1, 2): 2})
    assert m == {(1, 1)} and consumed == []


def test_augment_heaviest_first():
    m, consumed = augment_with_small_edges(set(), {(1, 1): 2, (1, 2): 1})
    assert m == {(1, 1)} and consumed == [(1, 1, 2)]


@given(graphs, graphs)
def test_augment_keeps_existing(base, small):
    start = load_greedy_maximal_matching(base)
    small = {e: w for e, w in small.items() if e not in base}
    m, consumed = augment_with_small_edges(start, small)
    assert start <= m and is_matching(m)
    assert {(v, u) for v, u, _ in consumed} == m - start
    mv = {v for v, _ in m}
    mu = {u for _, u in m}
    assert all(v in mv or u in mu for v, u in small)


# -- regularize / decomposition ---------------------------------------------


def test_regularize_adds_one_dummy():
    rg = regularize({(1, 1): 1, (1, 2): 1, (2, 1): 1})
    assert rg.k == 2 and rg.n_dummy_edges == 1
    assert rg.dummy[1, 1] == 1
    rows, cols = rg.degrees()
    assert set(rows.tolist()) == set(cols.tolist()) == {2}


def test_regularize_identity_cases():
    rg = regularize({(1, 1): 1, (1, 2): 1, (2, 1): 1, (2, 2): 1})
    assert rg.k == 2 and rg.n_dummy_edges == 0
    rg = regularize({(1, 1): 7})
    assert rg.k == 1 and rg.n_dummy_edges == 0 and rg.real.shape == (1, 1)


def test_regularize_empty():
    rg = regularize({})
    assert rg.k == 0 and regular_decomposition(rg) == []


def test_decomposition_two_regular():
    rg = regularize({(1, 1): 1, (1, 2): 1, (2, 1): 1})
    layers = [frozenset(layer) for layer in regular_decomposition(rg)]
    assert set(layers) == {
        frozenset({(1, 1, True), (2, 2, False)}),
        frozenset({(1, 2, True), (2, 1, True)}),
    }


def test_decomposition_one_regular_and_biclique():
    assert regular_decomposition(regularize({(1, 2): 3, (2, 1): 4})) == [((1, 2, True), (2, 1, True))]
    layers = regular_decomposition(regularize({(v, u): 1 for v in (1, 2) for u in (1, 2)}))
    assert len(layers) == 2
    assert {(v, u) for layer in layers for v, u, _ in layer} == {(1, 1), (1, 2), (2, 1), (2, 2)}


@settings(max_examples=150)
@given(graphs)
def test_regularize_and_decompose_properties(g):
    rg = regularize(g)
    if not g:
        return
    rows, cols = rg.degrees()
    assert (rows == rg.k).all() and (cols == rg.k).all()
    assert rg.n_real_edges == len(g)
    layers = regular_decomposition(rg)
    assert len(layers) == rg.k
    real_seen = []
    for layer in layers:
        assert len(layer) == len(rg.row_nodes)
        assert len({v for v, _, _ in layer}) == len(layer) == len({u for _, u, _ in layer})
        real_seen += [(v, u) for v, u, real in layer if real]
    assert sorted(real_seen) == sorted(g)
    assert regular_decomposition(rg) == layers


def test_multigraph_regularize():
    counts = np.array([[3, 0], [1, 1]], dtype=np.int64)
    rg = regularize_counts(counts, [1, 2], [1, 2])
    assert rg.k == 4
    layers = regular_decomposition(rg)
    assert sum(real for layer in layers for _, _, real in layer) == 5


def test_regularize_random_multigraphs():
    rng = random.Random(7)
    for _ in range(50):
        counts = np.array([[rng.choice([0, 0, 1, 2, 5]) for _ in range(5)] for _ in range(4)], dtype=np.int64)
        if not counts.any():
            continue
        rg = regularize_counts(counts, range(1, 5), range(1, 6))
        rows, cols = rg.degrees()
        assert (rows == rg.k).all() and (cols == rg.k).all()
        assert rg.k == max(counts.sum(axis=0).max(), counts.sum(axis=1).max())
        assert len(regular_decomposition(rg)) == rg.k
