from dataclasses import replace
from fractions import Fraction

import pytest

from pbsched.bench import (
    CSV_HEADER,
    GenSpec,
    SplitMix64,
    aggregate,
    derive_seed,
    format_fixed,
    generate_instance,
    rows_to_csv,
    run_experiment,
)
from pbsched.formats import emit_instance


def test_splitmix_reference_values():
    # published SplitMix64 outputs for seed 1234567
    rng = SplitMix64(1234567)
    assert [rng.next_u64() for _ in range(3)] == [
        6457827717110365317,
        3203168211198807973,
        9817491932198370423,
    ]


def test_randint_range_and_float_range():
    rng = SplitMix64(5)
    draws = [rng.randint(1, 7) for _ in range(2000)]
    assert set(draws) == set(range(1, 8))
    assert all(0.0 <= rng.random() < 1.0 for _ in range(1000))


def test_generate_deterministic():
    spec = GenSpec(6, 4, 20, 0.5, 3, seed=99)
    assert emit_instance(generate_instance(spec)) == emit_instance(generate_instance(spec))
    other = GenSpec(6, 4, 20, 0.5, 3, seed=100)
    assert generate_instance(spec) != generate_instance(other)


def test_generate_full_15x15():
    inst = generate_instance(GenSpec(15, 15, 50, 1.0, 7, seed=2024))
    assert len(inst.edges) == 225
    assert all(1 <= w <= 50 for *_, w in inst.edges)


def test_generate_unit_weights():
    inst = generate_instance(GenSpec(5, 5, 1, 1.0, 2, seed=1))
    assert {w for *_, w in inst.edges} == {1}


@pytest.mark.parametrize(
    "kwargs",
    [dict(n=0), dict(w_max=0), dict(density=0.0), dict(density=1.5), dict(d=0), dict(seed=-1)],
)
def test_genspec_rejects(kwargs):
    base = dict(n=2, m=2, w_max=3, density=1.0, d=1, seed=0)
    base.update(kwargs)
    with pytest.raises(ValueError):
        GenSpec(**base)


def test_derive_seed_distinct():
    seeds = {derive_seed(7, d, i) for d in (1, 2, 5) for i in range(50)}
    assert len(seeds) == 150
    assert derive_seed(7, 1, 0) == derive_seed(7, 1, 0)


@pytest.mark.parametrize(
    "value,text",
    [
        (Fraction(1), "1.000000"),
        (Fraction(1, 3), "0.333333"),
        (Fraction(2, 3), "0.666667"),
        (Fraction(1, 2 * 10**6), "0.000000"),
        (Fraction(3, 2 * 10**6), "0.000002"),
        (Fraction(1234567, 10**6), "1.234567"),
    ],
)
def test_format_half_even(value, text):
    assert format_fixed(value) == text


def test_single_edge_experiment_ratio_one():
    # w <= d + 1 keeps the rounding scheme to a single packet as well
    template = GenSpec(1, 1, 2, 1.0, 1)
    rows = run_experiment(["sga", "a1", "apbs"], [1], 1, template, base_seed=3)
    assert [r.algorithm for r in rows] == ["sga", "a1", "apbs"]
    assert all(r.mean_ratio == r.worst_ratio == 1 for r in rows)


def test_experiment_rows_and_fairness():
    template = GenSpec(5, 5, 20, 0.6, 1)
    cells = []
    rows = run_experiment(["sga", "a1", "apbs"], [1, 4], 6, template, base_seed=42, cells_out=cells)
    assert len(rows) == 6
    for row in rows:
        assert row.cases == 6
        assert 1 <= row.mean_ratio <= row.worst_ratio
    again = []
    run_experiment(["apbs"], [1, 4], 6, template, base_seed=42, cells_out=again)
    assert [c.digest for c in cells] == [c.digest for c in again]
    assert aggregate(cells, ["sga"], [1, 4])[0] == rows[0]


def test_parallel_matches_serial():
    template = GenSpec(6, 6, 30, 1.0, 1)
    a = run_experiment(["sga", "a1"], [2, 9], 5, template, base_seed=8)
    b = run_experiment(["sga", "a1"], [2, 9], 5, template, base_seed=8, workers=2)
    assert [replace(r, total_solve_time=0) for r in a] == [replace(r, total_solve_time=0) for r in b]


def test_csv_layout():
    template = GenSpec(3, 3, 5, 1.0, 1)
    text = rows_to_csv(run_experiment(["sga"], [1], 2, template, base_seed=1))
    header, line = text.splitlines()
    assert header.split(",") == CSV_HEADER
    fields = line.split(",")
    assert fields[:3] == ["1", "sga", "2"]
    assert all(len(f.split(".")[1]) == 6 for f in fields[3:7])


def test_experiment_argument_checks():
    template = GenSpec(2, 2, 2, 1.0, 1)
    with pytest.raises(ValueError):
        run_experiment([], [1], 1, template, 0)
    with pytest.raises(ValueError):
        run_experiment(["nope"], [1], 1, template, 0)
    with pytest.raises(ValueError):
        run_experiment(["sga"], [1], 0, template, 0)
