"""Random instances and the approximation-ratio experiment.

Randomness comes from SplitMix64 so that instance files are reproducible
across platforms and Python versions:

* state advances by ``0x9E3779B97F4A7C15`` (mod 2**64) per draw and the
  output is the standard SplitMix64 finalizer of the new state;
* a uniform float is ``(x >> 11) / 2**53``;
* an integer in ``[1, k]`` rejects draws ``>= 2**64 - 2**64 % k`` and
  returns ``1 + x % k``.

Pairs ``(v, u)`` are visited in row-major order: first the inclusion draw
(``float < density``), then, if included, the weight draw.

Per-case seeds are ``derive_seed(base, d, i)``, so a case's instance never
depends on how the work is scheduled.
"""

from __future__ import annotations

import csv
import hashlib
import io
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Sequence

from .baselines import run_a1, run_apbs
from .formats import emit_instance
from .model import Instance, Schedule, lower_bound, makespan, validate_schedule
from .sga import run_sga

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15

ALGORITHMS: dict[str, Callable[[Instance], Schedule]] = {
    "sga": run_sga,
    "a1": run_a1,
    "apbs": run_apbs,
}

CSV_HEADER = ["d", "alg", "cases", "mean_ratio", "worst_ratio", "mean_makespan", "mean_lb", "solve_ms"]

PAPER_D_LIST = (1, 2, 5, 10, 20, 50, 100, 150, 200)
PRESETS = {
    "paper": dict(n=15, m=15, w_max=50, density=1.0, d_list=PAPER_D_LIST, cases=1000),
    "quick": dict(n=15, m=15, w_max=50, density=1.0, d_list=PAPER_D_LIST, cases=100),
}


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return mix64(self.state)

    def random(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def randint(self, low: int, high: int) -> int:
        span = high - low + 1
        limit = (1 << 64) - (1 << 64) % span
        while True:
            x = self.next_u64()
            if x < limit:
                return low + x % span


def derive_seed(base_seed: int, d: int, case: int) -> int:
    h = mix64(base_seed + GOLDEN_GAMMA)
    h = mix64(h ^ ((d + 2 * GOLDEN_GAMMA) & MASK64))
    return mix64(h ^ ((case + 3 * GOLDEN_GAMMA) & MASK64))


@dataclass(frozen=True)
class GenSpec:
    n: int
    m: int
    w_max: int
    density: float
    d: int
    seed: int = 0

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError("n and m must be >= 1")
        if self.w_max < 1:
            raise ValueError("w_max must be >= 1")
        if not 0 < self.density <= 1:
            raise ValueError("density must be in (0, 1]")
        if self.d < 1:
            raise ValueError("d must be >= 1")
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")


def generate_instance(spec: GenSpec) -> Instance:
    rng = SplitMix64(spec.seed)
    edges = []
    for v in range(1, spec.n + 1):
        for u in range(1, spec.m + 1):
            if rng.random() < spec.density:
                edges.append((v, u, rng.randint(1, spec.w_max)))
    return Instance(spec.n, spec.m, spec.d, tuple(edges))


@dataclass(frozen=True)
class BenchRow:
    d: int
    algorithm: str
    cases: int
    mean_ratio: Fraction
    worst_ratio: Fraction
    mean_makespan: Fraction
    mean_lower_bound: Fraction
    total_solve_time: float  # milliseconds


class SolverBugError(RuntimeError):
    def __init__(self, seed: int, d: int, algorithm: str, report):
        super().__init__(f"invalid schedule from {algorithm} (seed={seed}, d={d}):\n{report}")
        self.seed = seed
        self.d = d
        self.algorithm = algorithm


@dataclass(frozen=True)
class CellResult:
    d: int
    case: int
    seed: int
    digest: str
    lower_bound: int
    makespans: dict[str, int]
    seconds: dict[str, float]


def solve_cell(template: GenSpec, algorithms: Sequence[str], base_seed: int, d: int, case: int) -> CellResult:
    seed = derive_seed(base_seed, d, case)
    instance = generate_instance(replace(template, d=d, seed=seed))
    lb = lower_bound(instance)
    makespans = {}
    seconds = {}
    for name in algorithms:
        start = time.perf_counter()
        schedule = ALGORITHMS[name](instance)
        seconds[name] = time.perf_counter() - start
        report = validate_schedule(instance, schedule)
        if not report.ok:
            raise SolverBugError(seed, d, name, report)
        makespans[name] = makespan(schedule, d)
    digest = hashlib.sha256(emit_instance(instance).encode()).hexdigest()
    return CellResult(d, case, seed, digest, lb, makespans, seconds)


def _solve_cell_args(args):
    return solve_cell(*args)


def _ratio(ms: int, lb: int) -> Fraction:
    return Fraction(1) if lb == 0 else Fraction(ms, lb)


def aggregate(cells: Sequence[CellResult], algorithms: Sequence[str], d_list: Sequence[int]) -> list[BenchRow]:
    by_d: dict[int, list[CellResult]] = {d: [] for d in d_list}
    for cell in sorted(cells, key=lambda c: (c.d, c.case)):
        by_d[cell.d].append(cell)
    rows = []
    for d in d_list:
        group = by_d[d]
        count = len(group)
        for name in algorithms:
            ratios = [_ratio(c.makespans[name], c.lower_bound) for c in group]
            rows.append(
                BenchRow(
                    d=d,
                    algorithm=name,
                    cases=count,
                    mean_ratio=sum(ratios, Fraction(0)) / count,
                    worst_ratio=max(ratios),
                    mean_makespan=Fraction(sum(c.makespans[name] for c in group), count),
                    mean_lower_bound=Fraction(sum(c.lower_bound for c in group), count),
                    total_solve_time=1000.0 * sum(c.seconds[name] for c in group),
                )
            )
    return rows


def run_experiment(
    algorithms: Sequence[str],
    d_list: Sequence[int],
    cases_per_d: int,
    template: GenSpec,
    base_seed: int,
    workers: int = 1,
    cells_out: list | None = None,
) -> list[BenchRow]:
    """Solve ``cases_per_d`` shared instances per overhead with every algorithm.

    ``template`` supplies the instance shape; its ``d`` and ``seed`` are
    replaced per case.  Pass ``cells_out`` to collect the per-case results.
    """
    if not algorithms:
        raise ValueError("need at least one algorithm")
    unknown = [a for a in algorithms if a not in ALGORITHMS]
    if unknown:
        raise ValueError(f"unknown algorithm(s): {', '.join(unknown)}")
    if cases_per_d < 1:
        raise ValueError("cases_per_d must be >= 1")
    jobs = [(template, tuple(algorithms), base_seed, d, i) for d in d_list for i in range(cases_per_d)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            cells = list(pool.map(_solve_cell_args, jobs, chunksize=8))
    else:
        cells = [solve_cell(*job) for job in jobs]
    if cells_out is not None:
        cells_out.extend(cells)
    return aggregate(cells, algorithms, d_list)


def format_fixed(value: Fraction, places: int = 6) -> str:
    """Exact decimal rendering of a non-negative value, rounding half to even."""
    value = Fraction(value)
    if value < 0:
        raise ValueError("negative values are not used in reports")
    scale = 10**places
    q, r = divmod(value.numerator * scale, value.denominator)
    twice = 2 * r
    if twice > value.denominator or (twice == value.denominator and q % 2 == 1):
        q += 1
    return f"{q // scale}.{q % scale:0{places}d}"


def rows_to_csv(rows: Sequence[BenchRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(
            [
                row.d,
                row.algorithm,
                row.cases,
                format_fixed(row.mean_ratio),
                format_fixed(row.worst_ratio),
                format_fixed(row.mean_makespan),
                format_fixed(row.mean_lower_bound),
                f"{row.total_solve_time:.3f}",
            ]
        )
    return buf.getvalue()
