import random

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from pbsched import Instance

settings.register_profile("default", deadline=None)
settings.load_profile("default")


def random_instance(rng: random.Random, n_max=6, m_max=6, w_max=20, d_max=10, density=None):
    n = rng.randint(1, n_max)
    m = rng.randint(1, m_max)
    d = rng.randint(1, d_max)
    p = density if density is not None else rng.choice([0.3, 0.6, 1.0])
    edges = [
        (v, u, rng.randint(1, w_max))
        for v in range(1, n + 1)
        for u in range(1, m + 1)
        if rng.random() < p
    ]
    return Instance(n, m, d, tuple(edges))


@st.composite
def instances(draw, n_max=6, m_max=6, w_max=20, d_max=10):
    n = draw(st.integers(1, n_max))
    m = draw(st.integers(1, m_max))
    d = draw(st.integers(1, d_max))
    cells = draw(
        st.dictionaries(
            st.tuples(st.integers(1, n), st.integers(1, m)),
            st.integers(1, w_max),
            max_size=n * m,
        )
    )
    return Instance(n, m, d, tuple((v, u, w) for (v, u), w in cells.items()))


@pytest.fixture
def I1():
    """Three messages, two of them through the busiest stations."""
    return Instance(2, 2, 1, ((1, 1, 3), (1, 2, 2), (2, 1, 2)))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, label): acceptance criterion")


_criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n, label = marker.args
    if report.failed:
        _criteria[n] = (label, "FAIL")
    elif report.when == "call" and report.passed:
        _criteria.setdefault(n, (label, "PASS"))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        label, status = _criteria[n]
        terminalreporter.write_line(f"[{status}] criterion {n}: {label}")
