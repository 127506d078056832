from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from loci.ci import CISet, parse_ci
from loci.graph import Graph

SIX_DAG_NAMES = ["u", "a", "b", "c", "d", "v"]


def make_six_vertex_dag() -> Graph:
    u, a, b, c, d, v = range(6)
    return Graph.from_edges(6, [(u, a), (c, a), (d, a), (c, b), (d, b), (v, b)], names=SIX_DAG_NAMES)


def make_single_statement_ci() -> CISet:
    return parse_ci("vars a b c d\nk 1\nci c d | a\n")


def make_four_cycle_ci() -> CISet:
    # marginal dependencies a-b, b-c, c-d, d-a; a _||_ c and b _||_ d
    return parse_ci("vars a b c d\nk 0\nci a c\nci b d\n")


def random_dag(rng: random.Random, n: int, p: float | None = None) -> Graph:
    if p is None:
        p = rng.random()
    order = list(range(n))
    rng.shuffle(order)
    arcs = [(order[i], order[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph.from_arcs(n, arcs)


@st.composite
def dags(draw, min_n: int = 1, max_n: int = 7) -> Graph:
    n = draw(st.integers(min_n, max_n))
    order = draw(st.permutations(range(n)))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_arcs(n, [(order[i], order[j]) for (i, j), k in zip(pairs, keep) if k])


@pytest.fixture
def six_dag() -> Graph:
    return make_six_vertex_dag()


@pytest.fixture
def single_ci() -> CISet:
    return make_single_statement_ci()


@pytest.fixture
def four_cycle_ci() -> CISet:
    return make_four_cycle_ci()


# acceptance reporting: one line per criterion in the terminal summary.
# A criterion passes when every test carrying its marker passes.

_ACCEPTANCE: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


def _entry(item) -> dict | None:
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return None
    number, title = marker.args
    return _ACCEPTANCE.setdefault(number, {"title": title, "status": [], "details": []})


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    entry = _entry(item)
    if entry is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        entry["status"].append("PASS" if rep.passed else ("SKIP" if rep.skipped else "FAIL"))


@pytest.fixture
def acceptance_log(request):
    """Append a detail line shown under the criterion in the summary."""
    entry = _entry(request.node)
    return entry["details"].append if entry is not None else (lambda line: None)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        entry = _ACCEPTANCE[number]
        st = entry["status"]
        verdict = "FAIL" if "FAIL" in st else ("PASS" if "PASS" in st else "SKIP")
        terminalreporter.write_line(f"criterion {number:>2} {verdict}: {entry['title']} ({st.count('PASS')}/{len(st)} tests)")
        for line in entry["details"]:
            terminalreporter.write_line(f"    {line}")
