from __future__ import annotations

import os

import pytest
from hypothesis import HealthCheck, settings

from peakwalk.graphs import (
    MatrixKind,
    g11_graph,
    g12_graph,
    k2_family_graph,
    petersen_graph,
    xn_graph,
)

ACCEPTANCE_LINES = pytest.StashKey[list]()


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run tests marked slow")


def pytest_configure(config):
    config.stash[ACCEPTANCE_LINES] = []


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow") or os.environ.get("PEAKWALK_RUN_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="slow: pass --runslow or set PEAKWALK_RUN_SLOW=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda x: int(x.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance(request):
    """Record one PASS/FAIL line for an acceptance criterion and return the verdict."""

    def report(k: int, ok: bool, detail: str) -> bool:
        line = f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}"
        print(line)
        request.config.stash[ACCEPTANCE_LINES].append(line)
        return ok

    return report


settings.register_profile(
    "default", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def named_peak_cases():
    """(id, graph, kind) for every worked example that has peak transfer at its pair."""
    cases = [
        ("petersen", petersen_graph(), MatrixKind.ADJACENCY),
        ("g11", g11_graph(), MatrixKind.ADJACENCY),
        ("g12", g12_graph(), MatrixKind.LAPLACIAN),
    ]
    cases += [(f"k2family{n}", k2_family_graph(n), MatrixKind.ADJACENCY) for n in range(1, 7)]
    cases += [(f"xn{n}", xn_graph(n), MatrixKind.ADJACENCY) for n in range(1, 9)]
    return cases


PEAK_CASES = named_peak_cases()


@pytest.fixture(params=PEAK_CASES, ids=[c[0] for c in PEAK_CASES])
def peak_case(request):
    return request.param
