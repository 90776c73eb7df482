from functools import lru_cache

import pytest

from sumsquares.polytopes import build
from sumsquares.symmetry import decompose_edges, symmetry_group

ACCEPTANCE_LINES = []


def pytest_addoption(parser):
    parser.addoption("--run-slow", action="store_true", help="include 600-cell runs")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow") or "slow" in (config.getoption("-m") or ""):
        return
    skip = pytest.mark.skip(reason="slow; use --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@lru_cache(maxsize=None)
def polytope(name):
    return build(name)


@lru_cache(maxsize=None)
def group(name):
    return symmetry_group(polytope(name))


@lru_cache(maxsize=None)
def decomposition(name):
    return decompose_edges(polytope(name), group(name))
