from __future__ import annotations

from functools import lru_cache

import pytest

from partition_atlas.atlas import edge_dataset
from partition_atlas.graph import build_graph
from partition_atlas.invariants import invariant_table
from partition_atlas.partitions import parse_partition


@lru_cache(maxsize=None)
def graph(n):
    return build_graph(n)


@lru_cache(maxsize=None)
def table(n):
    return invariant_table(graph(n))


@lru_cache(maxsize=None)
def rows(n):
    return tuple(edge_dataset(graph(n), table(n)))


def P(text):
    return parse_partition(text)


def vid(n, text):
    return graph(n).vertex_of(P(text))


@pytest.fixture
def g4():
    return graph(4)


@pytest.fixture
def t4():
    return table(4)


# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
