import json
import sys
from importlib import resources
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from activebij import OrderedGraph
from activebij.orientation import Digraph

DATA = Path(__file__).parent / "data"


def shipped(name: str) -> OrderedGraph:
    doc = json.loads(resources.files("activebij").joinpath("data", f"{name}.json").read_text())
    return OrderedGraph(doc["vertices"], [tuple(e) for e in doc["edges"]])


@pytest.fixture(scope="session")
def k3() -> OrderedGraph:
    return shipped("k3")


@pytest.fixture(scope="session")
def k4() -> OrderedGraph:
    return shipped("k4")


@pytest.fixture(scope="session")
def k4_ref(k4) -> Digraph:
    return Digraph(k4, 0)


def isthmus() -> OrderedGraph:
    return OrderedGraph(2, [(0, 1)])


def loop() -> OrderedGraph:
    return OrderedGraph(1, [(0, 0)])


@st.composite
def small_graphs(draw, max_vertices=4, max_edges=6):
    """Connected multigraphs with loops, arbitrary edge order and directions."""
    n = draw(st.integers(1, max_vertices))
    tree = [(draw(st.integers(0, v - 1)), v) for v in range(1, n)]
    extra_count = draw(st.integers(0 if n > 1 else 1, max_edges - len(tree)))
    vertex = st.integers(0, n - 1)
    extra = [(draw(vertex), draw(vertex)) for _ in range(extra_count)]
    pairs = draw(st.permutations(tree + extra))
    flips = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    pairs = [(v, u) if f else (u, v) for (u, v), f in zip(pairs, flips)]
    return OrderedGraph(n, pairs)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module and module.LINES:
        terminalreporter.section("acceptance criteria")
        for line in module.LINES:
            terminalreporter.write_line(line)
