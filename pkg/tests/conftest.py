from pathlib import Path

import pytest

from dgss.graph import OrientedGraph
from dgss.search import SpectrumIndex

FIXTURES = Path(__file__).parent / "fixtures"

# skew adjacency matrices of the four reference examples, copied verbatim
EXAMPLE1_S = [
    [0, -1, 0, -1, 0],
    [1, 0, -1, 1, 0],
    [0, 1, 0, -1, -1],
    [1, -1, 1, 0, -1],
    [0, 0, 1, 1, 0],
]
EXAMPLE2_S = [
    [0, 1, -1, 0, -1],
    [-1, 0, 0, 1, 0],
    [1, 0, 0, 0, -1],
    [0, -1, 0, 0, 1],
    [1, 0, 1, -1, 0],
]
EXAMPLE2_P = [
    [0, 0, 0, 0, 1],
    [0, 0, 0, 1, 0],
    [0, 0, 1, 0, 0],
    [0, 1, 0, 0, 0],
    [1, 0, 0, 0, 0],
]
EXAMPLE3_S = [
    [0, 0, 0, -1, 0, 1, 0],
    [0, 0, 0, 0, 1, 0, -1],
    [0, 0, 0, 1, -1, 1, 0],
    [1, 0, -1, 0, 0, 0, 0],
    [0, -1, 1, 0, 0, 0, 0],
    [-1, 0, -1, 0, 0, 0, 1],
    [0, 1, 0, 0, 0, -1, 0],
]
EXAMPLE3_P = [
    [0, 0, 0, 1, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0],
    [1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1],
    [0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0],
]
EXAMPLE4_S = [
    [0, 0, 0, 0, 1, 0, -1],
    [0, 0, 1, -1, 0, 0, 1],
    [0, -1, 0, 0, 1, 1, 0],
    [0, 1, 0, 0, -1, 0, -1],
    [-1, 0, -1, 1, 0, 0, 0],
    [0, 0, -1, 0, 0, 0, 1],
    [1, -1, 0, 1, 0, -1, 0],
]
EXAMPLE4_P = [
    [0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0],
    [0, 1, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1],
]


@pytest.fixture
def example1():
    return OrientedGraph.from_matrix(EXAMPLE1_S)


@pytest.fixture
def example2():
    return OrientedGraph.from_matrix(EXAMPLE2_S)


@pytest.fixture
def example3():
    return OrientedGraph.from_matrix(EXAMPLE3_S)


@pytest.fixture
def example4():
    return OrientedGraph.from_matrix(EXAMPLE4_S)


@pytest.fixture
def cyclic_triangle():
    return OrientedGraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)])


@pytest.fixture
def single_arc():
    return OrientedGraph.from_arcs(2, [(0, 1)])


@pytest.fixture(scope="session")
def index5():
    """Spectra of all 59049 labelled oriented graphs on 5 vertices."""
    return SpectrumIndex.build(5)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[key])
