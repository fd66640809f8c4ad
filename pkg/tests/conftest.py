import numpy as np
import pytest

from heawood3d import canonical
from heawood3d.linegraph import DirectedLineGraph


@pytest.fixture(scope="session")
def single():
    return canonical("single_tet")


@pytest.fixture(scope="session")
def double():
    return canonical("double_tet")


@pytest.fixture(scope="session")
def simplex4():
    return canonical("simplex4_boundary")


@pytest.fixture(scope="session")
def cross16():
    return canonical("cross16")


def arcs_graph(n, arcs):
    """A bare directed graph, no face structure needed."""
    arcs = np.asarray(arcs, dtype=np.int64).reshape(-1, 2)
    return DirectedLineGraph(n, arcs[:, 0].copy(), arcs[:, 1].copy(), None)


ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
