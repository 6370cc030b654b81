import pytest

from spectral_cliques import complete_graph, cycle_graph, path_graph, turan_graph


@pytest.fixture(scope="session")
def k3():
    return complete_graph(3)


@pytest.fixture(scope="session")
def k4():
    return complete_graph(4)


@pytest.fixture(scope="session")
def c5():
    return cycle_graph(5)


@pytest.fixture(scope="session")
def p3():
    return path_graph(3)


@pytest.fixture(scope="session")
def k22():
    return turan_graph(2, 4)


@pytest.fixture(scope="session")
def t36():
    return turan_graph(3, 6)
