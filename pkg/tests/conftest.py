import pytest

from helpers import load_graph


@pytest.fixture(scope="session")
def final_example():
    return load_graph("final_example.gg")


@pytest.fixture(scope="session")
def seven_edge_example():
    return load_graph("seven_edge.gg")


@pytest.fixture(scope="session")
def pattern_atlas():
    from falkkit.patterns import atlas

    return atlas()
