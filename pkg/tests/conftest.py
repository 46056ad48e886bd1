import pytest

from dezaforge.catalog import build_graph


@pytest.fixture(scope="session")
def gamma():
    return build_graph("gamma")


@pytest.fixture(scope="session")
def gamma_s2():
    return build_graph("gamma-s2")


@pytest.fixture(scope="session")
def delta():
    return build_graph("delta")


@pytest.fixture(scope="session")
def gamma_k2():
    return build_graph("gamma-k2")


@pytest.fixture(scope="session")
def delta_k2():
    return build_graph("delta-k2")


@pytest.fixture(scope="session")
def petersen():
    return build_graph("petersen")


@pytest.fixture(scope="session")
def c5():
    return build_graph("c5")
