import pytest
from hypothesis import settings

from gpdefo.fixtures import fixture, fixture_modules

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def lam():
    return fixture("lambda")


@pytest.fixture(scope="session")
def gam():
    return fixture("gamma")


@pytest.fixture(scope="session")
def dual_alg():
    return fixture("dual")


@pytest.fixture(scope="session")
def cyc():
    return fixture("cycle3")


@pytest.fixture(scope="session")
def a2():
    return fixture("a2")


@pytest.fixture(scope="session")
def V(lam):
    return fixture_modules("lambda")["V"]


@pytest.fixture(scope="session")
def W(gam):
    return fixture_modules("gamma")["W"]
