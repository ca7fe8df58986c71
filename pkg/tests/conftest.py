import pytest

from stagedpaths import fixtures


@pytest.fixture(scope="session")
def ladder2():
    return fixtures.load("ladder2")


@pytest.fixture(scope="session")
def alt23():
    return fixtures.load("alt23")


@pytest.fixture(scope="session")
def fork():
    return fixtures.load("fork")


@pytest.fixture(scope="session")
def loop1():
    return fixtures.load("loop1")


@pytest.fixture(scope="session")
def exp2():
    return fixtures.load("exp2")
