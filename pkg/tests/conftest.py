import pytest

from omlprob import lattice


@pytest.fixture(scope="session")
def b1():
    return lattice.boolean_algebra(1)


@pytest.fixture(scope="session")
def b2():
    return lattice.boolean_algebra(2)


@pytest.fixture(scope="session")
def b3():
    return lattice.boolean_algebra(3)


@pytest.fixture(scope="session")
def mo2():
    return lattice.mo(2)


@pytest.fixture(scope="session")
def mo3():
    return lattice.mo(3)


@pytest.fixture(scope="session")
def hs3():
    # a 3-block horizontal sum that is not MO(n): one 8-element block
    # glued with two 4-element blocks
    return lattice.horizontal_sum([
        lattice.boolean_algebra(3),
        lattice.boolean_algebra(2),
        lattice.boolean_algebra(2),
    ])
