import pytest

from cyclic_lattices.exactla.matrix import IntMatrix
from cyclic_lattices.groupring.base_ring import BaseRing
from cyclic_lattices.groupring.cyclic import CyclicGroup
from cyclic_lattices.lattice.constructors import (
    augmentation_ideal,
    regular_lattice,
    trivial_lattice,
    zeta_twist,
)
from cyclic_lattices.lattice.sampling import random_lattice

CORPUS_GROUPS = (2, 3, 4, 6)
CORPUS_SIZE = 50


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: runs flabby resolutions over the full seeded corpus")


@pytest.fixture
def integers():
    """The base ring Z"""
    return BaseRing.integers()


@pytest.fixture
def c3():
    return CyclicGroup(3)


@pytest.fixture
def c4():
    return CyclicGroup(4)


@pytest.fixture
def c6():
    return CyclicGroup(6)


@pytest.fixture
def regular_c3(integers, c3):
    """Z C_3 on the basis 1, sigma, sigma^2"""
    return regular_lattice(integers, c3)


@pytest.fixture
def trivial_c4(integers, c4):
    return trivial_lattice(integers, c4)


@pytest.fixture
def augmentation_c3(integers, c3):
    """Augmentation ideal of Z C_3"""
    return augmentation_ideal(integers, c3)


@pytest.fixture
def augmentation_c4(integers, c4):
    return augmentation_ideal(integers, c4)


@pytest.fixture
def twist_c3():
    """Z[zeta_3] with sigma acting by zeta_3, as a Z C_3-lattice"""
    return zeta_twist(3)


@pytest.fixture
def shear():
    """A fixed 3x3 unimodular change of basis"""
    return IntMatrix.from_rows([[1, 1, 0], [0, 1, -1], [0, 0, 1]])


@pytest.fixture(scope="session")
def random_corpus():
    """Seeded random lattices over C_2, C_3, C_4 and C_6 of Z-rank 1 to 6"""
    corpus = []
    for n in CORPUS_GROUPS:
        for seed in range(CORPUS_SIZE):
            corpus.append(random_lattice(CyclicGroup(n), seed % 6 + 1, seed))
    return corpus


@pytest.fixture(scope="session")
def small_corpus():
    """Seeded random lattices of Z-rank at most 3, for the costlier checks"""
    corpus = []
    for n in CORPUS_GROUPS:
        for seed in range(6):
            corpus.append(random_lattice(CyclicGroup(n), seed % 3 + 1, 100 + seed))
    return corpus
