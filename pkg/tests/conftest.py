import numpy as np
import pytest

from qcluster.quiver import preset
from qcluster.verify import context


@pytest.fixture(scope="session")
def a2():
    return preset("a2")


@pytest.fixture(scope="session")
def a4():
    return preset("a4")


@pytest.fixture(scope="session")
def kron():
    return preset("kronecker")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def a2ctx(a2):
    return context(a2, 1)


@pytest.fixture(scope="session")
def kctx(kron):
    return context(kron, 1)
