import pytest

from scatpoly.fields import build_field


@pytest.fixture(scope="session")
def ctx33():
    return build_field(3, 1, 3)


@pytest.fixture(scope="session")
def ctx53():
    return build_field(5, 1, 3)


@pytest.fixture(scope="session")
def ctx34():
    return build_field(3, 1, 4)


@pytest.fixture(scope="session")
def ctx923():
    # q = 9 = 3^2 exercises the e > 1 paths
    return build_field(3, 2, 3)
