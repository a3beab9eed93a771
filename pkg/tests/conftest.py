import pytest

from lpheat import QuadratureConfig


@pytest.fixture(scope="session")
def tight():
    return QuadratureConfig(abs_tol=1e-13, rel_tol=1e-12)


@pytest.fixture(scope="session")
def fast():
    return QuadratureConfig(abs_tol=1e-9, rel_tol=1e-8)
