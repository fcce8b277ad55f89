import pytest

from skewcode.config import RingCatalog


@pytest.fixture(scope="session")
def cat() -> RingCatalog:
    return RingCatalog()
