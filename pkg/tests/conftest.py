import pytest
from hypothesis import settings

from qaffine_verify.scalar import ScalarPoly

settings.register_profile("qav", deadline=None)
settings.load_profile("qav")


@pytest.fixture
def q():
    return ScalarPoly.unit("q")
