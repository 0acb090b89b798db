import pytest

from loctool import catalog as cat
from loctool.config import set_caps


@pytest.fixture(autouse=True)
def _fresh_caps():
    set_caps(None)
    yield
    set_caps(None)


@pytest.fixture(scope="session")
def inst():
    """Materialized catalog objects, built once per session."""
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = cat.get(name).materialize()
        return cache[name]
    return get
