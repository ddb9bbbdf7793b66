import pytest

from grpspec import arith


@pytest.fixture(autouse=True, scope="session")
def _isolated_factor_cache(tmp_path_factory):
    path = tmp_path_factory.mktemp("cache") / "factors.txt"
    arith.set_default_cache(path)
    yield path
    arith.get_default_cache().flush()
