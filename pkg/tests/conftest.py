import pytest

from epshift import verify


@pytest.fixture(scope="session")
def small_family():
    """All binary EPSeq(w, v) with |w| <= 4, |v| <= 6, deduplicated."""
    return verify.exhaustive_family(4, 6)


@pytest.fixture(scope="session")
def random_family():
    return verify.random_instances(200, seed=0)
