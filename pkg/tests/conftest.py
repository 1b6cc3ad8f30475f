from fractions import Fraction

import pytest
from hypothesis import settings

from domains import iota_real, iota_seq, periodic, real_rational, real_sqrt

settings.register_profile("apartdomain", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("apartdomain")


@pytest.fixture
def sqrt2():
    return iota_real(real_sqrt(2))


@pytest.fixture
def one():
    return iota_real(real_rational(Fraction(1)))


@pytest.fixture
def zero():
    return iota_real(real_rational(Fraction(0)))


@pytest.fixture
def alternating():
    """ι(0101…) in the Cantor domain."""
    return iota_seq(periodic((0, 1)))


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    for var in ("APARTDOMAIN_DEFAULT_FUEL", "APARTDOMAIN_MAX_POSET_SIZE", "APARTDOMAIN_LOG_LEVEL"):
        monkeypatch.delenv(var, raising=False)
