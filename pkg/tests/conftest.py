import pytest
from hypothesis import settings

from picgen.finite_field import make_field
from picgen.curve_model import validate
from picgen.verify import OracleCache, load_corpus

settings.register_profile("picgen", max_examples=60, deadline=None)
settings.load_profile("picgen")


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def corpus_by_name(corpus):
    return {m.name: m for m in corpus}


@pytest.fixture(scope="session")
def oracle_cache():
    return OracleCache()


@pytest.fixture(scope="session")
def e_f5():
    """y^2 = x^3 + x over F_5."""
    return validate(make_field(5), 1, [0, 1, 0, 1], [], "e_f5")


@pytest.fixture(scope="session")
def e_f2():
    """y^2 + xy = x^3 + x^2 + 1 over F_2."""
    return validate(make_field(2), 1, [1, 0, 1, 1], [0, 1], "e_f2")
