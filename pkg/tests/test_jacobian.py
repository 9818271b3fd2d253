import random

import pytest
from hypothesis import given, strategies as st

from picgen.curve_model import affine_points, base_change, validate
from picgen.finite_field import make_embedding, make_field
from picgen.jacobian import (
    DivisorError,
    MumfordDivisor,
    add,
    enumerate_picard,
    from_orbit,
    frobenius_orbit,
    group_order_via_zeta,
    identity,
    l_polynomial,
    make_divisor,
    neg,
    phi,
    psi,
    scalar_mul,
)
from picgen.polynomial import Polynomial

# Frozen from two independent oracles that agree: brute-force enumeration of
# reduced Mumford pairs and L(1) from point counts over F_{q^j}, j <= g.
CORPUS_GROUPS = {
    "e_f13": ([1, 5, 13], (19,)),
    "e_f16": ([1, 1, 16], (18,)),
    "e_f2": ([1, -1, 2], (2,)),
    "e_f4": ([1, -1, 4], (4,)),
    "e_f5": ([1, -2, 5], (2, 2)),
    "e_f7": ([1, -2, 7], (6,)),
    "e_f8_eps_plus": ([1, 3, 8], (12,)),
    "e_f9": ([1, -2, 9], (8,)),
    "h2_f16_degh2": ([1, 14, 81, 224, 256], (24, 24)),
    "h2_f2_degh1": ([1, -1, 0, -2, 4], (2,)),
    "h2_f2_degh2": ([1, -1, 2, -2, 4], (4,)),
    "h2_f3": ([1, 3, 7, 9, 9], (29,)),
    "h2_f4_degh1": ([1, -1, 2, -4, 16], (14,)),
    "h2_f4_degh2_eps_plus": ([1, 0, 1, 0, 16], (18,)),
    "h2_f5": ([1, 2, 2, 10, 25], (40,)),
    "h2_f7": ([1, 0, 10, 0, 49], (60,)),
    "h2_f8_degh1": ([1, 3, 16, 24, 64], (108,)),
    "h2_f8_degh2": ([1, 0, 11, 0, 64], (2, 38)),
    "h2_f9": ([1, 0, 2, 0, 81], (84,)),
}


def test_corpus_is_fully_covered(corpus):
    assert sorted(m.name for m in corpus) == sorted(CORPUS_GROUPS)


@pytest.mark.parametrize("name", sorted(CORPUS_GROUPS))
def test_corpus_groups(name, corpus_by_name, oracle_cache):
    m = corpus_by_name[name]
    L, factors = CORPUS_GROUPS[name]
    assert l_polynomial(m) == L
    assert group_order_via_zeta(m) == sum(L)
    T = oracle_cache(m).table
    assert T.order == sum(L)
    assert T.group.invariant_factors == factors


def test_e_f5_elements(e_f5):
    T = enumerate_picard(e_f5)
    assert [D.to_spec() for D in T.elements] == [
        {"u": [1], "v": []},
        {"u": [0, 1], "v": []},
        {"u": [2, 1], "v": []},
        {"u": [3, 1], "v": []},
    ]


def test_make_divisor_validation(e_f5):
    with pytest.raises(DivisorError):
        make_divisor(e_f5, [0, 2], [])  # not monic
    with pytest.raises(DivisorError):
        make_divisor(e_f5, [1, 0, 1], [1])  # degree above the genus
    with pytest.raises(DivisorError):
        make_divisor(e_f5, [1, 1], [0])  # x = 4 gives f = 3, not 0
    assert make_divisor(e_f5, [0, 1], []) == phi(e_f5, affine_points(e_f5)[0])


def test_two_torsion_of_weierstrass_points(e_f5):
    for P in affine_points(e_f5):
        D = phi(e_f5, P)
        assert not D.is_identity()
        assert add(D, D).is_identity()


def test_scalar_mul_by_group_order(corpus, oracle_cache):
    for m in corpus:
        T = oracle_cache(m).table
        for D in T.elements[:: max(1, T.order // 10)]:
            assert scalar_mul(D, T.order).is_identity()
            assert scalar_mul(D, -3) == neg(scalar_mul(D, 3))


def test_reduction_handles_degree_2g_plus_2(corpus_by_name, oracle_cache):
    """Char-2 models with f_{2g+2} != 0 reduce through the shifted model."""
    m = corpus_by_name["h2_f8_degh1"]
    assert m.f.degree == 2 * m.g + 2
    T = oracle_cache(m).table
    index = {D.key() for D in T.elements}
    rng = random.Random(3)
    for _ in range(200):
        a, b = rng.choice(T.elements), rng.choice(T.elements)
        s = add(a, b)
        assert s.key() in index
        assert s.u.degree <= m.g


@st.composite
def corpus_triples(draw):
    models = _small_models()
    m = draw(st.sampled_from(models))
    els = _tables()[m.name]
    pick = st.integers(0, len(els) - 1)
    return m, els[draw(pick)], els[draw(pick)], els[draw(pick)]


_cache = {}


def _small_models():
    if "models" not in _cache:
        from picgen.verify import load_corpus

        _cache["models"] = [m for m in load_corpus() if m.q**m.g <= 256]
    return _cache["models"]


def _tables():
    if "tables" not in _cache:
        _cache["tables"] = {m.name: enumerate_picard(m).elements for m in _small_models()}
    return _cache["tables"]


@given(corpus_triples())
def test_group_law_properties(data):
    m, a, b, c = data
    assert add(add(a, b), c) == add(a, add(b, c))
    assert add(a, b) == add(b, a)
    assert add(a, identity(m)) == a
    assert add(a, neg(a)).is_identity()
    assert a - b == add(a, neg(b))


def _norm_by_conjugates(m, P, emb, big):
    """Sum of phi over the Frobenius orbit, times [k':k]/e, computed over k'."""
    orbit = frobenius_orbit(P, m.field.n)
    total = identity(big)
    for Q in orbit:
        total = add(total, phi(big, Q))
    degree = emb.target.n // m.field.n
    return scalar_mul(total, degree // len(orbit))


def _push(D, emb, big):
    u = Polynomial(big.field, [emb.map_value(c) for c in D.u.coeffs])
    v = Polynomial(big.field, [emb.map_value(c) for c in D.v.coeffs])
    return MumfordDivisor(big, u, v)


@pytest.mark.parametrize("name,ext", [("e_f5", 2), ("e_f5", 3), ("e_f2", 3), ("h2_f3", 2), ("h2_f2_degh2", 3),
                                      ("e_f4", 2), ("h2_f4_degh1", 2)])
def test_from_orbit_is_the_norm(name, ext, corpus_by_name):
    m = corpus_by_name[name]
    K = make_field(m.p, m.field.n * ext)
    emb = make_embedding(m.field, K)
    big = base_change(m, emb)
    pts = affine_points(big)
    for P in pts[:: max(1, len(pts) // 25)]:
        D = from_orbit(m, P, emb, big)
        assert D.model is m
        assert _push(D, emb, big) == _norm_by_conjugates(m, P, emb, big)


def test_psi_on_e_f2(e_f2):
    T = enumerate_picard(e_f2)
    assert [psi(e_f2, D) for D in T.elements] == [0, 1]


def test_divisors_from_different_models_do_not_mix(e_f5, e_f2):
    with pytest.raises(DivisorError):
        add(phi(e_f5, affine_points(e_f5)[0]), phi(e_f2, affine_points(e_f2)[0]))
