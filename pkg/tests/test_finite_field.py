import itertools

import pytest
from hypothesis import given, strategies as st

from picgen.finite_field import (
    FieldError,
    FiniteField,
    artin_schreier_solve,
    first_nonresidue,
    frobenius,
    is_prime,
    make_embedding,
    make_field,
    retract,
    sqrt,
    trace_to_F2,
    trace_to_prime,
)

FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (2, 6), (7, 2)]


def field_and_elements(count=2):
    return st.sampled_from(FIELDS).flatmap(
        lambda pn: st.tuples(st.just(make_field(*pn)), *[st.integers(0, pn[0] ** pn[1] - 1)] * count)
    )


def test_canonical_moduli():
    assert make_field(3, 2).modulus == (1, 0, 1)  # x^2 + 1
    assert make_field(2, 1).modulus == (0, 1)
    assert make_field(2, 4).modulus == (1, 1, 0, 0, 1)  # x^4 + x + 1
    assert make_field(2, 2).modulus == (1, 1, 1)


def test_make_field_is_idempotent():
    assert make_field(3, 3) is make_field(3, 3)
    assert FiniteField.from_spec({"p": 3, "n": 3}).modulus == make_field(3, 3).modulus


def test_from_spec_rejects_reducible_modulus():
    with pytest.raises(FieldError):
        FiniteField.from_spec({"p": 3, "n": 2, "modulus": [2, 0, 1]})  # x^2 - 1
    with pytest.raises(FieldError):
        make_field(4, 1)


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_f4_frobenius_and_trace():
    F4 = make_field(2, 2)
    w = F4(2)
    assert w * w + w + 1 == 0
    assert frobenius(w).value == 3
    assert trace_to_prime(w) == 1
    assert trace_to_prime(F4(1)) == 0


def test_f9_trace_of_i_is_zero():
    F9 = make_field(3, 2)
    i = F9(3)  # theta with theta^2 = -1
    assert i * i == -1
    assert trace_to_prime(i) == 0


def test_sqrt_examples():
    F7 = make_field(7)
    assert sqrt(F7(0)) == 0 and sqrt(F7(1)) == 1
    assert sqrt(F7(2)).value == 3
    assert sqrt(F7(3)) is None
    assert first_nonresidue(F7).value == 3
    assert first_nonresidue(make_field(5)).value == 2


def test_f9_nonresidue_has_order_eight():
    F9 = make_field(3, 2)
    z = first_nonresidue(F9)
    assert z**4 == -1


def test_artin_schreier_examples():
    F4 = make_field(2, 2)
    assert artin_schreier_solve(F4(1)).value == 2  # omega, the smaller of {omega, omega + 1}
    assert artin_schreier_solve(make_field(2)(1)) is None


@pytest.mark.parametrize("pn", [(2, 3), (3, 2), (2, 4), (5, 2), (3, 3)])
def test_artin_schreier_fibers(pn):
    F = make_field(*pn)
    p = F.p
    for a in F.elements():
        fiber = [z for z in F.elements() if z**p - z == a]
        z = artin_schreier_solve(a)
        assert (trace_to_prime(a) == 0) == bool(fiber)
        if fiber:
            assert z == min(fiber, key=lambda e: e.value)
        else:
            assert z is None


@given(field_and_elements(3))
def test_field_axioms(data):
    F, a, b, c = data
    a, b, c = F(a), F(b), F(c)
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if a:
        assert a * a.inverse() == 1
        assert a ** (F.q - 1) == 1


@given(field_and_elements(2))
def test_frobenius_is_additive_and_multiplicative(data):
    F, a, b = data
    a, b = F(a), F(b)
    assert frobenius(a + b) == frobenius(a) + frobenius(b)
    assert frobenius(a * b) == frobenius(a) * frobenius(b)
    assert frobenius(a, F.n) == a


@given(field_and_elements(2), st.integers(0, 6))
def test_trace_is_fp_linear(data, c):
    F, a, b = data
    a, b = F(a), F(b)
    c %= F.p
    assert trace_to_prime(a + F.from_int(c) * b) == (trace_to_prime(a) + c * trace_to_prime(b)) % F.p


@given(field_and_elements(1))
def test_sqrt_roundtrip(data):
    F, a = data
    a = F(a)
    r = sqrt(a)
    if r is not None:
        assert r * r == a
        if F.p != 2:
            assert r.value <= (-r).value


def test_trace_to_f2_requires_char_two():
    with pytest.raises(FieldError):
        trace_to_F2(make_field(3)(1))


@pytest.mark.parametrize("small,big", [((2, 2), (2, 4)), ((3, 1), (3, 2)), ((2, 3), (2, 6)), ((3, 2), (3, 4))])
def test_embedding_is_a_homomorphism(small, big):
    k, K = make_field(*small), make_field(*big)
    emb = make_embedding(k, K)
    for a, b in itertools.product(list(k.elements())[:9], repeat=2):
        assert emb(a + b) == emb(a) + emb(b)
        assert emb(a * b) == emb(a) * emb(b)
        assert retract(emb(a), emb) == a
    outside = next(x for x in K.elements() if frobenius(x, k.n) != x)
    assert retract(outside, emb) is None


def test_embedding_f4_into_f16():
    emb = make_embedding(make_field(2, 2), make_field(2, 4))
    w = emb.image_of_generator
    assert w.value == 6
    assert w * w + w + 1 == 0
