import pytest
from hypothesis import given, strategies as st

from picgen.finite_field import make_field
from picgen.polynomial import (
    Polynomial,
    derivative,
    enumerate_monic,
    factor,
    gcd,
    is_irreducible,
    is_separable,
    lagrange_interpolate,
    roots,
    squarefree_decomposition,
    xgcd,
)

FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2), (2, 4), (7, 1)]


def poly_pairs():
    def build(pn):
        F = make_field(*pn)
        coeffs = st.lists(st.integers(0, F.q - 1), max_size=7)
        return st.tuples(st.just(F), coeffs, coeffs)

    return st.sampled_from(FIELDS).flatmap(build)


def test_trimming_and_degree():
    F = make_field(5)
    assert Polynomial(F, [1, 2, 0, 0]).degree == 1
    assert Polynomial(F, []).degree == -1
    assert Polynomial(F, [0, 0]).is_zero()


def test_factor_x3_plus_x_over_f5():
    F = make_field(5)
    f = Polynomial(F, [0, 1, 0, 1])
    facs = factor(f)
    assert [g.to_list() for g, e in facs] == [[0, 1], [2, 1], [3, 1]]
    assert all(e == 1 for _, e in facs)
    assert [r.value for r in roots(f)] == [0, 2, 3]


def test_squarefree_decomposition_recovers_powers():
    F = make_field(3)
    a = Polynomial(F, [1, 1])  # x + 1
    b = Polynomial(F, [1, 0, 1])  # x^2 + 1, irreducible over F_3
    f = a**3 * b**2
    parts = squarefree_decomposition(f)
    prod = Polynomial.constant(F, 1)
    for g, e in parts:
        prod = prod * g**e
    assert prod == f.monic()
    assert not is_separable(f)


def test_derivative_vanishes_on_pth_powers():
    F = make_field(2, 2)
    assert derivative(Polynomial(F, [1, 0, 3]) ** 2).is_zero()


def test_irreducible_count_matches_necklace_formula():
    # monic irreducibles of degree 2 over F_q number (q^2 - q) / 2
    for pn in [(2, 1), (3, 1), (2, 2), (5, 1)]:
        F = make_field(*pn)
        count = sum(1 for f in enumerate_monic(F, 2) if is_irreducible(f))
        assert count == (F.q**2 - F.q) // 2


@given(poly_pairs())
def test_divmod_identity(data):
    F, a, b = data
    a, b = Polynomial(F, a), Polynomial(F, b)
    if b.is_zero():
        with pytest.raises(ZeroDivisionError):
            divmod(a, b)
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(poly_pairs())
def test_xgcd_bezout(data):
    F, a, b = data
    a, b = Polynomial(F, a), Polynomial(F, b)
    g, s, t = xgcd(a, b)
    assert s * a + t * b == g
    if not g.is_zero():
        assert g.is_monic()
        assert (a % g).is_zero() and (b % g).is_zero()
        assert g == gcd(a, b)


@given(poly_pairs())
def test_factor_multiplies_back(data):
    F, a, _ = data
    a = Polynomial(F, a)
    if a.degree < 1:
        return
    prod = Polynomial.constant(F, a.leading)
    for g, e in factor(a):
        assert g.is_monic() and is_irreducible(g)
        prod = prod * g**e
    assert prod == a


@given(poly_pairs())
def test_lagrange_interpolation_hits_points(data):
    F, xs, ys = data
    pts = {}
    for x, y in zip(xs, ys):
        pts.setdefault(x, y)
    points = [(F(x), F(y)) for x, y in pts.items()]
    w = lagrange_interpolate(points, F)
    assert w.degree < max(len(points), 1)
    for x, y in points:
        assert w(x) == y


def test_evaluation_matches_horner():
    F = make_field(7)
    f = Polynomial(F, [3, 0, 2, 1])
    for x in F.elements():
        assert f(x) == x**3 + 2 * x * x + 3
