import pytest

from picgen.curve_model import (
    ModelError,
    ResourceGuardError,
    affine_points,
    base_change,
    char2_invariants,
    count_points,
    in_H_C,
    involution,
    lambda2,
    model_from_spec,
    points_with_x_in,
    solve_y,
    tv,
    validate,
)
from picgen.finite_field import make_embedding, make_field
from picgen.polynomial import Polynomial


@pytest.mark.parametrize(
    "p,n,g,f,h,clause",
    [
        (5, 1, 0, [0, 1], [], "genus"),
        (5, 1, 1, [0, 1, 0, 0, 0, 1], [], "deg_f"),
        (5, 1, 1, [0, 1, 0, 1], [1], "odd_char_h_zero"),
        (5, 1, 1, [0, 0, 1, 1], [], "f_separable"),
        (5, 1, 1, [0, 1, 0, 1, 1], [], "ramified_at_infinity"),
        (2, 1, 1, [1, 0, 1, 1], [], "irreducible"),
        (2, 1, 1, [1, 0, 1, 1], [0, 0, 0, 1], "char2_deg_h"),
        (2, 1, 1, [0, 0, 0, 1], [0, 1], "char2_coprime"),
        (2, 1, 1, [0, 0, 0, 1], [1, 0, 1], "ramified_at_infinity"),
    ],
)
def test_validation_names_the_clause(p, n, g, f, h, clause):
    with pytest.raises(ModelError) as info:
        validate(make_field(p, n), g, f, h)
    assert info.value.clause == clause


def test_square_f_is_reducible():
    # x^4 + 2x^2 + 1 = (x^2 + 1)^2 would also fail separability; use the
    # leading-square rule on an inseparable-free even case instead
    with pytest.raises(ModelError) as info:
        validate(make_field(3), 1, [1, 0, 2, 0, 1], [])
    assert info.value.clause in ("f_separable", "irreducible")


def test_valid_examples(e_f5, e_f2):
    assert e_f5.g == 1 and e_f5.q == 5 and not e_f5.is_exceptional()
    assert e_f2.is_exceptional()


def test_points_of_e_f5(e_f5):
    pts = affine_points(e_f5)
    assert sorted(P.key() for P in pts) == [(0, 0), (2, 0), (3, 0)]
    assert count_points(e_f5) == 4


def test_points_of_e_f2(e_f2):
    assert [P.key() for P in affine_points(e_f2)] == [(0, 1)]
    assert count_points(e_f2) == 2


@pytest.mark.parametrize("j", [1, 2, 3])
def test_count_points_matches_enumeration(corpus, j):
    for m in corpus:
        if m.q**j > 256:
            continue
        if j == 1:
            big = m
        else:
            big = base_change(m, make_embedding(m.field, make_field(m.p, m.field.n * j)))
        brute = 1 + sum(1 for x in big.field.elements() for y in big.field.elements() if big.on_curve(x, y))
        assert count_points(m, j) == brute, m.name


def test_solve_y_returns_sorted_roots(corpus):
    for m in corpus:
        for x in m.field.elements():
            ys = solve_y(m, x)
            assert [y.value for y in ys] == sorted(y.value for y in ys)
            assert all(m.on_curve(x, y) for y in ys)


def test_involution_is_an_involution(corpus):
    for m in corpus:
        for P in affine_points(m):
            Q = involution(m, P)
            assert m.on_curve(Q.x, Q.y)
            assert involution(m, Q) == P


def test_tv():
    F = make_field(7)
    assert tv(Polynomial(F, [1, 3, 1])).value == 4  # -(3)
    with pytest.raises(ValueError):
        tv(Polynomial(F, [1, 3, 2]))


def test_char2_invariants_of_e_f2(e_f2):
    inv = char2_invariants(e_f2)
    assert inv.d0 == 1 and inv.d1 == 1 and inv.h_g == 1
    assert inv.epsilon == -1
    # H_C = {x : lambda2(x) = +1} = {0}
    assert [x.value for x in e_f2.field.elements() if in_H_C(inv, x)] == [0]
    assert lambda2(inv, e_f2.field(1)) == -1


def test_char2_invariants_need_exceptional_case(e_f5):
    with pytest.raises(ModelError):
        char2_invariants(e_f5)


def test_base_change_keeps_points(e_f2):
    emb = make_embedding(e_f2.field, make_field(2, 3))
    big = base_change(e_f2, emb)
    for P in affine_points(e_f2):
        assert big.on_curve(emb(P.x), emb(P.y))


def test_guard_raises(monkeypatch):
    monkeypatch.setenv("PICGEN_GUARD", "100")
    m = validate(make_field(2, 7), 1, [1, 0, 1, 1], [0, 1])
    with pytest.raises(ResourceGuardError):
        affine_points(m)


def test_spec_roundtrip(corpus):
    for m in corpus:
        assert model_from_spec(m.to_spec()) == m


def test_points_with_x_in_subset(e_f5):
    xs = [e_f5.field(v) for v in (0, 1, 2)]
    assert sorted(P.key() for P in points_with_x_in(e_f5, xs)) == [(0, 0), (2, 0)]
