import math

import pytest
from hypothesis import given, strategies as st

from picgen.curve_model import char2_invariants, count_points, in_H_C, validate
from picgen.finite_field import make_field
from picgen.generator_algorithm import (
    _sign,
    build_interval,
    char_sum_table,
    check_generation,
    count_condition,
    generate,
    main_inequality,
    oracle_context,
    plan,
    plan_parameters,
    psi_character,
    twist_violations,
)
from picgen.jacobian import enumerate_picard


def test_worked_plans():
    P = plan_parameters(1, 3, 3)
    assert (P.s, P.t, P.i, P.q_i, P.r, P.interval_size) == (3, 2704, 8, 6561, 972, 1458)
    assert (P.interval_c, P.interval_j) == (2, 6)
    P = plan_parameters(1, 2, 2, True)
    assert (P.s, P.t, P.i, P.q_i, P.r, P.interval_size) == (2, 2704, 12, 4096, 768, 1024)
    assert P.in_H_C and P.interval_size <= 2**11
    P = plan_parameters(2, 3, 3)
    assert (P.t, P.i, P.q_i, P.r, P.interval_size) == (7056, 9, 19683, 2806, 4374)


def test_plan_of_e_f5(e_f5):
    P = plan(e_f5)
    assert P.i == 5 and P.q_i == 3125
    assert 2704 <= P.q_i < 2704 * 5


@given(st.integers(1, 5), st.sampled_from([2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32]))
def test_plan_invariants(g, q):
    p = next(d for d in range(2, q + 1) if q % d == 0)
    P = plan_parameters(g, q, p, p == 2)
    assert P.t <= P.q_i < P.t * q
    assert (P.r - 1) ** 2 < 16 * (2 * g + 1) ** 2 * P.q_i <= P.r**2
    assert P.r <= P.interval_size <= 2 * P.r and 4 * P.r <= P.q_i
    assert 1 <= P.interval_c <= p - 1
    assert P == plan_parameters(g, q, p, p == 2)


@pytest.mark.parametrize("a,b,q", [(3, -1, 5), (-3, 2, 2), (0, 0, 7), (4, -2, 4), (-4, 2, 4), (1, 1, 3)])
def test_exact_sign(a, b, q):
    from fractions import Fraction

    expected = a + b * math.sqrt(q)
    s = _sign(Fraction(a), Fraction(b), q)
    assert s == (0 if abs(expected) < 1e-12 else (1 if expected > 0 else -1))


def test_generate_e_f5(e_f5):
    rep = generate(e_f5)
    T = enumerate_picard(e_f5)
    assert T.group.invariant_factors == (2, 2)
    assert len(T.closure(rep.generators)) == 4
    assert rep.x_values == rep.params.interval_size
    assert not any(D.is_identity() for D in rep.generators)
    assert len({D.key() for D in rep.generators}) == len(rep.generators)


def test_generate_e_f2_uses_H_C(e_f2):
    rep = generate(e_f2)
    assert rep.params.in_H_C
    T = enumerate_picard(e_f2)
    assert len(T.closure(rep.generators)) == 2  # the full group, not ker psi


def test_interval_lies_in_H_C_for_both_signs(corpus_by_name):
    from picgen.curve_model import base_change
    from picgen.finite_field import make_embedding

    for name in ("e_f2", "e_f8_eps_plus", "h2_f4_degh2_eps_plus"):
        m = corpus_by_name[name]
        P = plan(m)
        K = make_field(m.p, m.field.n * P.i)
        big = base_change(m, make_embedding(m.field, K))
        S = build_interval(big, P)
        inv = char2_invariants(big)
        assert len(S) == P.interval_size == len({x.value for x in S})
        assert all(in_H_C(inv, x) for x in S)


def test_trivial_group():
    m = validate(make_field(3), 1, [2, 2, 0, 1], [])
    assert count_points(m) == 1
    rep = generate(m)
    assert rep.generators == []
    assert len(enumerate_picard(m).closure(rep.generators)) == 1


def test_plan_only_when_guard_is_exceeded(e_f5):
    rep = generate(e_f5, guard=1000)
    assert rep.plan_only and rep.generators == []
    assert generate(e_f5, plan_only=True).plan_only


def test_generate_is_deterministic(e_f2):
    assert generate(e_f2).to_dict() == generate(e_f2).to_dict()


def test_check_generation_full_coset(corpus):
    for m in corpus:
        v = check_generation(m, list(m.field.elements()), "coset")
        if v.hypothesis_holds:
            assert v.conclusion_holds, m.name


def test_check_generation_kernel_case(corpus_by_name):
    """S outside H_C generates ker psi once the hypothesis holds."""
    m = corpus_by_name["e_f16"]
    ctx = oracle_context(m)
    inv = ctx.invariants
    S = [x for x in m.field.elements() if not in_H_C(inv, x)]
    v = check_generation(m, S, "coset", ctx)
    assert v.hypothesis_holds and v.meets_H_C is False
    assert v.generated == "ker_psi" and v.conclusion_holds
    assert v.generated_order * 2 == v.full_order


def test_check_generation_rejects_non_cosets(e_f5):
    with pytest.raises(ValueError):
        check_generation(e_f5, [e_f5.field(0), e_f5.field(1)], "coset")
    with pytest.raises(ValueError):
        check_generation(e_f5, [e_f5.field(0)], "sideways")


def test_inequalities():
    # left side 5^(3/2) * 2 * 3 = 67.08; right side (4 + 6 sqrt 5) * size
    assert not main_inequality(4, 1, 5, 3, 1, 3)  # 52.2
    assert main_inequality(4, 1, 5, 3, 1, 4)  # 69.7
    assert count_condition(4, 1, 5)
    assert not count_condition(1, 2, 4)


def test_char_sum_rows_e_f5(e_f5):
    rows = char_sum_table(e_f5)
    trivial = [r for r in rows if r.kind == "trivial"]
    assert len(trivial) == 1 and trivial[0].value == pytest.approx(3)
    for r in rows:
        if r.kind == "trivial_lambda":
            assert abs(r.value + 1) < 1e-9
        if r.kind == "generic":
            assert r.bound == pytest.approx(3 * math.sqrt(5))
            assert abs(r.value) <= r.bound + 1e-6
    assert all(r.ok for r in rows)


def test_char_sums_exceptional(corpus_by_name):
    for name in ("e_f2", "e_f8_eps_plus", "h2_f8_degh2"):
        m = corpus_by_name[name]
        ctx = oracle_context(m)
        rows = char_sum_table(m, ctx)
        assert all(r.ok for r in rows), name
        special = [r for r in rows if r.kind == "lambda2_chi2"]
        assert len(special) == 1
        assert special[0].value == pytest.approx(ctx.invariants.epsilon * (ctx.num_points - 1))
        assert twist_violations(m, ctx) == []


def test_psi_character_matches_psi(corpus_by_name):
    m = corpus_by_name["h2_f8_degh2"]
    ctx = oracle_context(m)
    chi2 = psi_character(ctx)
    G = ctx.table.group
    for D, b in ctx.psi_values.items():
        assert chi2(G.element(ctx.table.coords(D))) == pytest.approx((-1) ** b)
