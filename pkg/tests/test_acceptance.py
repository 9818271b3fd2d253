"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s`` or via ``picgen suite``.
"""

import pytest

from picgen import verify


def report(result):
    print()
    print(result.line())
    for f in result.failures[:10]:
        print(f"    {f}")
    return result


@pytest.fixture(scope="module")
def shipped(corpus):
    return corpus


def test_criterion_1_oracle_matches_zeta(shipped, oracle_cache, capsys):
    with capsys.disabled():
        r = report(verify.check_oracle_zeta(shipped, oracle_cache))
    assert r.measured["curves"] >= 12
    assert r.passed


def test_criterion_2_group_law(shipped, oracle_cache, capsys):
    with capsys.disabled():
        r = report(verify.check_group_law(shipped, oracle_cache))
    assert r.passed


def test_criterion_3_end_to_end_generation(shipped, oracle_cache, capsys):
    with capsys.disabled():
        r = report(verify.check_end_to_end(shipped, oracle_cache))
    assert r.passed


def test_criterion_4_falsification_sweep(shipped, oracle_cache, capsys):
    with capsys.disabled():
        r = report(verify.check_falsification(shipped, oracle_cache))
    assert r.passed


def test_criterion_5_character_sums(shipped, oracle_cache, capsys):
    tol = verify.DEFAULT_TOLERANCES
    with capsys.disabled():
        r = report(verify.check_character_sums(shipped, oracle_cache, tol=tol["charsum"], exact_tol=tol["charsum_exact"]))
    assert r.passed


def test_criterion_6_psi_structure(shipped, oracle_cache, capsys):
    with capsys.disabled():
        r = report(verify.check_psi_structure(shipped, oracle_cache))
    assert r.passed


def test_criterion_7_shape_suite(capsys):
    tol = verify.DEFAULT_TOLERANCES
    with capsys.disabled():
        r = report(verify.check_shape_suite(tol=tol["shape"], transport_tol=tol["shape_transport"]))
    assert r.passed


def test_criterion_8_field_layer(capsys):
    with capsys.disabled():
        r = report(verify.check_field_layer(max_q=81))
    assert r.passed


def test_criterion_9_plan_arithmetic(capsys):
    with capsys.disabled():
        r = report(verify.check_plan_arithmetic(max_g=5, max_q=32))
    assert r.passed
