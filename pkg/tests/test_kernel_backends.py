"""The compiled kernel and the pure-Python fallback must agree bit for bit."""

import os
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from picgen import _pykernel
from picgen.finite_field import make_field

cy = pytest.importorskip("picgen._kernel", reason="compiled kernel not built")

FIELDS = [(2, 1), (2, 5), (2, 12), (3, 1), (3, 7), (5, 3), (7, 4), (13, 2), (31, 1), (65521, 1), (2, 40)]


def kernels(pn):
    F = make_field(*pn)
    return F, cy.FieldKernel(F.p, F.n, F.modulus), _pykernel.FieldKernel(F.p, F.n, F.modulus)


@pytest.mark.parametrize("pn", FIELDS)
@given(data=st.data())
def test_scalar_ops_agree(pn, data):
    F, a_k, b_k = kernels(pn)
    x = data.draw(st.integers(0, F.q - 1))
    y = data.draw(st.integers(0, F.q - 1))
    c = data.draw(st.integers(0, F.p - 1))
    e = data.draw(st.integers(0, 10**6))
    for name in ("add", "sub", "mul"):
        assert getattr(a_k, name)(x, y) == getattr(b_k, name)(x, y)
    assert a_k.neg(x) == b_k.neg(x)
    assert a_k.scale(c, x) == b_k.scale(c, x)
    assert a_k.pow(x, e) == b_k.pow(x, e)
    if x:
        assert a_k.inv(x) == b_k.inv(x)
        assert a_k.mul(x, a_k.inv(x)) == 1


@pytest.mark.parametrize("pn", FIELDS[:9])
@given(data=st.data())
def test_poly_ops_agree(pn, data):
    F, a_k, b_k = kernels(pn)
    elems = st.integers(0, F.q - 1)
    f = data.draw(st.lists(elems, min_size=1, max_size=8))
    g = data.draw(st.lists(elems, min_size=1, max_size=6).filter(lambda v: v[-1] != 0))
    x = data.draw(elems)
    assert a_k.poly_eval(f, x) == b_k.poly_eval(f, x)
    assert list(a_k.poly_mul(f, g)) == list(b_k.poly_mul(f, g))
    qa, ra = a_k.poly_divmod(f, g)
    qb, rb = b_k.poly_divmod(f, g)
    assert (list(qa), list(ra)) == (list(qb), list(rb))


def test_backend_switch_by_environment():
    code = "import picgen; print(picgen.BACKEND)"
    env = dict(os.environ, PICGEN_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
    env["PICGEN_PURE"] = "0"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "cython"


def test_pure_backend_end_to_end():
    """A full generate-and-verify run on the fallback kernel."""
    code = (
        "from picgen.verify import load_curve, shipped_corpus_dir\n"
        "from picgen.generator_algorithm import generate\n"
        "from picgen.jacobian import enumerate_picard\n"
        "m = load_curve(shipped_corpus_dir() / 'e_f5.json')\n"
        "T = enumerate_picard(m)\n"
        "print(len(T.closure(generate(m).generators)), T.order, list(T.group.invariant_factors))\n"
    )
    env = dict(os.environ, PICGEN_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["4", "4", "[2,", "2]"]
