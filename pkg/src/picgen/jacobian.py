"""Pic^0 of a ramified hyperelliptic model in Mumford representation.

A class is the unique reduced pair (u, v): u monic with deg u <= g,
deg v < deg u, and u | v^2 + h v - f. The group law is Cantor's composition
followed by reduction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

from .abelian_group import GroupIsomorphism, structure_from_table
from .curve_model import (
    AffinePoint,
    HyperellipticModel,
    base_change,
    char2_invariants,
    check_guard,
    count_points,
    involution,
    tv,
)
from .finite_field import FieldElement, FieldEmbedding, frobenius, trace_to_F2
from .polynomial import Polynomial, lagrange_interpolate, xgcd


class DivisorError(ValueError):
    """Divisor data that does not describe a class on the given model."""


class MumfordDivisor:
    __slots__ = ("model", "u", "v")

    def __init__(self, model: HyperellipticModel, u: Polynomial, v: Polynomial):
        self.model = model
        self.u = u
        self.v = v

    def key(self) -> tuple:
        return (self.u.coeffs, self.v.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, MumfordDivisor) and self.key() == other.key() and self.model == other.model

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"({self.u}, {self.v})"

    def __add__(self, other: "MumfordDivisor") -> "MumfordDivisor":
        return add(self, other)

    def __neg__(self) -> "MumfordDivisor":
        return neg(self)

    def __sub__(self, other: "MumfordDivisor") -> "MumfordDivisor":
        return add(self, neg(other))

    def __mul__(self, m: int) -> "MumfordDivisor":
        return scalar_mul(self, m)

    __rmul__ = __mul__

    def is_identity(self) -> bool:
        return self.u.degree == 0

    @property
    def degree(self) -> int:
        return self.u.degree

    def to_spec(self) -> dict:
        return {"u": self.u.to_list(), "v": self.v.to_list()}


def make_divisor(model: HyperellipticModel, u, v) -> MumfordDivisor:
    """Validate a reduced pair (u, v) supplied from outside."""
    k = model.field
    u = u if isinstance(u, Polynomial) else Polynomial(k, u)
    v = v if isinstance(v, Polynomial) else Polynomial(k, v)
    if not u.is_monic():
        raise DivisorError("u must be monic")
    if u.degree > model.g:
        raise DivisorError("u has degree above the genus; the pair is not reduced")
    if v.degree >= u.degree:
        raise DivisorError("deg v must be below deg u")
    if (v * v + model.h * v - model.f) % u:
        raise DivisorError("u does not divide v^2 + h v - f")
    return MumfordDivisor(model, u, v)


def divisor_from_spec(model: HyperellipticModel, spec: dict) -> MumfordDivisor:
    return make_divisor(model, spec.get("u", [1]), spec.get("v", []))


def identity(model: HyperellipticModel) -> MumfordDivisor:
    k = model.field
    return MumfordDivisor(model, Polynomial.constant(k, 1), Polynomial(k))


def reduce_divisor(model: HyperellipticModel, u: Polynomial, v: Polynomial) -> MumfordDivisor:
    """Reduce a semi-reduced pair to the unique reduced representative."""
    h, g = model.h, model.g
    f, A = model.reduction_form()
    if u.degree <= g:
        return MumfordDivisor(model, u.monic(), v % u)
    # reduce on the isomorphic model y -> y + A, then map back
    v = (v + A) % u
    while u.degree > g:
        u = (f - v * h - v * v).exact_div(u)
        v = (-h - v) % u
    u = u.monic()
    return MumfordDivisor(model, u, (v - A) % u)


def add(D1: MumfordDivisor, D2: MumfordDivisor) -> MumfordDivisor:
    if D1.model is not D2.model and D1.model != D2.model:
        raise DivisorError("divisors live on different models")
    model = D1.model
    if D1.u.degree == 0:
        return D2
    if D2.u.degree == 0:
        return D1
    u1, v1, u2, v2 = D1.u, D1.v, D2.u, D2.v
    d1, e1, e2 = xgcd(u1, u2)
    if d1.degree == 0:
        # coprime supports: plain CRT composition
        u = u1 * u2
        v = (e1 * u1 * v2 + e2 * u2 * v1) % u
        return reduce_divisor(model, u, v)
    d, c1, c2 = xgcd(d1, v1 + v2 + model.h)
    s1, s2, s3 = c1 * e1, c1 * e2, c2
    u = (u1 * u2).exact_div(d * d)
    v = (s1 * u1 * v2 + s2 * u2 * v1 + s3 * (v1 * v2 + model.f)).exact_div(d) % u
    return reduce_divisor(model, u, v)


def neg(D: MumfordDivisor) -> MumfordDivisor:
    if D.u.degree == 0:
        return D
    return MumfordDivisor(D.model, D.u, (-D.v - D.model.h) % D.u)


def scalar_mul(D: MumfordDivisor, m: int) -> MumfordDivisor:
    if m < 0:
        return scalar_mul(neg(D), -m)
    out = identity(D.model)
    base = D
    while m:
        if m & 1:
            out = add(out, base)
        m >>= 1
        if m:
            base = add(base, base)
    return out


def phi(model: HyperellipticModel, P: AffinePoint) -> MumfordDivisor:
    """The class of [P] - [inf']."""
    k = model.field
    if not model.on_curve(P.x, P.y):
        raise DivisorError(f"{P} is not on the curve")
    return MumfordDivisor(model, Polynomial(k, [(-P.x).value, 1]), Polynomial(k, [P.y.value]))


def psi(model: HyperellipticModel, D: MumfordDivisor) -> int:
    """The index-2 homomorphism Pic^0 -> F_2 of the exceptional case."""
    inv = char2_invariants(model)
    if D.u.degree == 0:
        return 0
    t = tv(D.u) * inv.d1 + model.field.from_int(D.u.degree) * inv.d0
    return trace_to_F2(t / (inv.h_g * inv.h_g))


# -- norm from an extension -------------------------------------------------


def frobenius_orbit(P: AffinePoint, base_degree: int) -> list[AffinePoint]:
    """Orbit of P under the q-power Frobenius, q = p^base_degree."""
    orbit = [P]
    while True:
        last = orbit[-1]
        nxt = AffinePoint(frobenius(last.x, base_degree), frobenius(last.y, base_degree))
        if nxt == P:
            return orbit
        orbit.append(nxt)


def from_orbit(model_k: HyperellipticModel, P: AffinePoint, emb: FieldEmbedding,
               model_big: Optional[HyperellipticModel] = None) -> MumfordDivisor:
    """The norm to k of [P] - [inf''] for a point P over the extension k'."""
    if emb.source != model_k.field:
        raise DivisorError("embedding does not start at the model's field")
    big = model_big if model_big is not None else base_change(model_k, emb)
    if not big.on_curve(P.x, P.y):
        raise DivisorError(f"{P} is not on the base-changed curve")
    k = model_k.field
    degree = emb.target.n // k.n
    orbit = frobenius_orbit(P, k.n)
    e = len(orbit)
    conj = involution(big, P)
    if conj != P and conj in orbit:
        # pairs {Q, iota Q} add up to div(prod (x - x(Q)))
        return identity(model_k)
    xs = {Q.x.value for Q in orbit}
    assert len(xs) == e, "orbit with repeated x-coordinates that is not involution-paired"
    K = emb.target
    m = Polynomial.from_roots(K, (Q.x for Q in orbit))
    w = lagrange_interpolate([(Q.x, Q.y) for Q in orbit], K)
    u = _retract_poly(m, emb, k)
    v = _retract_poly(w, emb, k)
    orbit_class = reduce_divisor(model_k, u, v)
    return scalar_mul(orbit_class, degree // e)


def _retract_poly(a: Polynomial, emb: FieldEmbedding, k) -> Polynomial:
    out = []
    for c in a.coeffs:
        r = emb.retract_value(c)
        assert r is not None, "Frobenius-stable polynomial has a coefficient outside k"
        out.append(r)
    return Polynomial(k, out)


# -- brute-force oracle -----------------------------------------------------


def group_order_via_zeta(model: HyperellipticModel) -> int:
    """L(1) from #C(F_{q^j}), j = 1..g, via Newton's identities."""
    g, q = model.g, model.q
    sums = [q**j + 1 - count_points(model, j) for j in range(1, g + 1)]
    c = [1]
    for k in range(1, g + 1):
        acc = -sum(sums[j - 1] * c[k - j] for j in range(1, k + 1))
        if acc % k:
            raise ArithmeticError("non-integral L-polynomial coefficient")
        c.append(acc // k)
    for k in range(g + 1, 2 * g + 1):
        c.append(q ** (k - g) * c[2 * g - k])
    order = sum(c)
    lo = (math.isqrt(q) - 1) ** (2 * g) if math.isqrt(q) ** 2 == q else (math.sqrt(q) - 1) ** (2 * g)
    hi = (math.sqrt(q) + 1) ** (2 * g)
    if not (order >= 1 and lo - 1e-9 <= order <= hi + 1e-9):
        raise ArithmeticError(f"L(1) = {order} outside the Weil interval")
    return order


def l_polynomial(model: HyperellipticModel) -> list[int]:
    g, q = model.g, model.q
    sums = [q**j + 1 - count_points(model, j) for j in range(1, g + 1)]
    c = [1]
    for k in range(1, g + 1):
        c.append(-sum(sums[j - 1] * c[k - j] for j in range(1, k + 1)) // k)
    for k in range(g + 1, 2 * g + 1):
        c.append(q ** (k - g) * c[2 * g - k])
    return c


def enumerate_divisors(model: HyperellipticModel) -> list[MumfordDivisor]:
    """Every reduced pair (u, v), in canonical order."""
    k = model.field
    q, g = k.q, model.g
    check_guard(sum(q ** (2 * d) for d in range(g + 1)), "Picard enumeration")
    ker = k.kernel
    fl, hl = list(model.f.coeffs), list(model.h.coeffs)
    out = [identity(model)]
    for d in range(1, g + 1):
        for low in range(q**d):
            ucs = []
            t = low
            for _ in range(d):
                t, r = divmod(t, q)
                ucs.append(r)
            ul = ucs + [1]
            fm = ker.poly_divmod(fl, ul)[1]
            hm = ker.poly_divmod(hl, ul)[1]
            for vlow in range(q**d):
                vl = []
                t = vlow
                for _ in range(d):
                    t, r = divmod(t, q)
                    vl.append(r)
                while vl and vl[-1] == 0:
                    vl.pop()
                # v^2 + (h mod u) v - (f mod u) = 0 mod u
                lhs = ker.poly_mul(vl, vl)
                hv = ker.poly_mul(hm, vl)
                acc = _poly_sub(ker, _poly_add(ker, lhs, hv), fm)
                if not ker.poly_divmod(acc, ul)[1]:
                    out.append(MumfordDivisor(model, Polynomial._raw(k, ul), Polynomial._raw(k, vl)))
    return out


def _poly_add(ker, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = ker.add(out[i], c)
    while out and out[-1] == 0:
        out.pop()
    return out


def _poly_sub(ker, a, b):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = ker.sub(out[i], c)
    while out and out[-1] == 0:
        out.pop()
    return out


@dataclass
class PicardTable:
    model: HyperellipticModel
    elements: list[MumfordDivisor]
    iso: GroupIsomorphism

    @property
    def group(self):
        return self.iso.group

    @property
    def order(self) -> int:
        return len(self.elements)

    def coords(self, D: MumfordDivisor) -> tuple[int, ...]:
        return self.iso.to_coords[D]

    def element_at(self, coords) -> MumfordDivisor:
        return self.iso.from_coords[tuple(coords)]

    def closure(self, gens: Iterable[MumfordDivisor]) -> frozenset:
        """Coordinates of the subgroup generated by ``gens``."""
        from .abelian_group import subgroup_generated

        G = self.group
        return subgroup_generated(G, (self.iso.to_group(D) for D in gens))


def enumerate_picard(model: HyperellipticModel, check_order: bool = True) -> PicardTable:
    elements = enumerate_divisors(model)
    if check_order:
        expected = group_order_via_zeta(model)
        if len(elements) != expected:
            raise ArithmeticError(f"enumerated {len(elements)} classes but L(1) = {expected}")
    iso = structure_from_table(elements, add, identity=elements[0])
    return PicardTable(model, elements, iso)
