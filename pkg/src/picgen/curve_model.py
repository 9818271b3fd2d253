"""Hyperelliptic models y^2 + h(x) y = f(x) ramified at infinity."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Optional

from .finite_field import (
    FieldElement,
    FieldEmbedding,
    FiniteField,
    artin_schreier_solve,
    make_embedding,
    make_field,
    sqrt,
    trace_to_F2,
    trace_to_prime,
)
from .polynomial import Polynomial, derivative, gcd, is_separable, squarefree_decomposition

DEFAULT_GUARD = 10**6


class ResourceGuardError(RuntimeError):
    """A desk-scale size limit would be exceeded."""


class ModelError(ValueError):
    """The pair (f, h) violates a named model condition."""

    def __init__(self, clause: str, message: str):
        super().__init__(f"{clause}: {message}")
        self.clause = clause


def desk_guard() -> int:
    """Size limit for exhaustive work; PICGEN_GUARD raises it explicitly."""
    raw = os.environ.get("PICGEN_GUARD")
    return int(raw) if raw else DEFAULT_GUARD


def check_guard(size: int, what: str) -> None:
    limit = desk_guard()
    if size > limit:
        raise ResourceGuardError(f"{what} needs {size} > guard {limit}; set PICGEN_GUARD to allow it")


@dataclass(frozen=True)
class AffinePoint:
    x: FieldElement
    y: FieldElement

    def key(self) -> tuple[int, int]:
        return (self.x.value, self.y.value)

    def __repr__(self) -> str:
        return f"({self.x.value}, {self.y.value})"


class HyperellipticModel:
    """A validated model; build it with :func:`validate`."""

    def __init__(self, field: FiniteField, g: int, f: Polynomial, h: Polynomial, name: Optional[str] = None):
        self.field = field
        self.g = g
        self.f = f
        self.h = h
        self.name = name

    def __repr__(self) -> str:
        label = f"{self.name}: " if self.name else ""
        return f"<{label}y^2 + ({self.h}) y = {self.f} over {self.field!r}, g={self.g}>"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HyperellipticModel)
            and self.field == other.field
            and self.g == other.g
            and self.f == other.f
            and self.h == other.h
        )

    def __hash__(self) -> int:
        return hash((self.field, self.g, self.f, self.h))

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def p(self) -> int:
        return self.field.p

    def is_exceptional(self) -> bool:
        """Characteristic 2 with deg(h) = g, where psi_C exists."""
        return self.field.p == 2 and self.h.degree == self.g

    def reduction_form(self) -> tuple[Polynomial, Polynomial]:
        """(f', A) with y -> y + A turning the model into one with deg f' <= 2g+1.

        Only characteristic-2 models with f_{2g+2} != 0 need the shift
        A = sqrt(f_{2g+2}) x^{g+1}; everywhere else A = 0 and f' = f.
        """
        cached = self.__dict__.get("_reduction_form")
        if cached is None:
            top = self.f[2 * self.g + 2]
            if not top:
                cached = (self.f, Polynomial(self.field))
            else:
                A = Polynomial.x(self.field) ** (self.g + 1) * Polynomial.constant(self.field, sqrt(top))
                cached = (self.f - A * self.h - A * A, A)
            self._reduction_form = cached
        return cached

    def on_curve(self, x: FieldElement, y: FieldElement) -> bool:
        return y * y + self.h(x) * y == self.f(x)

    def to_spec(self) -> dict:
        out = {
            "field": self.field.to_spec(),
            "g": self.g,
            "f": self.f.to_list(),
            "h": self.h.to_list(),
        }
        if self.name:
            out["name"] = self.name
        return out


def validate(field: FiniteField, g: int, f, h, name: Optional[str] = None) -> HyperellipticModel:
    """Check every model condition in order and return the model.

    Raises ModelError naming the first condition that fails.
    """
    if not isinstance(f, Polynomial):
        f = Polynomial(field, f)
    if not isinstance(h, Polynomial):
        h = Polynomial(field, h)
    if g < 1:
        raise ModelError("genus", f"genus must be >= 1, got {g}")
    if f.degree not in (2 * g + 1, 2 * g + 2):
        raise ModelError("deg_f", f"deg(f) = {f.degree} not in {{{2 * g + 1}, {2 * g + 2}}}")
    if field.p != 2:
        if h:
            raise ModelError("odd_char_h_zero", "h must be 0 in odd characteristic")
        if not is_separable(f):
            raise ModelError("f_separable", "f is not separable")
        if all(m % 2 == 0 for _, m in squarefree_decomposition(f)) and _leading_is_square(f):
            raise ModelError("irreducible", "y^2 - f is reducible (f is a square)")
        if f.degree != 2 * g + 1:
            raise ModelError("ramified_at_infinity", "odd characteristic needs deg(f) = 2g+1")
    else:
        if not h:
            raise ModelError("irreducible", "h = 0 makes y^2 + hy - f inseparable in characteristic 2")
        if h.degree > g + 1:
            raise ModelError("char2_deg_h", f"deg(h) = {h.degree} > g+1")
        dh, df = derivative(h), derivative(f)
        if gcd(h, dh * dh * f + df * df).degree != 0:
            raise ModelError("char2_coprime", "gcd(h, h'^2 f + f'^2) != 1")
        hg1 = h[g + 1]
        lead = h[g] * h[g] * f[2 * g + 2] + f[2 * g + 1] * f[2 * g + 1]
        if not hg1 and not lead:
            raise ModelError("char2_leading", "h_{g+1} and h_g^2 f_{2g+2} + f_{2g+1}^2 both vanish")
        if not 1 <= h.degree <= g:
            raise ModelError("ramified_at_infinity", "characteristic 2 needs 1 <= deg(h) <= g")
        d1 = f[2 * g + 1] + sqrt(f[2 * g + 2]) * h[g]
        if not d1:
            raise ModelError("char2_d1", "d1 = f_{2g+1} + sqrt(f_{2g+2}) h_g vanishes")
    return HyperellipticModel(field, g, f, h, name)


def _leading_is_square(f: Polynomial) -> bool:
    from .finite_field import is_square

    return is_square(f.leading)


def model_from_spec(spec: dict) -> HyperellipticModel:
    field = FiniteField.from_spec(spec["field"])
    return validate(field, int(spec["g"]), spec.get("f", []), spec.get("h", []), spec.get("name"))


# -- points ------------------------------------------------------------------


def solve_y(model: HyperellipticModel, x: FieldElement) -> list[FieldElement]:
    """All y in k with (x, y) on the affine curve, sorted by encoding."""
    k = model.field
    fx = model.f(x)
    if k.p != 2:
        r = sqrt(fx)
        if r is None:
            return []
        if not r:
            return [r]
        return sorted([r, -r], key=lambda e: e.value)
    hx = model.h(x)
    if not hx:
        return [sqrt(fx)]
    # y = h(x) z with z^2 + z = f(x) / h(x)^2
    z = artin_schreier_solve(fx / (hx * hx))
    if z is None:
        return []
    return sorted([hx * z, hx * (z + 1)], key=lambda e: e.value)


def points_with_x_in(model: HyperellipticModel, S: Iterable[FieldElement]) -> list[AffinePoint]:
    out = []
    for x in S:
        for y in solve_y(model, x):
            out.append(AffinePoint(x, y))
    return out


def affine_points(model: HyperellipticModel) -> list[AffinePoint]:
    check_guard(model.q, "point enumeration")
    return points_with_x_in(model, model.field.elements())


def count_points(model: HyperellipticModel, j: int = 1) -> int:
    """#C(F_{q^j}), the point at infinity included."""
    if j < 1:
        raise ValueError("extension degree must be >= 1")
    k = model.field
    check_guard(k.q**j, "point count")
    if j == 1:
        big = model
    else:
        big = base_change(model, make_embedding(k, make_field(k.p, k.n * j)))
    K = big.field
    ker = K.kernel
    fc, hc = list(big.f.coeffs), list(big.h.coeffs)
    total = 1
    if K.p != 2:
        e = (K.q - 1) // 2
        for x in range(K.q):
            v = ker.poly_eval(fc, x)
            if v == 0:
                total += 1
            elif ker.pow(v, e) == 1:
                total += 2
    else:
        for x in range(K.q):
            hx = ker.poly_eval(hc, x)
            if hx == 0:
                total += 1
                continue
            hinv = ker.inv(hx)
            c = ker.mul(ker.poly_eval(fc, x), ker.mul(hinv, hinv))
            if trace_to_prime(FieldElement(K, c)) == 0:
                total += 2
    return total


def involution(model: HyperellipticModel, P: AffinePoint) -> AffinePoint:
    return AffinePoint(P.x, -P.y - model.h(P.x))


def tv(u: Polynomial) -> FieldElement:
    """Negated sub-leading coefficient of a monic polynomial."""
    if not u.is_monic() or u.degree < 1:
        raise ValueError("tv needs a monic polynomial of degree >= 1")
    return -u[u.degree - 1]


def base_change(model: HyperellipticModel, emb: FieldEmbedding) -> HyperellipticModel:
    if emb.source != model.field:
        raise ModelError("base_change", "embedding source is not the model's field")
    K = emb.target
    f = Polynomial(K, [emb.map_value(c) for c in model.f.coeffs])
    h = Polynomial(K, [emb.map_value(c) for c in model.h.coeffs])
    return validate(K, model.g, f, h, model.name)


# -- characteristic-2 invariants --------------------------------------------


@dataclass(frozen=True)
class Char2Invariants:
    d0: FieldElement
    d1: FieldElement
    h_g: FieldElement
    epsilon: int
    lambda2_scale: FieldElement
    d0_scale: FieldElement  # d0 / h_g^2


def char2_invariants(model: HyperellipticModel) -> Char2Invariants:
    if not model.is_exceptional():
        raise ModelError("exceptional_case", "invariants need characteristic 2 and deg(h) = g")
    g, f, h = model.g, model.f, model.h
    root = sqrt(f[2 * g + 2])
    d0 = f[2 * g] + root * h[g - 1]
    d1 = f[2 * g + 1] + root * h[g]
    hg = h[g]
    hg2 = hg * hg
    eps = -1 if trace_to_F2(d0 / hg2) else 1
    return Char2Invariants(d0, d1, hg, eps, d1 / hg2, d0 / hg2)


def lambda2(inv: Char2Invariants, x: FieldElement) -> int:
    """The sign (-1)^tr(x d1 / h_g^2)."""
    return -1 if trace_to_F2(x * inv.lambda2_scale) else 1


def in_H_C(inv: Char2Invariants, x: FieldElement) -> bool:
    return lambda2(inv, x) == -inv.epsilon
