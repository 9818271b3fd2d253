"""Dense univariate polynomials over a FiniteField.

Coefficients are held as canonical field encodings (ints), constant term
first, with no trailing zeros. The zero polynomial has degree -1.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .finite_field import FieldElement, FieldError, FiniteField

ZERO_DEGREE = -1


class Polynomial:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: Iterable = ()):
        out = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                if c.field != field:
                    raise FieldError("coefficient from a different field")
                out.append(c.value)
            else:
                c = int(c)
                if not 0 <= c < field.q:
                    raise FieldError(f"coefficient encoding {c} out of range")
                out.append(c)
        while out and out[-1] == 0:
            out.pop()
        self.field = field
        self.coeffs = tuple(out)

    @classmethod
    def _raw(cls, field: FiniteField, coeffs) -> "Polynomial":
        # trusted constructor: coeffs already trimmed encodings
        obj = cls.__new__(cls)
        obj.field = field
        obj.coeffs = tuple(coeffs)
        return obj

    @classmethod
    def x(cls, field: FiniteField) -> "Polynomial":
        return cls._raw(field, (0, 1))

    @classmethod
    def constant(cls, field: FiniteField, c) -> "Polynomial":
        return cls(field, [c])

    @classmethod
    def from_roots(cls, field: FiniteField, rts: Iterable[FieldElement]) -> "Polynomial":
        out = cls.constant(field, 1)
        k = field.kernel
        for r in rts:
            out = out * cls._raw(field, (k.neg(r.value), 1) if r.value else (0, 1))
        return out

    # -- basic accessors --

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> FieldElement:
        v = self.coeffs[i] if 0 <= i < len(self.coeffs) else 0
        return FieldElement(self.field, v)

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    @property
    def leading(self) -> FieldElement:
        return FieldElement(self.field, self.coeffs[-1] if self.coeffs else 0)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> "Polynomial":
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        k = self.field.kernel
        inv = k.inv(self.coeffs[-1])
        return Polynomial._raw(self.field, [k.mul(c, inv) for c in self.coeffs])

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs and self.field == other.field
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mon = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if c == 1 and mon:
                terms.append(mon)
            elif mon:
                terms.append(f"{c}*{mon}")
            else:
                terms.append(str(c))
        return " + ".join(terms)

    def sort_key(self) -> tuple:
        """Canonical order: by degree, then coefficients from the top down."""
        return (len(self.coeffs), tuple(reversed(self.coeffs)))

    # -- ring operations --

    def _check(self, other: "Polynomial") -> None:
        if other.field is not self.field and other.field != self.field:
            raise FieldError("polynomials over different fields")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, FieldElement):
            return Polynomial(self.field, [other])
        if isinstance(other, int):
            return Polynomial(self.field, [other % self.field.p])
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        k = self.field.kernel
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = k.add(out[i], c)
        while out and out[-1] == 0:
            out.pop()
        return Polynomial._raw(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        k = self.field.kernel
        return Polynomial._raw(self.field, [k.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return Polynomial._raw(
            self.field, self.field.kernel.poly_mul(list(self.coeffs), list(other.coeffs))
        )

    __rmul__ = __mul__

    def scale(self, c: FieldElement | int) -> "Polynomial":
        c = c.value if isinstance(c, FieldElement) else c
        k = self.field.kernel
        if c == 0:
            return Polynomial._raw(self.field, ())
        return Polynomial._raw(self.field, [k.mul(a, c) for a in self.coeffs])

    def __divmod__(self, other: "Polynomial"):
        self._check(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        q, r = self.field.kernel.poly_divmod(list(self.coeffs), list(other.coeffs))
        return Polynomial._raw(self.field, q), Polynomial._raw(self.field, r)

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[1]

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("division is not exact")
        return q

    def __pow__(self, e: int) -> "Polynomial":
        out = Polynomial.constant(self.field, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def powmod(self, e: int, m: "Polynomial") -> "Polynomial":
        out = Polynomial.constant(self.field, 1) % m
        base = self % m
        while e:
            if e & 1:
                out = (out * base) % m
            e >>= 1
            if e:
                base = (base * base) % m
        return out

    def __call__(self, x) -> FieldElement:
        return self.evaluate(x)

    def evaluate(self, x) -> FieldElement:
        if isinstance(x, FieldElement):
            if x.field != self.field:
                raise FieldError("evaluation point from a different field")
            x = x.value
        return FieldElement(self.field, self.field.kernel.poly_eval(list(self.coeffs), x))

    def map_coefficients(self, fn, field: FiniteField) -> "Polynomial":
        """Apply an encoding-level map to every coefficient (e.g. an embedding)."""
        return Polynomial(field, [fn(c) for c in self.coeffs])


def x_poly(field: FiniteField) -> Polynomial:
    return Polynomial.x(field)


def derivative(a: Polynomial) -> Polynomial:
    k = a.field.kernel
    return Polynomial(a.field, [k.scale(i, c) for i, c in enumerate(a.coeffs)][1:])


def gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd (zero when both inputs are zero)."""
    a._check(b)
    while b:
        a, b = b, a % b
    return a.monic()


def xgcd(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial, Polynomial]:
    """(g, s, t) with s*a + t*b = g, g monic."""
    a._check(b)
    f = a.field
    zero, one = Polynomial(f), Polynomial.constant(f, 1)
    r0, r1, s0, s1, t0, t1 = a, b, one, zero, zero, one
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    inv = f.kernel.inv(r0.coeffs[-1])
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def is_separable(a: Polynomial) -> bool:
    if not a:
        raise ValueError("separability of the zero polynomial is undefined")
    return gcd(a, derivative(a)).degree == 0


# -- factorization ----------------------------------------------------------


def _pth_root(a: Polynomial) -> Polynomial:
    # a(x) = b(x^p); returns b with coefficients replaced by their p-th roots
    f = a.field
    k = f.kernel
    e = f.q // f.p
    return Polynomial(f, [k.pow(a.coeff(i), e) for i in range(0, a.degree + 1, f.p)])


def squarefree_decomposition(a: Polynomial) -> list[tuple[Polynomial, int]]:
    """Monic squarefree factors s_i with a = lc * prod s_i^m_i."""
    p = a.field.p
    out: dict[int, Polynomial] = {}

    def rec(f: Polynomial, mult: int) -> None:
        if f.degree <= 0:
            return
        df = derivative(f)
        if not df:
            rec(_pth_root(f), mult * p)
            return
        c = gcd(f, df)
        w = f.exact_div(c)
        i = 1
        while w.degree > 0:
            y = gcd(w, c)
            z = w.exact_div(y)
            if z.degree > 0:
                prev = out.get(mult * i)
                out[mult * i] = z if prev is None else prev * z
            i += 1
            w, c = y, c.exact_div(y)
        if c.degree > 0:
            rec(_pth_root(c), mult * p)

    rec(a.monic(), 1)
    return sorted(((s, m) for m, s in out.items()), key=lambda t: t[1])


def _nullspace(rows: list[list[int]], field: FiniteField) -> list[list[int]]:
    """Basis of {v : v M = 0} for the square matrix M given by rows."""
    k = field.kernel
    n = len(rows)
    # transpose so we solve M^T v = 0 by column elimination
    a = [[rows[j][i] for j in range(n)] for i in range(n)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = k.inv(a[r][c])
        a[r] = [k.mul(x, inv) for x in a[r]]
        for i in range(n):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [k.sub(x, k.mul(f, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for row, pc in enumerate(pivots):
            v[pc] = k.neg(a[row][fc])
        basis.append(v)
    return basis


def _berlekamp_split(g: Polynomial) -> list[Polynomial]:
    """Split a monic squarefree g into its monic irreducible factors."""
    if g.degree <= 1:
        return [g]
    f = g.field
    k = f.kernel
    n = g.degree
    xq = Polynomial.x(f).powmod(f.q, g)
    rows, cur = [], Polynomial.constant(f, 1)
    for i in range(n):
        row = [cur.coeff(j) for j in range(n)]
        row[i] = k.sub(row[i], 1)
        rows.append(row)
        cur = (cur * xq) % g
    basis = _nullspace(rows, f)
    count = len(basis)
    if count == 1:
        return [g]
    factors = [g]
    p = f.p
    for v in basis:
        vp = Polynomial(f, v)
        if vp.degree <= 0:
            continue
        for j in range(f.n):
            beta = p**j
            # w = Tr_{F_q/F_p}(beta * v) mod g takes F_p values on each factor
            t = vp.scale(beta) % g
            w, cur = t, t
            for _ in range(f.n - 1):
                cur = cur.powmod(p, g)
                w = w + cur
            new = []
            for fac in factors:
                if fac.degree <= 1:
                    new.append(fac)
                    continue
                rest = fac
                for c in range(p):
                    if rest.degree <= 0:
                        break
                    d = gcd(rest, w - c)
                    if 0 < d.degree < rest.degree:
                        new.append(d)
                        rest = rest.exact_div(d)
                    elif d.degree == rest.degree:
                        break
                if rest.degree > 0:
                    new.append(rest.monic())
            factors = new
            if len(factors) == count:
                return factors
    assert len(factors) == count, "Berlekamp splitting incomplete"
    return factors


def factor(a: Polynomial) -> list[tuple[Polynomial, int]]:
    """Monic irreducible factors with multiplicities, in canonical order."""
    if not a:
        raise ValueError("cannot factor the zero polynomial")
    acc: dict[Polynomial, int] = {}
    for s, m in squarefree_decomposition(a):
        for fac in _berlekamp_split(s):
            acc[fac] = acc.get(fac, 0) + m
    return sorted(acc.items(), key=lambda t: t[0].sort_key())


def roots(a: Polynomial) -> list[FieldElement]:
    """Distinct roots of a in its coefficient field, sorted by encoding."""
    if not a:
        raise ValueError("the zero polynomial vanishes everywhere")
    if a.degree <= 0:
        return []
    f = a.field
    a = a.monic()
    g = gcd(a, Polynomial.x(f).powmod(f.q, a) - Polynomial.x(f))
    if g.degree <= 0:
        return []
    out = []
    for fac in _berlekamp_split(g):
        assert fac.degree == 1
        out.append(FieldElement(f, f.kernel.neg(fac.coeffs[0])))
    return sorted(out, key=lambda e: e.value)


def is_irreducible(a: Polynomial) -> bool:
    fs = factor(a)
    return len(fs) == 1 and fs[0][1] == 1


def lagrange_interpolate(points: Sequence[tuple[FieldElement, FieldElement]], field: FiniteField) -> Polynomial:
    """The unique polynomial of degree < len(points) through distinct-x points."""
    k = field.kernel
    out = Polynomial(field)
    xs = [x.value for x, _ in points]
    for i, (xi, yi) in enumerate(points):
        if not yi.value:
            continue
        num = Polynomial.constant(field, 1)
        den = 1
        for j, xj in enumerate(xs):
            if j != i:
                num = num * Polynomial._raw(field, (k.neg(xj), 1) if xj else (0, 1))
                den = k.mul(den, k.sub(xi.value, xj))
        out = out + num.scale(k.mul(yi.value, k.inv(den)))
    return out


def enumerate_monic(field: FiniteField, degree: int) -> Iterable[Polynomial]:
    """All monic polynomials of the given degree in canonical order."""
    q = field.q
    for low in range(q**degree):
        cs = []
        for _ in range(degree):
            low, r = divmod(low, q)
            cs.append(r)
        yield Polynomial._raw(field, cs + [1])


def poly_from_spec(field: FiniteField, coeffs: Sequence[int]) -> Polynomial:
    return Polynomial(field, coeffs)


def maybe_constant(a: Polynomial) -> Optional[FieldElement]:
    return a[0] if a.degree <= 0 else None
