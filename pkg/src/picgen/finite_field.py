"""Exact arithmetic in F_p and F_{p^n}.

Every element is stored as its canonical encoding: the coefficient vector
over F_p in the polynomial basis 1, theta, theta^2, ... (constant term first)
read as a base-p integer. "Smallest" and "first" always refer to this
integer order, which makes every choice below deterministic.

Prime fields are the n = 1 case with modulus ``x``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .kernel import FieldKernel

MAX_CARDINALITY = 2**63


class FieldError(ValueError):
    """Invalid field parameters or mixed-field arithmetic."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _digits(a: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        a, r = divmod(a, p)
        out.append(r)
    return out


def _encode(digits: Sequence[int], p: int) -> int:
    a = 0
    for d in reversed(digits):
        a = a * p + d
    return a


class FiniteField:
    """The field F_p[x]/(modulus) of cardinality q = p^n."""

    def __init__(self, p: int, n: int, modulus: Sequence[int]):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if n < 1:
            raise FieldError(f"extension degree must be >= 1, got {n}")
        if p**n >= MAX_CARDINALITY:
            raise FieldError(f"cardinality {p}^{n} exceeds 2^63")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree n")
        self.p = p
        self.n = n
        self.q = p**n
        self.modulus = modulus
        self.kernel = FieldKernel(p, n, list(modulus))
        self._cache: dict = {}

    def __repr__(self) -> str:
        if self.n == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.n}, modulus={list(self.modulus)})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteField)
            and self.p == other.p
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, value) -> "FieldElement":
        return self.element(value)

    def element(self, value) -> "FieldElement":
        """Build an element from an encoding, a digit list, or a FieldElement."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, (list, tuple)):
            if len(value) > self.n:
                raise FieldError("too many coordinates for this field")
            return FieldElement(self, _encode([int(c) % self.p for c in value], self.p))
        value = int(value)
        if not 0 <= value < self.q:
            raise FieldError(f"encoding {value} out of range for {self!r}")
        return FieldElement(self, value)

    def from_int(self, m: int) -> "FieldElement":
        """Image of the integer m under Z -> F_p -> this field."""
        return FieldElement(self, m % self.p)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def gen(self) -> "FieldElement":
        """The class of x in F_p[x]/(modulus)."""
        return FieldElement(self, self.p if self.n > 1 else (-self.modulus[0]) % self.p)

    def elements(self) -> Iterator["FieldElement"]:
        for v in range(self.q):
            yield FieldElement(self, v)

    def digits(self, a: int) -> list[int]:
        return _digits(a, self.p, self.n)

    def to_spec(self) -> dict:
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}

    @classmethod
    def from_spec(cls, spec: dict) -> "FiniteField":
        p, n = int(spec["p"]), int(spec.get("n", 1))
        canonical = make_field(p, n)
        if spec.get("modulus") is None:
            return canonical
        modulus = [int(c) for c in spec["modulus"]]
        field = cls(p, n, modulus)
        if not _is_irreducible_over_prime(field.modulus, p):
            raise FieldError(f"modulus {modulus} is not irreducible over F_{p}")
        return canonical if field == canonical else field


class FieldElement:
    """An element of a FiniteField; immutable and hashable."""

    __slots__ = ("field", "value")

    def __init__(self, field: FiniteField, value: int):
        self.field = field
        self.value = value

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldError("mixed-field arithmetic")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.kernel.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.kernel.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.kernel.sub(b, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.kernel.neg(self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.kernel.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        k = self.field.kernel
        return FieldElement(self.field, k.mul(self.value, k.inv(b)))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        k = self.field.kernel
        return FieldElement(self.field, k.mul(b, k.inv(self.value)))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(self.field, self.field.kernel.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.kernel.inv(self.value))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.value == other.value and self.field == other.field
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def __lt__(self, other: "FieldElement") -> bool:
        return self.value < other.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.field!r}({self.value})"

    def digits(self) -> list[int]:
        return self.field.digits(self.value)


# -- construction ---------------------------------------------------------


def _fp_polymulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return _fp_mod(prod, m, p)


def _fp_mod(a: list[int], m: list[int], p: int) -> list[int]:
    # m monic
    a = list(a)
    dm = len(m) - 1
    for k in range(len(a) - 1, dm - 1, -1):
        c = a[k]
        if c:
            for j in range(dm + 1):
                a[k - dm + j] = (a[k - dm + j] - c * m[j]) % p
    a = a[:dm]
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        inv = pow(b[-1], p - 2, p)
        b = [(c * inv) % p for c in b]
        a, b = b, _fp_mod(a, b, p)
    return a


def _is_irreducible_over_prime(modulus: Sequence[int], p: int) -> bool:
    """Rabin's test: x^(p^n) = x mod m and gcd(x^(p^(n/l)) - x, m) = 1."""
    m = list(modulus)
    n = len(m) - 1
    if n == 1:
        return True
    if m[0] == 0:
        return False

    def frob_powers():
        # yields x^(p^j) mod m for j = 1..n
        cur = [0, 1]
        for _ in range(n):
            res, base, e = [1], cur, p
            while e:
                if e & 1:
                    res = _fp_polymulmod(res, base, m, p)
                e >>= 1
                if e:
                    base = _fp_polymulmod(base, base, m, p)
            cur = res
            yield cur

    powers = list(frob_powers())
    if _fp_mod(powers[-1], m, p) != [0, 1]:
        return False
    for ell in _prime_factors(n):
        xp = list(powers[n // ell - 1]) + [0, 0]
        xp[1] = (xp[1] - 1) % p
        while xp and xp[-1] == 0:
            xp.pop()
        if len(_fp_gcd(m, xp, p)) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def make_field(p: int, n: int = 1) -> FiniteField:
    """F_{p^n} with the canonically smallest monic irreducible modulus."""
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if n < 1:
        raise FieldError(f"extension degree must be >= 1, got {n}")
    if p**n >= MAX_CARDINALITY:
        raise FieldError(f"cardinality {p}^{n} exceeds 2^63")
    for low in range(p**n):
        modulus = _digits(low, p, n) + [1]
        if _is_irreducible_over_prime(modulus, p):
            return FiniteField(p, n, modulus)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# -- Frobenius, traces, roots ---------------------------------------------


def frobenius(a: FieldElement, j: int = 1) -> FieldElement:
    """a^(p^j)."""
    f = a.field
    j %= f.n
    if j == 0:
        return a
    return FieldElement(f, f.kernel.pow(a.value, f.p**j))


def _trace_value(field: FiniteField, a: int) -> int:
    k = field.kernel
    acc, cur = a, a
    for _ in range(field.n - 1):
        cur = k.pow(cur, field.p)
        acc = k.add(acc, cur)
    return acc


def trace_to_prime(a: FieldElement) -> int:
    """Absolute trace tr_{F_q/F_p}(a) as an integer in [0, p)."""
    t = _trace_value(a.field, a.value)
    assert t < a.field.p, "trace left the prime field"
    return t


def trace_to_F2(a: FieldElement) -> int:
    if a.field.p != 2:
        raise FieldError("trace_to_F2 needs a field of characteristic 2")
    return trace_to_prime(a)


def first_nonresidue(field: FiniteField) -> FieldElement:
    """First element z in canonical order with z^((q-1)/2) = -1."""
    if field.p == 2:
        raise FieldError("every element is a square in characteristic 2")
    cached = field._cache.get("nonresidue")
    if cached is not None:
        return cached
    k = field.kernel
    minus_one = k.neg(1)
    e = (field.q - 1) // 2
    for v in range(field.q):
        if k.pow(v, e) == minus_one:
            z = FieldElement(field, v)
            field._cache["nonresidue"] = z
            return z
    raise AssertionError("no nonresidue found")  # pragma: no cover


def is_square(a: FieldElement) -> bool:
    f = a.field
    if f.p == 2 or a.value == 0:
        return True
    return f.kernel.pow(a.value, (f.q - 1) // 2) == 1


def sqrt(a: FieldElement) -> Optional[FieldElement]:
    """Square root with the smaller encoding, or None for a nonresidue."""
    f = a.field
    k = f.kernel
    if a.value == 0:
        return a
    if f.p == 2:
        return FieldElement(f, k.pow(a.value, f.q // 2))
    if not is_square(a):
        return None
    # Tonelli-Shanks: q - 1 = 2^s * t with t odd
    s, t = 0, f.q - 1
    while t % 2 == 0:
        s, t = s + 1, t // 2
    z = first_nonresidue(f).value
    m = s
    c = k.pow(z, t)
    x = k.pow(a.value, (t + 1) // 2)
    b = k.pow(a.value, t)
    while b != 1:
        i, b2 = 0, b
        while b2 != 1:
            b2 = k.mul(b2, b2)
            i += 1
        w = c
        for _ in range(m - i - 1):
            w = k.mul(w, w)
        x = k.mul(x, w)
        c = k.mul(w, w)
        b = k.mul(b, c)
        m = i
    return FieldElement(f, min(x, k.neg(x)))


# -- linear algebra over F_p ----------------------------------------------


class _FpSolver:
    """Solve M z = b over F_p for a fixed matrix given by its columns.

    The elimination is done once; each solve is a matrix-vector product.
    """

    def __init__(self, columns: list[list[int]], p: int):
        self.p = p
        rows = len(columns[0]) if columns else 0
        ncols = len(columns)
        a = [[columns[c][r] % p for c in range(ncols)] for r in range(rows)]
        t = [[int(i == j) for j in range(rows)] for i in range(rows)]
        pivots = []
        r = 0
        for c in range(ncols):
            piv = next((i for i in range(r, rows) if a[i][c]), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            t[r], t[piv] = t[piv], t[r]
            inv = pow(a[r][c], p - 2, p)
            a[r] = [(x * inv) % p for x in a[r]]
            t[r] = [(x * inv) % p for x in t[r]]
            for i in range(rows):
                if i != r and a[i][c]:
                    f = a[i][c]
                    a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
                    t[i] = [(x - f * y) % p for x, y in zip(t[i], t[r])]
            pivots.append(c)
            r += 1
        self.ncols = ncols
        self.pivots = pivots
        self.transform = t
        self.rank = r

    def solve(self, b: list[int]) -> Optional[list[int]]:
        p = self.p
        tb = [sum(x * y for x, y in zip(row, b)) % p for row in self.transform]
        if any(tb[self.rank:]):
            return None
        z = [0] * self.ncols
        for r, c in enumerate(self.pivots):
            z[c] = tb[r]
        return z


def _as_solver(field: FiniteField) -> _FpSolver:
    solver = field._cache.get("artin_schreier")
    if solver is None:
        k, p = field.kernel, field.p
        cols = []
        for j in range(field.n):
            e = p**j
            cols.append(field.digits(k.sub(k.pow(e, p), e)))
        solver = _FpSolver(cols, p)
        field._cache["artin_schreier"] = solver
    return solver


def artin_schreier_solve(a: FieldElement) -> Optional[FieldElement]:
    """Smallest z with z^p - z = a, or None when tr(a) != 0."""
    f = a.field
    z = _as_solver(f).solve(f.digits(a.value))
    if z is None:
        return None
    # solutions differ by F_p, i.e. by the constant digit
    z[0] = 0
    return FieldElement(f, _encode(z, f.p))


# -- embeddings ------------------------------------------------------------


class FieldEmbedding:
    """The F_p-algebra map k -> k' sending theta_k to ``image_of_generator``."""

    def __init__(self, source: FiniteField, target: FiniteField, image_of_generator: FieldElement):
        self.source = source
        self.target = target
        self.image_of_generator = image_of_generator
        kt = target.kernel
        powers, cur = [], 1
        for _ in range(source.n):
            powers.append(cur)
            cur = kt.mul(cur, image_of_generator.value)
        self._basis = powers
        self._solver = _FpSolver([target.digits(b) for b in powers], source.p)
        self._memo: dict[int, int] = {}

    def __repr__(self) -> str:
        return f"FieldEmbedding({self.source!r} -> {self.target!r}, theta -> {self.image_of_generator.value})"

    def map_value(self, a: int) -> int:
        out = self._memo.get(a)
        if out is None:
            kt = self.target.kernel
            out = 0
            for d, b in zip(self.source.digits(a), self._basis):
                if d:
                    out = kt.add(out, kt.scale(d, b))
            self._memo[a] = out
        return out

    def __call__(self, a: FieldElement) -> FieldElement:
        if a.field != self.source:
            raise FieldError("element not in the embedding's source field")
        return FieldElement(self.target, self.map_value(a.value))

    def retract_value(self, e: int) -> Optional[int]:
        z = self._solver.solve(self.target.digits(e))
        if z is None:
            return None
        return _encode(z, self.source.p)


def make_embedding(k: FiniteField, k2: FiniteField) -> FieldEmbedding:
    """Embed k into k2, sending theta_k to its smallest conjugate root in k2."""
    if k.p != k2.p or k2.n % k.n != 0:
        raise FieldError(f"cannot embed {k!r} into {k2!r}")
    if k == k2:
        return FieldEmbedding(k, k2, k2.gen)
    from .polynomial import Polynomial, roots

    m = Polynomial(k2, list(k.modulus))
    rs = roots(m)
    if not rs:
        raise AssertionError("modulus has no root in the target field")  # pragma: no cover
    root = min(rs, key=lambda e: e.value)
    return FieldEmbedding(k, k2, root)


def retract(e: FieldElement, emb: FieldEmbedding) -> Optional[FieldElement]:
    """Preimage of e under emb, or None when e is outside the image."""
    if e.field != emb.target:
        raise FieldError("element not in the embedding's target field")
    v = emb.retract_value(e.value)
    return None if v is None else FieldElement(emb.source, v)
