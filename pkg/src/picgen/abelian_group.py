"""Finite abelian groups, their characters, and the shape parameter.

Groups are written additively as Z/d_1 x ... x Z/d_r with d_1 | d_2 | ... | d_r.
The character with exponent vector e sends g to exp(2 pi i sum e_j g_j / d_j),
so the full table of Fourier coefficients of a function on G is an
n-dimensional DFT of its coefficient array; numpy does the heavy lifting.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field as dc_field
from typing import Callable, Hashable, Iterable, Optional, Sequence

import numpy as np
from scipy.optimize import minimize

from .finite_field import FieldElement, FiniteField

SHAPE_GROUP_LIMIT = 4096


class GroupError(ValueError):
    """Invalid group data or a subset that violates an operation's contract."""


class FinAbGroup:
    def __init__(self, invariant_factors: Sequence[int]):
        factors = tuple(int(d) for d in invariant_factors)
        if any(d < 2 for d in factors):
            raise GroupError(f"invariant factors must be >= 2: {factors}")
        if any(b % a for a, b in zip(factors, factors[1:])):
            raise GroupError(f"invariant factors must form a divisibility chain: {factors}")
        self.invariant_factors = factors
        self.order = math.prod(factors)
        self.exponent = factors[-1] if factors else 1

    def __repr__(self) -> str:
        return f"FinAbGroup({list(self.invariant_factors)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FinAbGroup) and self.invariant_factors == other.invariant_factors

    def __hash__(self) -> int:
        return hash(self.invariant_factors)

    @property
    def shape(self) -> tuple[int, ...]:
        # the trivial group still needs one axis for array code
        return self.invariant_factors or (1,)

    def element(self, coords: Sequence[int]) -> "GroupElement":
        if len(coords) != len(self.invariant_factors):
            raise GroupError("coordinate vector has the wrong length")
        return GroupElement(self, tuple(c % d for c, d in zip(coords, self.invariant_factors)))

    @property
    def identity(self) -> "GroupElement":
        return GroupElement(self, (0,) * len(self.invariant_factors))

    def elements(self) -> Iterable["GroupElement"]:
        for c in itertools.product(*(range(d) for d in self.invariant_factors)):
            yield GroupElement(self, c)

    def characters(self) -> Iterable["Character"]:
        for e in itertools.product(*(range(d) for d in self.invariant_factors)):
            yield Character(self, e)

    def trivial_character(self) -> "Character":
        return Character(self, (0,) * len(self.invariant_factors))

    def array_index(self, g: "GroupElement") -> tuple[int, ...]:
        return g.coords if g.coords else (0,)


@dataclass(frozen=True)
class GroupElement:
    group: FinAbGroup = dc_field(compare=False, hash=False, repr=False)
    coords: tuple[int, ...]

    def __add__(self, other: "GroupElement") -> "GroupElement":
        ds = self.group.invariant_factors
        return GroupElement(self.group, tuple((a + b) % d for a, b, d in zip(self.coords, other.coords, ds)))

    def __neg__(self) -> "GroupElement":
        ds = self.group.invariant_factors
        return GroupElement(self.group, tuple((-a) % d for a, d in zip(self.coords, ds)))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __mul__(self, m: int) -> "GroupElement":
        ds = self.group.invariant_factors
        return GroupElement(self.group, tuple((a * m) % d for a, d in zip(self.coords, ds)))

    __rmul__ = __mul__

    def is_identity(self) -> bool:
        return not any(self.coords)

    def order(self) -> int:
        out = 1
        for a, d in zip(self.coords, self.group.invariant_factors):
            out = math.lcm(out, d // math.gcd(a, d))
        return out


@dataclass(frozen=True)
class Character:
    group: FinAbGroup = dc_field(compare=False, hash=False, repr=False)
    exponents: tuple[int, ...]

    def phase(self, g: GroupElement) -> int:
        """Exact value index: value(g) = exp(2 pi i phase / exponent)."""
        L = self.group.exponent
        return sum(e * a * (L // d) for e, a, d in zip(self.exponents, g.coords, self.group.invariant_factors)) % L

    def __call__(self, g: GroupElement) -> complex:
        if not any(self.exponents):
            return 1.0 + 0.0j
        return cmath.exp(2j * math.pi * self.phase(g) / self.group.exponent)

    value = __call__

    def __mul__(self, other: "Character") -> "Character":
        ds = self.group.invariant_factors
        return Character(self.group, tuple((a + b) % d for a, b, d in zip(self.exponents, other.exponents, ds)))

    def is_trivial(self) -> bool:
        return not any(self.exponents)

    def kernel_contains(self, g: GroupElement) -> bool:
        return self.phase(g) == 0


class Subset:
    """A deduplicated, ordered collection of group elements."""

    def __init__(self, group: FinAbGroup, elements: Iterable[GroupElement], recipe: Optional[dict] = None):
        seen: dict[tuple, GroupElement] = {}
        for g in elements:
            if len(g.coords) != len(group.invariant_factors):
                raise GroupError("element does not belong to the group")
            seen.setdefault(g.coords, GroupElement(group, g.coords))
        self.group = group
        self.elements = list(seen.values())
        self.recipe = recipe
        self._keys = frozenset(seen)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g: GroupElement) -> bool:
        return g.coords in self._keys

    def __eq__(self, other) -> bool:
        return isinstance(other, Subset) and self.group == other.group and self._keys == other._keys

    def __hash__(self) -> int:
        return hash(self._keys)

    def __repr__(self) -> str:
        return f"Subset({[g.coords for g in self.elements]})"

    def indicator(self) -> "GroupRingFunction":
        return GroupRingFunction(self, [1.0] * len(self))


class GroupRingFunction:
    """sum_{s in support} c_s [s] in C[G]."""

    def __init__(self, support: Subset, coefficients: Sequence[complex]):
        if len(coefficients) != len(support):
            raise GroupError("one coefficient per support element is required")
        self.support = support
        self.coefficients = np.asarray(coefficients, dtype=complex)

    def to_array(self) -> np.ndarray:
        G = self.support.group
        arr = np.zeros(G.shape, dtype=complex)
        for g, c in zip(self.support.elements, self.coefficients):
            arr[G.array_index(g)] += c
        return arr


def product_function(f1: GroupRingFunction, f2: GroupRingFunction) -> GroupRingFunction:
    """Convolution product in C[G]; the support is the sumset."""
    acc: dict[tuple, complex] = {}
    G = f1.support.group
    for g, a in zip(f1.support.elements, f1.coefficients):
        for h, b in zip(f2.support.elements, f2.coefficients):
            s = (g + h).coords
            acc[s] = acc.get(s, 0) + a * b
    keys = list(acc)
    return GroupRingFunction(Subset(G, (GroupElement(G, k) for k in keys)), [acc[k] for k in keys])


def fourier_coefficient(f: GroupRingFunction, chi: Character) -> complex:
    """f_chi = sum_g c_g chi(g^-1)."""
    return complex(sum(c * chi(-g) for g, c in zip(f.support.elements, f.coefficients)))


def fourier_table(f: GroupRingFunction) -> np.ndarray:
    """All f_chi at once, indexed by character exponent vectors."""
    return np.fft.fftn(f.to_array())


def inverse_fourier(table: np.ndarray) -> np.ndarray:
    """Recover c_g = (1/#G) sum_chi f_chi chi(g)."""
    return np.fft.ifftn(table)


# -- structure of a concrete group ----------------------------------------


@dataclass
class GroupIsomorphism:
    """Coordinates for a concrete finite abelian group given by an operation."""

    group: FinAbGroup
    to_coords: dict
    from_coords: dict
    identity: Hashable

    def to_group(self, x) -> GroupElement:
        return GroupElement(self.group, self.to_coords[x])

    def from_group(self, g: GroupElement):
        return self.from_coords[g.coords]


def smith_normal_form(rows: list[list[int]]) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """Diagonal d and unimodular V, V^-1 with U A V = diag(d) for square A."""
    a = [list(r) for r in rows]
    n = len(a)
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    def col_op(j, t, q):
        # col_j -= q col_t
        for r in a:
            r[j] -= q * r[t]
        for r in V:
            r[j] -= q * r[t]
        Vi[t] = [x + q * y for x, y in zip(Vi[t], Vi[j])]

    def col_swap(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    for t in range(n):
        while True:
            cand = [(abs(a[i][j]), i, j) for i in range(t, n) for j in range(t, n) if a[i][j]]
            if not cand:
                break
            _, i, j = min(cand)
            a[t], a[i] = a[i], a[t]
            if j != t:
                col_swap(t, j)
            clean = True
            for i in range(t + 1, n):
                q = a[i][t] // a[t][t]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    clean = False
            for j in range(t + 1, n):
                q = a[t][j] // a[t][t]
                if q:
                    col_op(j, t, q)
                if a[t][j]:
                    clean = False
            if not clean:
                continue
            bad = next((i for i in range(t + 1, n) for j in range(t + 1, n) if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
    d = [abs(a[i][i]) for i in range(n)]
    return d, V, Vi


def structure_from_table(
    elements: Iterable[Hashable],
    op: Callable,
    identity: Optional[Hashable] = None,
) -> GroupIsomorphism:
    """Invariant factors of a finite abelian group given by elements and op.

    Uses about 2 #G calls to ``op``: the group is built up one generator at a
    time, recording the relation m x = (element already reached), and the
    relation lattice is put in Smith normal form at the end. Every product the
    construction computes must land in ``elements``.
    """
    elements = list(elements)
    members = set(elements)
    if len(members) != len(elements):
        raise GroupError("duplicate elements in table")
    if identity is None:
        identity = next((e for e in elements if op(e, e) == e), None)
        if identity is None:
            raise GroupError("no identity element found")

    def mul(a, b):
        c = op(a, b)
        if c not in members:
            raise GroupError(f"table is not closed: {a!r} * {b!r} = {c!r}")
        return c

    reached: dict = {identity: ()}
    relations: list[list[int]] = []
    for x in elements:
        if x in reached:
            continue
        k = len(relations)
        multiples = [x]
        while multiples[-1] not in reached:
            multiples.append(mul(multiples[-1], x))
        m = len(multiples)
        hit = reached[multiples[-1]]
        relations.append([-c for c in hit] + [0] * (k - len(hit)) + [m])
        grown = {}
        for h, c in reached.items():
            grown[h] = c + (0,) * (k - len(c)) + (0,)
        for j in range(1, m):
            jx = multiples[j - 1]
            for h, c in list(reached.items()):
                grown[mul(h, jx)] = c + (0,) * (k - len(c)) + (j,)
        reached = grown
    if len(reached) != len(elements):
        raise GroupError("operation does not generate the whole table")

    n = len(relations)
    square = [r + [0] * (n - len(r)) for r in relations]
    d, V, _ = smith_normal_form(square) if n else ([], [], [])
    keep = [i for i in range(n) if d[i] > 1]
    order = sorted(keep, key=lambda i: d[i])
    factors = [d[i] for i in order]
    group = FinAbGroup(factors)
    to_coords, from_coords = {}, {}
    for elem, c in reached.items():
        c = c + (0,) * (n - len(c))
        new = tuple(sum(c[j] * V[j][i] for j in range(n)) % d[i] for i in order)
        to_coords[elem] = new
        from_coords[new] = elem
    if len(from_coords) != len(reached):
        raise AssertionError("coordinate map is not injective")  # pragma: no cover
    return GroupIsomorphism(group, to_coords, from_coords, identity)


def subgroup_generated(group: FinAbGroup, gens: Iterable[GroupElement]) -> frozenset:
    """Coordinates of all elements in the subgroup spanned by ``gens``."""
    span = {group.identity.coords}
    for g in gens:
        if g.coords in span:
            continue
        frontier = set(span)
        cur = g
        while cur.coords not in span:
            # adjoin the coset cur + (old span)
            for h in frontier:
                span.add((cur + GroupElement(group, h)).coords)
            cur = cur + g
    return frozenset(span)


# -- shape parameter -------------------------------------------------------


def shape_upper_bound(S: Subset, witness: GroupRingFunction) -> float:
    """(#S/#G) sum_chi |f_chi| / |f_chi0| for a witness supported on S."""
    for g in witness.support:
        if g not in S:
            raise GroupError("witness is not supported on S")
    table = fourier_table(witness)
    f0 = abs(table.flat[0])
    if f0 < 1e-12:
        raise GroupError("witness has vanishing trivial Fourier coefficient")
    return len(S) / S.group.order * float(np.abs(table).sum()) / f0


def is_coset(S: Subset) -> bool:
    if not len(S):
        raise GroupError("is_coset needs a nonempty subset")
    s0 = S.elements[0]
    shifted = {(g - s0).coords for g in S}
    G = S.group
    for t in shifted:
        tg = GroupElement(G, t)
        for u in shifted:
            if (tg + GroupElement(G, u)).coords not in shifted:
                return False
    return True


def _shape_objective(S: Subset):
    G = S.group
    idx = tuple(np.array([G.array_index(g)[ax] for g in S.elements]) for ax in range(len(G.shape)))
    shape = G.shape

    def spread(c):
        arr = np.zeros(shape)
        arr[idx] = c
        return arr

    def value(c) -> float:
        return float(np.abs(np.fft.fftn(spread(c))).sum())

    def smooth(z, mu):
        m = len(z)
        c = z - z.mean() + 1.0 / m
        F = np.fft.fftn(spread(c))
        s = np.sqrt(np.abs(F) ** 2 + mu * mu)
        grad_c = np.real(np.fft.fftn(np.conj(F) / s))[idx]
        return float(s.sum()), grad_c - grad_c.mean()

    return value, smooth


def _minimize_witness(S: Subset, max_iter: int) -> tuple[float, np.ndarray]:
    value, smooth = _shape_objective(S)
    m = len(S)
    best_c = np.full(m, 1.0 / m)
    best = value(best_c)
    if best * m / S.group.order <= 1.0 + 1e-12:
        return best, best_c
    z = best_c.copy()
    budget = max_iter
    for mu in (1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-8):
        if budget <= 0:
            break
        res = minimize(smooth, z, args=(mu,), jac=True, method="L-BFGS-B",
                       options={"maxiter": budget, "gtol": 1e-12, "ftol": 1e-15})
        budget -= max(res.nit, 1)
        z = res.x
        c = z - z.mean() + 1.0 / m
        v = value(c)
        if v < best:
            best, best_c = v, c
    return best, best_c


def shape_estimate(S: Subset, tol: float = 1e-4, max_iter: int = 10_000) -> float:
    """A certified upper bound on sh_G(S), minimized from the indicator of S.

    The functional sum_chi |f_chi| / |f_chi0| is convex on {f : f_chi0 = 1}
    and real coefficients suffice (average a witness with its conjugate).
    A smoothed version is minimized by L-BFGS with decreasing smoothing; the
    returned value is the exact functional at the best coefficient vector
    seen, so it is always a valid upper bound. ``tol`` only absorbs rounding
    below 1, where no witness can go.
    """
    if not len(S):
        raise GroupError("shape of the empty set is undefined")
    G = S.group
    if G.order > SHAPE_GROUP_LIMIT:
        raise GroupError(f"group of order {G.order} exceeds the shape-solver guard")
    if len(S) == 1 or len(S) == G.order:
        return 1.0
    best, _ = _minimize_witness(S, max_iter)
    v = best * len(S) / G.order
    return 1.0 if 1.0 - tol <= v < 1.0 else v


def best_witness(S: Subset, max_iter: int = 10_000) -> GroupRingFunction:
    """The coefficient vector behind ``shape_estimate`` as a witness."""
    if len(S) == 1 or len(S) == S.group.order:
        return S.indicator()
    _, c = _minimize_witness(S, max_iter)
    return GroupRingFunction(S, c)


# -- subset constructions --------------------------------------------------


def cyclic_group(n: int) -> FinAbGroup:
    return FinAbGroup([n] if n > 1 else [])


def standard_interval(n: int, start: int, length: int) -> Subset:
    """{start, ..., start + length - 1} mod n inside Z/n."""
    if not 1 <= length <= n:
        raise GroupError(f"interval length {length} out of range for Z/{n}")
    G = cyclic_group(n)
    if n == 1:
        return Subset(G, [G.identity])
    elems = (GroupElement(G, ((start + j) % n,)) for j in range(length))
    return Subset(G, elems, recipe={"kind": "interval", "n": n, "start": start % n, "length": length})


def translate(S: Subset, b: GroupElement) -> Subset:
    recipe = None
    if S.recipe is not None:
        recipe = dict(S.recipe, shift=tuple((x + y) % d for x, y, d in zip(
            S.recipe.get("shift", (0,) * len(b.coords)), b.coords, S.group.invariant_factors)))
    return Subset(S.group, (g + b for g in S), recipe=recipe)


def sumset_difference(S: Subset) -> Subset:
    """S S^-1 written additively: {s - t}."""
    return Subset(S.group, (s - t for s in S for t in S))


def difference_witness(S: Subset) -> GroupRingFunction:
    """(sum s)(sum s^-1), supported on S - S."""
    neg = Subset(S.group, (-s for s in S))
    return product_function(S.indicator(), neg.indicator())


def field_additive_group(field: FiniteField) -> FinAbGroup:
    """k^+ as (Z/p)^n through the coefficient coordinates."""
    return FinAbGroup([field.p] * field.n)


def field_to_group(a: FieldElement, group: FinAbGroup) -> GroupElement:
    return GroupElement(group, tuple(a.field.digits(a.value)))


def group_to_field(g: GroupElement, field: FiniteField) -> FieldElement:
    return field.element(list(g.coords))


def field_subset(field: FiniteField, values: Iterable[FieldElement], recipe: Optional[dict] = None) -> Subset:
    G = field_additive_group(field)
    return Subset(G, (field_to_group(a, G) for a in values), recipe=recipe)


def _fp_span(field: FiniteField, basis: Sequence[FieldElement]) -> list[FieldElement]:
    k = field.kernel
    span = [0]
    for b in basis:
        multiples = [k.scale(c, b.value) for c in range(field.p)]
        span = [k.add(s, m) for m in multiples for s in span]
    return [FieldElement(field, v) for v in span]


def interval_in_vector_space(
    field: FiniteField,
    c: int,
    i: int,
    basis: Optional[Sequence[FieldElement]] = None,
    start: int = 0,
) -> list[FieldElement]:
    """An interval of k^+ of size c p^i.

    W is spanned by ``basis`` (i + 1 vectors, or i when (c, i) = (1, dim)),
    defaulting to the first coordinate vectors; the functional on W reads the
    coefficient of the last basis vector and S is its preimage of the standard
    interval {start, ..., start + c - 1} of F_p.
    """
    p, n = field.p, field.n
    if (c, i) == (1, n) and basis is None:
        return list(field.elements())
    if not 1 <= c <= p - 1:
        raise GroupError(f"c must lie in 1..{p - 1}, got {c}")
    if basis is None:
        if not 0 <= i < n:
            raise GroupError(f"i must lie in 0..{n - 1}, got {i}")
        basis = [FieldElement(field, p**j) for j in range(i + 1)]
    elif len(basis) != i + 1:
        raise GroupError("basis must have i + 1 vectors")
    k = field.kernel
    low = _fp_span(field, basis[:i])
    top = basis[i].value
    out = []
    for t in range(c):
        shift = k.scale((start + t) % p, top)
        out.extend(FieldElement(field, k.add(s.value, shift)) for s in low)
    return out


def fp_hyperplane_basis(field: FiniteField, functional: Callable[[FieldElement], int]) -> list[FieldElement]:
    """F_p-basis of ker(functional) for a nonzero F_p-linear functional.

    Basis vectors come out in an order derived from the coordinate basis, so
    the construction is deterministic.
    """
    p, n = field.p, field.n
    k = field.kernel
    coords = [FieldElement(field, p**j) for j in range(n)]
    vals = [functional(e) % p for e in coords]
    pivot = next((j for j, v in enumerate(vals) if v), None)
    if pivot is None:
        return coords
    inv = pow(vals[pivot], p - 2, p)
    out = []
    for j, e in enumerate(coords):
        if j == pivot:
            continue
        f = (vals[j] * inv) % p
        out.append(FieldElement(field, k.sub(e.value, k.scale(f, coords[pivot].value))))
    return out


def parse_subset_spec(spec: str, field: FiniteField) -> tuple[list[FieldElement], str]:
    """Subsets of k from CLI strings; returns (elements, mode).

    coset:<g1,g2,...>:<shift>   F_p-span of the generators plus shift
    interval:<p>:<start>:<len>  standard interval of the prime field
    vsinterval:<c>:<i>[:start]  interval of size c p^i in coordinates
    explicit:<a,b,...>          element encodings
    """
    kind, _, rest = spec.partition(":")
    parts = rest.split(":") if rest else []
    k = field.kernel
    if kind == "coset":
        gens = [field.element(int(v)) for v in parts[0].split(",") if v] if parts and parts[0] else []
        shift = int(parts[1]) if len(parts) > 1 else 0
        return [FieldElement(field, k.add(s.value, shift)) for s in _fp_span(field, gens)], "coset"
    if kind == "interval":
        n, start, length = (int(v) for v in parts)
        if n != field.p:
            raise GroupError("interval modulus must equal the characteristic")
        T = standard_interval(n, start, length)
        return [field.element(g.coords[0]) for g in T], "interval"
    if kind == "vsinterval":
        c, i = int(parts[0]), int(parts[1])
        start = int(parts[2]) if len(parts) > 2 else 0
        return interval_in_vector_space(field, c, i, start=start), "interval"
    if kind == "explicit":
        return [field.element(int(v)) for v in parts[0].split(",") if v], "explicit"
    raise GroupError(f"unknown subset spec {spec!r}")


# -- exhaustive subset families of k^+ ---------------------------------------


def fp_subspaces(field: FiniteField) -> list[list[FieldElement]]:
    """Bases of every F_p-subspace of k, one basis per subspace, smallest first."""
    k = field.kernel
    seen = {frozenset([0]): []}
    frontier = [(frozenset([0]), [])]
    while frontier:
        nxt = []
        for span, basis in frontier:
            for a in range(1, field.q):
                if a in span:
                    continue
                new = frozenset(k.add(s, k.scale(c, a)) for s in span for c in range(field.p))
                if new not in seen:
                    seen[new] = basis + [FieldElement(field, a)]
                    nxt.append((new, seen[new]))
        frontier = nxt
    return sorted(seen.values(), key=len)


def field_cosets(field: FiniteField) -> list[list[FieldElement]]:
    """Every coset of every additive subgroup of k, deduplicated."""
    k = field.kernel
    out: dict[frozenset, None] = {}
    for basis in fp_subspaces(field):
        H = [x.value for x in _fp_span(field, basis)]
        for b in range(field.q):
            out.setdefault(frozenset(k.add(h, b) for h in H))
    return [[FieldElement(field, v) for v in sorted(S)] for S in out]


def field_intervals(field: FiniteField) -> list[list[FieldElement]]:
    """Every interval of k (full intervals of subgroups) and its translates.

    Subgroups of k^+ are F_p-spaces, so a surjection onto Z/n has n in
    {1, p} and is a nonzero F_p-linear functional when n = p.
    """
    k, p = field.kernel, field.p
    out: dict[frozenset, None] = {}
    for basis in fp_subspaces(field):
        d = len(basis)
        if d == 0:
            continue
        vecs = list(itertools.product(range(p), repeat=d))
        points = []
        for x in vecs:
            v = 0
            for c, b in zip(x, basis):
                v = k.add(v, k.scale(c, b.value))
            points.append((x, v))
        for a in vecs:
            if not any(a):
                continue
            for start in range(p):
                for length in range(1, p + 1):
                    T = {(start + j) % p for j in range(length)}
                    base = [v for x, v in points if sum(ai * xi for ai, xi in zip(a, x)) % p in T]
                    for b in range(field.q):
                        out.setdefault(frozenset(k.add(v, b) for v in base))
    return [[FieldElement(field, v) for v in sorted(S)] for S in out]
