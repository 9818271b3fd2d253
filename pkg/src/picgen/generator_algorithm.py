"""The deterministic generator algorithm and its empirical checkers.

``generate`` base-changes the curve to an extension k' of size q^i >= t,
takes an interval S of k' of size between r and 2r, collects the points
of C(k') with x in S, and pushes each one down to k with the norm map. The
checkers compare the generation theorems and the character-sum bounds
against the brute-force Picard table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .abelian_group import (
    _fp_span,
    Character,
    field_subset,
    fp_hyperplane_basis,
    interval_in_vector_space,
    is_coset,
    shape_estimate,
)
from .curve_model import (
    HyperellipticModel,
    affine_points,
    base_change,
    char2_invariants,
    count_points,
    desk_guard,
    in_H_C,
    lambda2,
    points_with_x_in,
)
from .finite_field import FieldElement, make_embedding, make_field, trace_to_F2, trace_to_prime
from .jacobian import MumfordDivisor, PicardTable, enumerate_picard, from_orbit, phi, psi


@dataclass(frozen=True)
class GenParams:
    g: int
    q: int
    p: int
    s: int
    t: int
    i: int
    q_i: int
    r: int
    interval_size: int
    interval_c: int
    interval_j: int
    in_H_C: bool

    @property
    def interval_spec(self) -> dict:
        return {
            "kind": "vsinterval",
            "c": self.interval_c,
            "i": self.interval_j,
            "inside": "H_C" if self.in_H_C else "k'",
        }

    def to_dict(self) -> dict:
        return {
            "g": self.g, "q": self.q, "p": self.p, "s": self.s, "t": self.t, "i": self.i,
            "q_i": self.q_i, "r": self.r, "interval_size": self.interval_size,
            "interval_spec": self.interval_spec, "in_H_C": self.in_H_C,
        }


def _ceil_sqrt(n: int) -> int:
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def plan_parameters(g: int, q: int, p: int, exceptional: bool = False) -> GenParams:
    """Parameter choice from (g, q, p) alone, in exact integer arithmetic."""
    s = 2 if p == 2 else 3
    t = (2**4 * (2 * g + 1) + 2**2) ** 2
    i, q_i = 1, q
    while q_i < t:
        i, q_i = i + 1, q_i * q
    # r = ceil(4 (2g+1) q^(i/2))
    r = _ceil_sqrt(16 * (2 * g + 1) ** 2 * q_i)
    c, j = _interval_digits(r, p)
    size = c * p**j
    params = GenParams(g, q, p, s, t, i, q_i, r, size, c, j, exceptional)
    _check_plan(params)
    return params


def _interval_digits(r: int, p: int) -> tuple[int, int]:
    """Smallest c p^j >= r with 1 <= c <= p - 1."""
    j = 0
    while True:
        for c in range(1, p):
            if c * p**j >= r:
                return c, j
        j += 1


def _check_plan(P: GenParams) -> None:
    assert P.s == (2 if P.p == 2 else 3)
    assert P.t == (16 * (2 * P.g + 1) + 4) ** 2
    assert P.t <= P.q_i < P.t * P.q
    assert (P.r - 1) ** 2 < 16 * (2 * P.g + 1) ** 2 * P.q_i <= P.r**2
    assert P.r <= P.interval_size <= 2 * P.r
    assert 4 * P.r <= P.q_i


def plan(model: HyperellipticModel) -> GenParams:
    return plan_parameters(model.g, model.q, model.p, model.is_exceptional())


@dataclass
class GenRunReport:
    params: GenParams
    plan_only: bool
    generators: list[MumfordDivisor] = field(default_factory=list)
    points_found: int = 0
    x_values: int = 0
    sqrt_calls: int = 0
    as_solves: int = 0
    orbits: int = 0
    extension: Optional[dict] = None

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "plan_only": self.plan_only,
            "extension_field": self.extension,
            "points_found": self.points_found,
            "counters": {
                "x_values": self.x_values,
                "sqrt_calls": self.sqrt_calls,
                "artin_schreier_solves": self.as_solves,
                "norm_orbits": self.orbits,
            },
            "generators": [D.to_spec() for D in self.generators],
        }


def build_interval(big: HyperellipticModel, params: GenParams) -> list[FieldElement]:
    """The interval S of k' prescribed by the plan (inside H_C when required)."""
    K = big.field
    c, j = params.interval_c, params.interval_j
    if not params.in_H_C:
        return interval_in_vector_space(K, c, j)
    inv = char2_invariants(big)
    basis = fp_hyperplane_basis(K, lambda x: trace_to_F2(x * inv.lambda2_scale))
    if j >= len(basis):
        # (c, i) = (1, dim): the whole hyperplane
        S = _fp_span(K, basis)
    else:
        S = interval_in_vector_space(K, c, j, basis=basis[: j + 1])
    if inv.epsilon == 1:
        # H_C is the nontrivial coset of the hyperplane
        shift = next(b for b in K.elements() if lambda2(inv, b) == -1)
        S = [x + shift for x in S]
    assert all(in_H_C(inv, x) for x in S), "interval escaped H_C"
    return S


def generate(model: HyperellipticModel, plan_only: bool = False, guard: Optional[int] = None) -> GenRunReport:
    params = plan(model)
    limit = desk_guard() if guard is None else guard
    if plan_only or params.q_i > limit:
        return GenRunReport(params, plan_only=True)
    k = model.field
    K = make_field(k.p, k.n * params.i)
    emb = make_embedding(k, K)
    big = base_change(model, emb)
    S = build_interval(big, params)
    assert len(S) == params.interval_size
    report = GenRunReport(params, plan_only=False, extension=K.to_spec())
    report.x_values = len(S)
    if K.p == 2:
        report.as_solves = sum(1 for x in S if big.h(x))
        report.sqrt_calls = len(S) - report.as_solves
    else:
        report.sqrt_calls = len(S)
    points = points_with_x_in(big, S)
    report.points_found = len(points)
    seen_orbits: set = set()
    gens: dict = {}
    for P in points:
        if P.key() in seen_orbits:
            continue
        D = from_orbit(model, P, emb, big)
        report.orbits += 1
        # every point of the orbit has the same norm
        Q = P
        for _ in range(params.i):
            seen_orbits.add(Q.key())
            Q = type(P)(Q.x ** k.q, Q.y ** k.q)
        if not D.is_identity():
            gens.setdefault(D.key(), D)
    report.generators = list(gens.values())
    return report


# -- checkers against the oracle --------------------------------------------


def _sign(a: Fraction, b: Fraction, q: int) -> int:
    """Sign of a + b sqrt(q), exactly."""
    if a >= 0 and b >= 0:
        return 0 if a == 0 and b == 0 else 1
    if a <= 0 and b <= 0:
        return -1
    lhs, rhs = a * a, b * b * q
    if lhs == rhs:
        return 0
    return (1 if lhs > rhs else -1) * (1 if a > 0 else -1)


def count_condition(C: int, g: int, q: int) -> bool:
    """#C(k) > (2g - 2) sqrt(q)."""
    return _sign(Fraction(C), Fraction(-(2 * g - 2)), q) > 0


def main_inequality(C: int, g: int, q: int, s: int, sh: Fraction, size: int, factor: int = 2) -> bool:
    """q^(3/2) factor (2g-2+s) sh < (#C + (2g-2+2s) sqrt q) size."""
    if size == 0:
        return False
    a = Fraction(C * size)
    b = Fraction((2 * g - 2 + 2 * s) * size) - Fraction(q * factor * (2 * g - 2 + s)) * sh
    return _sign(a, b, q) > 0


def size_condition(size: int, t: int, g: int, s: int, q: int) -> bool:
    """#S >= 2 t (2g-2+s) sqrt(q)."""
    return _sign(Fraction(size), Fraction(-2 * t * (2 * g - 2 + s)), q) >= 0


@dataclass
class OracleContext:
    """Everything the checkers need about one curve, computed once."""

    model: HyperellipticModel
    table: PicardTable
    points: list
    point_coords: list
    num_points: int
    psi_values: Optional[dict] = None
    kernel_psi: Optional[frozenset] = None
    invariants: Optional[object] = None


def oracle_context(model: HyperellipticModel, table: Optional[PicardTable] = None) -> OracleContext:
    table = table or enumerate_picard(model)
    pts = affine_points(model)
    coords = [table.coords(phi(model, P)) for P in pts]
    ctx = OracleContext(model, table, pts, coords, len(pts) + 1)
    if model.is_exceptional():
        ctx.invariants = char2_invariants(model)
        ctx.psi_values = {D: psi(model, D) for D in table.elements}
        ctx.kernel_psi = frozenset(table.coords(D) for D, b in ctx.psi_values.items() if b == 0)
    return ctx


@dataclass
class GenerationVerdict:
    mode: str
    size: int
    shape_bound: float
    count_condition: bool
    hypothesis_holds: bool
    hypothesis_coset_interval_form: Optional[bool]
    forms_disagree: bool
    generated_order: int
    full_order: int
    conclusion_holds: bool
    generated: str
    meets_H_C: Optional[bool] = None
    H_C_inequality: Optional[bool] = None

    @property
    def counterexample(self) -> bool:
        return (self.hypothesis_holds or bool(self.hypothesis_coset_interval_form)) and not self.conclusion_holds

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["counterexample"] = self.counterexample
        return d


def _shape_for(ctx: OracleContext, S: Sequence[FieldElement], mode: str) -> Fraction:
    k = ctx.model.field
    if mode == "coset":
        if not is_coset(field_subset(k, S)):
            raise ValueError("subset passed as a coset is not a coset")
        return Fraction(1)
    if mode == "interval":
        return Fraction(1) if is_coset(field_subset(k, S)) else Fraction(2)
    if len(S) in (1, k.q):
        return Fraction(1)
    return Fraction(shape_estimate(field_subset(k, S)))


def check_generation(model: HyperellipticModel, S: Sequence[FieldElement], mode: str,
                     ctx: Optional[OracleContext] = None) -> GenerationVerdict:
    """Compare the generation theorems' hypotheses with the actual span."""
    if mode not in ("coset", "interval", "explicit"):
        raise ValueError(f"unknown mode {mode!r}")
    ctx = ctx or oracle_context(model)
    k = model.field
    q, g = k.q, model.g
    s = 2 if k.p == 2 else 3
    S = list({x.value: x for x in S}.values())
    Sset = {x.value for x in S}
    C = ctx.num_points
    sh = _shape_for(ctx, S, mode) if S else Fraction(1)
    cnt = count_condition(C, g, q)
    hyp = cnt and main_inequality(C, g, q, s, sh, len(S))
    full = ctx.table.order
    G = ctx.table.group
    from .abelian_group import GroupElement, subgroup_generated

    gens = [GroupElement(G, c) for P, c in zip(ctx.points, ctx.point_coords) if P.x.value in Sset]
    span = subgroup_generated(G, gens)
    is_full = len(span) == full

    form2: Optional[bool] = None
    if mode in ("coset", "interval") and not model.is_exceptional():
        t = 1 if sh == 1 else 2
        form2 = cnt and size_condition(len(S), t, g, s, q)
    verdict = GenerationVerdict(
        mode=mode, size=len(S), shape_bound=float(sh), count_condition=cnt,
        hypothesis_holds=hyp, hypothesis_coset_interval_form=form2,
        forms_disagree=form2 is not None and form2 != hyp,
        generated_order=len(span), full_order=full, conclusion_holds=is_full,
        generated="full" if is_full else "proper",
    )
    if not model.is_exceptional():
        return verdict
    inv = ctx.invariants
    is_ker = span == ctx.kernel_psi
    verdict.generated = "full" if is_full else ("ker_psi" if is_ker else "proper")
    SH = [x for x in S if in_H_C(inv, x)]
    verdict.meets_H_C = bool(SH)
    ok = True
    if hyp:
        ok = is_full or is_ker
        if not SH:
            ok = ok and is_ker
        else:
            sh_h = _shape_for(ctx, SH, "coset" if mode == "coset" else "explicit")
            verdict.H_C_inequality = main_inequality(C, g, q, s, sh_h, len(SH), factor=1)
            if verdict.H_C_inequality:
                ok = ok and is_full
    # points with x outside H_C always land in ker psi
    if not SH and not span <= ctx.kernel_psi:
        ok = False
    verdict.conclusion_holds = ok
    return verdict


# -- character sums ----------------------------------------------------------


@dataclass
class CharSumRow:
    lambda_index: FieldElement
    chi: Character
    value: complex
    bound: float
    center: complex
    kind: str
    tolerance: float

    @property
    def deviation(self) -> float:
        return abs(self.value - self.center)

    @property
    def ok(self) -> bool:
        return self.deviation <= self.bound + self.tolerance


def _character_matrix(ctx: OracleContext) -> tuple[list[Character], np.ndarray]:
    G = ctx.table.group
    chars = list(G.characters())
    ds = np.array(G.invariant_factors or (1,), dtype=float)
    coords = np.array([c if c else (0,) for c in ctx.point_coords], dtype=float).reshape(len(ctx.point_coords), -1)
    exps = np.array([c.exponents if c.exponents else (0,) for c in chars], dtype=float).reshape(len(chars), -1)
    phase = (coords / ds) @ exps.T
    return chars, np.exp(2j * np.pi * phase)


def psi_character(ctx: OracleContext) -> Character:
    """chi_2 = (-1)^psi as a character of the coordinate group."""
    G = ctx.table.group
    exps = []
    for j, d in enumerate(G.invariant_factors):
        basis = tuple(int(i == j) for i in range(len(G.invariant_factors)))
        b = ctx.psi_values[ctx.table.element_at(basis)]
        assert (d * b) % 2 == 0, "psi is not a homomorphism on this basis"
        exps.append(b * d // 2)
    return Character(G, tuple(exps))


def char_sum_matrix(ctx: OracleContext) -> tuple[list[FieldElement], list[Character], np.ndarray]:
    k = ctx.model.field
    lambdas = list(k.elements())
    p = k.p
    xs = [P.x for P in ctx.points]
    tr = np.array([[trace_to_prime(c * x) for x in xs] for c in lambdas], dtype=float).reshape(len(lambdas), len(xs))
    A = np.exp(2j * np.pi * tr / p)
    chars, B = _character_matrix(ctx)
    return lambdas, chars, A @ B


def char_sum_table(model: HyperellipticModel, ctx: Optional[OracleContext] = None,
                   tol: float = 1e-6, exact_tol: float = 1e-9) -> list[CharSumRow]:
    ctx = ctx or oracle_context(model)
    g, q = model.g, model.q
    s = 2 if model.p == 2 else 3
    C = ctx.num_points
    lambdas, chars, M = char_sum_matrix(ctx)
    wide = (2 * g - 2 + s) * math.sqrt(q)
    narrow = (2 * g - 2) * math.sqrt(q)
    rows = []
    exceptional = model.is_exceptional()
    if exceptional:
        inv = ctx.invariants
        chi2 = psi_character(ctx)
        eps = inv.epsilon
        l2 = inv.lambda2_scale.value
    for a, lam in enumerate(lambdas):
        for b, chi in enumerate(chars):
            v = complex(M[a, b])
            if lam.value == 0 and chi.is_trivial():
                row = (0.0, complex(C - 1), "trivial", exact_tol)
            elif lam.value == 0:
                row = (narrow, complex(-1), "trivial_lambda", exact_tol if narrow == 0 else tol)
            elif exceptional and lam.value == l2 and chi == chi2:
                row = (0.0, complex(eps * (C - 1)), "lambda2_chi2", exact_tol)
            elif exceptional and lam.value == l2:
                row = (narrow, complex(-eps), "lambda2", exact_tol if narrow == 0 else tol)
            else:
                row = (wide, 0j, "generic", tol)
            bound, center, kind, t = row
            rows.append(CharSumRow(lam, chi, v, bound, center, kind, t))
    return rows


def twist_violations(model: HyperellipticModel, ctx: Optional[OracleContext] = None, tol: float = 1e-6) -> list:
    """Pairs where c_{(lambda,chi)(lambda2,chi2)} != eps c_{(lambda,chi)}."""
    ctx = ctx or oracle_context(model)
    if not model.is_exceptional():
        return []
    lambdas, chars, M = char_sum_matrix(ctx)
    inv = ctx.invariants
    chi2 = psi_character(ctx)
    k = model.field
    l2 = inv.lambda2_scale
    lam_index = {lam.value: a for a, lam in enumerate(lambdas)}
    chi_index = {chi.exponents: b for b, chi in enumerate(chars)}
    bad = []
    for a, lam in enumerate(lambdas):
        a2 = lam_index[(lam + l2).value]
        for b, chi in enumerate(chars):
            b2 = chi_index[(chi * chi2).exponents]
            if abs(M[a2, b2] - inv.epsilon * M[a, b]) > tol:
                bad.append((lam.value, chi.exponents))
    return bad
