"""The verification suite: corpus loading and the acceptance checks.

Each ``check_*`` function returns a :class:`CheckResult`; ``run_suite``
strings them together over a corpus directory. The pytest acceptance module
and the ``picgen suite`` command both call into here, so the two can never
disagree about what passing means.
"""

from __future__ import annotations

import json
import math
import random
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

from . import abelian_group as ag
from .curve_model import HyperellipticModel, ModelError, desk_guard, model_from_spec
from .finite_field import (
    artin_schreier_solve,
    first_nonresidue,
    is_prime,
    make_field,
    sqrt,
    trace_to_prime,
)
from .generator_algorithm import (
    OracleContext,
    char_sum_table,
    check_generation,
    generate,
    oracle_context,
    plan_parameters,
    twist_violations,
)
from .jacobian import add, enumerate_picard, group_order_via_zeta, identity, neg


DEFAULT_TOLERANCES = {
    "charsum": 1e-6,
    "charsum_exact": 1e-9,
    "shape": 1e-3,
    "shape_transport": 2e-3,
}


class CorpusError(ValueError):
    """The corpus directory is missing, empty, or holds an invalid curve."""

    def __init__(self, message: str, path: Optional[str] = None, clause: Optional[str] = None):
        super().__init__(message)
        self.path = path
        self.clause = clause


@dataclass
class CheckResult:
    name: str
    passed: bool
    measured: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)
    tolerance: Optional[float] = None
    failures: list = field(default_factory=list)
    elapsed: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = ", ".join(f"{k}={v}" for k, v in self.measured.items())
        return f"[{status}] {self.name}: {extra}"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "measured": self.measured,
            "bounds": self.bounds,
            "tolerance": self.tolerance,
            "failures": [str(f) for f in self.failures[:20]],
            "failure_count": len(self.failures),
        }


@dataclass
class VerdictReport:
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checks": [c.to_dict() for c in self.checks]}


# -- corpus -------------------------------------------------------------------


def shipped_corpus_dir() -> Path:
    return Path(__file__).resolve().parent / "corpus"


def load_curve(path) -> HyperellipticModel:
    path = Path(path)
    try:
        spec = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CorpusError(f"{path.name}: cannot read curve file ({exc})", str(path)) from exc
    try:
        model = model_from_spec(spec)
    except ModelError as exc:
        raise CorpusError(f"{path.name}: invalid model, clause {exc.clause}", str(path), exc.clause) from exc
    except (KeyError, ValueError, TypeError) as exc:
        raise CorpusError(f"{path.name}: malformed curve file ({exc})", str(path)) from exc
    if model.name is None:
        model.name = path.stem
    return model


def load_corpus(directory=None) -> list[HyperellipticModel]:
    directory = Path(directory) if directory is not None else shipped_corpus_dir()
    if not directory.is_dir():
        raise CorpusError(f"corpus directory {directory} does not exist", str(directory))
    files = sorted(directory.glob("*.json"))
    if not files:
        raise CorpusError(f"corpus directory {directory} holds no curve files", str(directory))
    return [load_curve(p) for p in files]


class OracleCache:
    """Lazily built oracle contexts, one per model, shared between checks."""

    def __init__(self):
        self._ctx: dict = {}

    def __call__(self, model: HyperellipticModel) -> OracleContext:
        key = id(model)
        if key not in self._ctx:
            self._ctx[key] = oracle_context(model, enumerate_picard(model, check_order=False))
        return self._ctx[key]


def _timed(fn: Callable[..., CheckResult]) -> Callable[..., CheckResult]:
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.elapsed = time.perf_counter() - t0
        res.measured.setdefault("seconds", round(res.elapsed, 2))
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# -- 1. oracle versus zeta ---------------------------------------------------


@_timed
def check_oracle_zeta(models, cache: OracleCache, time_limit: float = 60.0) -> CheckResult:
    """Brute-force enumeration and the zeta-function order agree exactly."""
    failures = []
    t0 = time.perf_counter()
    for m in models:
        n_enum = cache(m).table.order
        n_zeta = group_order_via_zeta(m)
        if n_enum != n_zeta:
            failures.append(f"{m.name}: enumerated {n_enum}, zeta {n_zeta}")
    elapsed = time.perf_counter() - t0
    if elapsed >= time_limit:
        failures.append(f"runtime {elapsed:.1f}s >= {time_limit}s")
    small = all(m.q <= 16 and m.g <= 2 for m in models)
    if len(models) < 12 or not small:
        failures.append("corpus must hold at least 12 curves with q <= 16, g <= 2")
    return CheckResult("oracle_zeta_agreement", not failures,
                       {"curves": len(models), "oracle_seconds": round(elapsed, 2)},
                       {"time_limit": time_limit}, None, failures)


# -- 2. group law --------------------------------------------------------------


@_timed
def check_group_law(models, cache: OracleCache, exhaustive_limit: int = 50,
                    samples: int = 10_000, seed: int = 0) -> CheckResult:
    """Associativity, identity and inverses of Cantor's law on the oracle tables."""
    failures = []
    triples = 0
    for m in models:
        els = cache(m).table.elements
        index = {D: i for i, D in enumerate(els)}
        e = identity(m)
        for D in els:
            if add(D, e) != D or add(e, D) != D:
                failures.append(f"{m.name}: identity fails at {D.to_spec()}")
            if add(D, neg(D)) != e or neg(neg(D)) != D:
                failures.append(f"{m.name}: inverse fails at {D.to_spec()}")
        n = len(els)
        if n <= exhaustive_limit:
            # the Cantor table itself, then associativity by lookups
            tab = [[index.get(add(a, b), -1) for b in els] for a in els]
            if any(-1 in row for row in tab):
                failures.append(f"{m.name}: sum left the table")
                continue
            for a in range(n):
                ta = tab[a]
                for b in range(n):
                    ab = ta[b]
                    tb = tab[b]
                    for c in range(n):
                        if tab[ab][c] != ta[tb[c]]:
                            failures.append(f"{m.name}: ({a}+{b})+{c}")
            triples += n**3
        else:
            rng = random.Random(seed)
            for _ in range(samples):
                a, b, c = (els[rng.randrange(n)] for _ in range(3))
                if add(add(a, b), c) != add(a, add(b, c)):
                    failures.append(f"{m.name}: associativity on a random triple")
            triples += samples
    return CheckResult("group_law", not failures, {"triples": triples},
                       {"exhaustive_limit": exhaustive_limit, "samples": samples}, None, failures)


# -- 3. end-to-end generation --------------------------------------------------


@_timed
def check_end_to_end(models, cache: OracleCache, guard: int = 10**6) -> CheckResult:
    """The generator algorithm's output spans the whole oracle group."""
    failures = []
    ran = skipped = h_c_runs = 0
    limit = max(desk_guard(), guard)
    for m in models:
        rep = generate(m, guard=limit)
        if rep.plan_only:
            skipped += 1
            continue
        ran += 1
        P = rep.params
        span = cache(m).table.closure(rep.generators)
        if len(span) != cache(m).table.order:
            failures.append(f"{m.name}: span {len(span)} of {cache(m).table.order}")
        if any(D.is_identity() for D in rep.generators) or len({D.key() for D in rep.generators}) != len(rep.generators):
            failures.append(f"{m.name}: generator list has the identity or repeats")
        if not rep.x_values <= P.interval_size <= 2 * P.r:
            failures.append(f"{m.name}: scanned {rep.x_values} x-values, above 2r = {2 * P.r}")
        if P.in_H_C:
            h_c_runs += 1
    if h_c_runs == 0:
        failures.append("no run exercised the S inside H_C path")
    return CheckResult("end_to_end_generation", not failures,
                       {"runs": ran, "plan_only": skipped, "H_C_runs": h_c_runs},
                       {"guard": limit}, None, failures)


# -- 4. falsification sweep ----------------------------------------------------


@_timed
def check_falsification(models, cache: OracleCache, min_intervals: int = 50) -> CheckResult:
    """No subset satisfies a generation hypothesis while failing its conclusion."""
    failures = []
    cosets = intervals = disagreements = kernel_cases = exhaustive_small = 0
    for m in models:
        ctx = cache(m)
        k = m.field
        fam_c = ag.field_cosets(k)
        fam_i = ag.field_intervals(k)
        # every interval is swept; small fields simply have fewer than min_intervals
        exhaustive_small += len(fam_i) < min_intervals
        for mode, family in (("coset", fam_c), ("interval", fam_i)):
            for S in family:
                v = check_generation(m, S, mode, ctx)
                if mode == "coset":
                    cosets += 1
                else:
                    intervals += 1
                disagreements += v.forms_disagree
                if v.counterexample:
                    failures.append(f"{m.name}: {mode} {[x.value for x in S]} -> {v.generated}")
                if m.is_exceptional() and v.hypothesis_holds and not v.meets_H_C:
                    kernel_cases += 1
                    if v.generated != "ker_psi":
                        failures.append(f"{m.name}: S misses H_C but generated {v.generated}")
    return CheckResult("falsification_sweep", not failures,
                       {"cosets": cosets, "intervals": intervals, "S_missing_H_C": kernel_cases,
                        "hypothesis_forms_disagree": disagreements,
                        "curves_with_fewer_intervals_than_min": exhaustive_small},
                       {"min_intervals_per_curve": min_intervals}, None, failures)


# -- 5. character sums ---------------------------------------------------------


@_timed
def check_character_sums(models, cache: OracleCache, tol: float = 1e-6, exact_tol: float = 1e-9) -> CheckResult:
    """Every character-sum row obeys its bound; the twist identity holds."""
    failures = []
    rows = 0
    worst = 0.0
    for m in models:
        ctx = cache(m)
        table = char_sum_table(m, ctx, tol=tol, exact_tol=exact_tol)
        rows += len(table)
        for r in table:
            worst = max(worst, r.deviation - r.bound)
            if not r.ok:
                failures.append(f"{m.name}: {r.kind} row lambda={r.lambda_index.value} chi={r.chi.exponents} "
                                f"value={r.value:.6g} bound={r.bound:.6g}")
            if m.g == 1 and r.kind == "trivial_lambda" and abs(r.value + 1) > exact_tol:
                failures.append(f"{m.name}: g=1 row chi={r.chi.exponents} is {r.value}, not -1")
        for bad in twist_violations(m, ctx, tol=tol):
            failures.append(f"{m.name}: twist identity fails at {bad}")
    return CheckResult("character_sums", not failures, {"rows": rows, "worst_excess": f"{worst:.2e}"},
                       {"rows": "per row class"}, tol, failures)


# -- 6. psi structure ------------------------------------------------------------


@_timed
def check_psi_structure(models, cache: OracleCache, pair_limit: int = 100) -> CheckResult:
    """psi is a surjective homomorphism with kernel of index 2."""
    failures = []
    curves = 0
    two_torsion_checked = False
    for m in models:
        if not m.is_exceptional():
            continue
        curves += 1
        ctx = cache(m)
        T = ctx.table
        G = T.group
        vals = ctx.psi_values
        basis_vals = []
        for j in range(len(G.invariant_factors)):
            e = tuple(int(i == j) for i in range(len(G.invariant_factors)))
            basis_vals.append(vals[T.element_at(e)])
        for D, b in vals.items():
            c = T.coords(D)
            if b != sum(x * y for x, y in zip(c, basis_vals)) % 2:
                failures.append(f"{m.name}: psi is not linear at {D.to_spec()}")
        if len(T.elements) <= pair_limit:
            for a in T.elements:
                for b in T.elements:
                    if vals[add(a, b)] != (vals[a] + vals[b]) % 2:
                        failures.append(f"{m.name}: psi(a+b) != psi(a)+psi(b)")
        kernel = [D for D, b in vals.items() if b == 0]
        if not any(vals.values()):
            failures.append(f"{m.name}: psi is not surjective")
        if 2 * len(kernel) != T.order:
            failures.append(f"{m.name}: kernel has index {T.order / len(kernel)}")
        if m.g == 1 and m.q == 2:
            two_torsion_checked = True
            doubles = {add(D, D).key() for D in T.elements}
            if doubles != {D.key() for D in kernel}:
                failures.append(f"{m.name}: ker psi differs from 2E(k)")
    if not two_torsion_checked:
        failures.append("no elliptic curve over F_2 in the corpus for the 2E(k) check")
    return CheckResult("psi_structure", not failures, {"exceptional_curves": curves}, {}, None, failures)


# -- 7. shape suite ----------------------------------------------------------------


SHAPE_GROUPS = [[2], [3], [4], [5], [7], [8], [9], [12], [16], [31], [64],
                [2, 2], [2, 4], [3, 3], [4, 4], [2, 8], [2, 2, 2], [2, 2, 2, 2], [8, 8], [2, 2, 2, 2, 2, 2]]


def _random_subset(G: ag.FinAbGroup, rng: random.Random, size: int) -> ag.Subset:
    els = list(G.elements())
    return ag.Subset(G, rng.sample(els, size))


def _group_intervals(G: ag.FinAbGroup, rng: random.Random, count: int) -> list[ag.Subset]:
    """Intervals of G: full intervals of cyclic subgroups and of G itself."""
    out = []
    els = list(G.elements())
    d_last = G.invariant_factors[-1]
    divisors = [n for n in range(2, d_last + 1) if d_last % n == 0]
    while len(out) < count:
        if rng.random() < 0.5:
            h = rng.choice(els)
            m = h.order()
            if m < 2:
                continue
            start, length = rng.randrange(m), rng.randrange(1, m + 1)
            out.append(ag.Subset(G, (h * ((start + j) % m) for j in range(length))))
        else:
            n = rng.choice(divisors)
            start, length = rng.randrange(n), rng.randrange(1, n + 1)
            T = {(start + j) % n for j in range(length)}
            out.append(ag.Subset(G, (g for g in els if g.coords[-1] % n in T)))
    return out


@_timed
def check_shape_suite(tol: float = 1e-3, transport_tol: float = 2e-3, seed: int = 1) -> CheckResult:
    """Closed forms and transport properties of the shape parameter."""
    rng = random.Random(seed)
    failures = []
    counts = {"cosets": 0, "singletons": 0, "intervals": 0, "differences": 0, "transport": 0}
    worst_interval = 0.0
    for inv in SHAPE_GROUPS:
        G = ag.FinAbGroup(inv)
        els = list(G.elements())
        # cosets of random subgroups
        for _ in range(4):
            gens = rng.sample(els, rng.randrange(1, 3))
            H = ag.subgroup_generated(G, gens)
            b = rng.choice(els)
            S = ag.Subset(G, (ag.GroupElement(G, c) + b for c in sorted(H)))
            v = ag.shape_estimate(S)
            counts["cosets"] += 1
            if not ag.is_coset(S) or abs(v - 1) > tol:
                failures.append(f"{inv}: coset of size {len(S)} gave {v}")
        # singletons: coset rule and the sh = #S endpoint agree
        for g in rng.sample(els, min(3, len(els))):
            S = ag.Subset(G, [g])
            counts["singletons"] += 1
            ub = ag.shape_upper_bound(S, S.indicator())
            if ag.shape_estimate(S) != 1.0 or not ag.is_coset(S) or abs(ub - len(S)) > 1e-9:
                failures.append(f"{inv}: singleton shape is not exactly 1")
        # intervals
        for S in _group_intervals(G, rng, 3):
            v = ag.shape_estimate(S)
            counts["intervals"] += 1
            worst_interval = max(worst_interval, v)
            if v > 2 + tol:
                failures.append(f"{inv}: interval of size {len(S)} gave {v}")
        # S S^-1 with the product witness
        if G.order >= 3:
            S = _random_subset(G, rng, rng.randrange(2, min(G.order, 6) + 1))
            D = ag.sumset_difference(S)
            w = ag.shape_upper_bound(D, ag.difference_witness(S))
            v = ag.shape_estimate(D)
            counts["differences"] += 1
            bound = len(D) / len(S)
            if w > bound + transport_tol or v > bound + transport_tol:
                failures.append(f"{inv}: S S^-1 bound {bound} vs witness {w}, estimate {v}")
            # sh(S) <= #S for a general subset
            if ag.shape_estimate(S) > len(S) + tol:
                failures.append(f"{inv}: shape above #S")
        # translation and automorphism invariance
        if G.order >= 3:
            S = _random_subset(G, rng, rng.randrange(2, min(G.order - 1, 6) + 1))
            b = rng.choice(els)
            v0 = ag.shape_estimate(S)
            v1 = ag.shape_estimate(ag.translate(S, b))
            units = [u for u in range(1, G.exponent) if math.gcd(u, G.exponent) == 1]
            u = rng.choice(units)
            v2 = ag.shape_estimate(ag.Subset(G, (g * u for g in S)))
            counts["transport"] += 2
            if abs(v1 - v0) > transport_tol or abs(v2 - v0) > transport_tol:
                failures.append(f"{inv}: translation/automorphism moved shape {v0} -> {v1}, {v2}")
    # injections and surjections along Z/2 -> Z/4 -> Z/8 and into products
    for n, m in ((2, 4), (4, 8), (2, 8), (3, 9), (4, 16)):
        G, H = ag.cyclic_group(n), ag.cyclic_group(m)
        r = m // n
        for _ in range(3):
            S = _random_subset(G, rng, rng.randrange(1, n + 1))
            img = ag.Subset(H, (ag.GroupElement(H, (g.coords[0] * r,)) for g in S))
            pre = ag.Subset(H, (ag.GroupElement(H, (x,)) for x in range(m) if (x % n,) in {g.coords for g in S}))
            v, vi, vp = ag.shape_estimate(S), ag.shape_estimate(img), ag.shape_estimate(pre)
            counts["transport"] += 2
            if abs(v - vi) > transport_tol or abs(v - vp) > transport_tol:
                failures.append(f"Z/{n} -> Z/{m}: shape {v}, image {vi}, preimage {vp}")
    G, P = ag.FinAbGroup([4]), ag.FinAbGroup([2, 4])
    for _ in range(3):
        S = _random_subset(G, rng, rng.randrange(1, 4))
        img = ag.Subset(P, (ag.GroupElement(P, (0, g.coords[0])) for g in S))
        v, vi = ag.shape_estimate(S), ag.shape_estimate(img)
        counts["transport"] += 1
        if abs(v - vi) > transport_tol:
            failures.append(f"Z/4 -> Z/2 x Z/4: {v} vs {vi}")
    # intervals of finite fields built by the vector-space construction
    for p, n in ((2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (2, 5), (7, 2), (2, 6)):
        F = make_field(p, n)
        for i in range(n):
            for c in range(1, p):
                S = ag.field_subset(F, ag.interval_in_vector_space(F, c, i))
                v = ag.shape_estimate(S)
                counts["intervals"] += 1
                worst_interval = max(worst_interval, v)
                if v > 2 + tol:
                    failures.append(f"F_{p}^{n}: vector-space interval (c={c}, i={i}) gave {v}")
    counts["worst_interval"] = round(worst_interval, 4)
    return CheckResult("shape_suite", not failures, counts,
                       {"interval": 2.0, "coset": 1.0}, tol, failures)


# -- 8. field layer ----------------------------------------------------------------


def prime_powers(limit: int) -> list[tuple[int, int]]:
    out = []
    for p in range(2, limit + 1):
        if is_prime(p):
            n, q = 1, p
            while q <= limit:
                out.append((p, n))
                n, q = n + 1, q * p
    return sorted(out, key=lambda t: t[0] ** t[1])


@_timed
def check_field_layer(max_q: int = 81) -> CheckResult:
    """Square roots, nonresidues and Artin-Schreier fibers, exhaustively."""
    failures = []
    fields = 0
    for p, n in prime_powers(max_q):
        F = make_field(p, n)
        fields += 1
        els = list(F.elements())
        squares: dict[int, list[int]] = {}
        for a in els:
            squares.setdefault((a * a).value, []).append(a.value)
        absent = 0
        for a in els:
            r = sqrt(a)
            roots = squares.get(a.value, [])
            if r is None:
                absent += 1
                if roots:
                    failures.append(f"F_{F.q}: sqrt({a.value}) missing")
            elif r * r != a or (p != 2 and r.value != min(roots)):
                failures.append(f"F_{F.q}: sqrt({a.value}) = {r.value} is wrong or not canonical")
        if p != 2:
            if absent != (F.q - 1) // 2:
                failures.append(f"F_{F.q}: {absent} absent roots")
            z = first_nonresidue(F)
            if z.value != min(a.value for a in els if a.value not in squares):
                failures.append(f"F_{F.q}: first nonresidue {z.value} is not the smallest")
        fibers: dict[int, list[int]] = {}
        for z in els:
            fibers.setdefault((z**p - z).value, []).append(z.value)
        for a in els:
            z = artin_schreier_solve(a)
            fiber = fibers.get(a.value, [])
            solvable = trace_to_prime(a) == 0
            if solvable != bool(fiber) or len(fiber) not in (0, p):
                failures.append(f"F_{F.q}: Artin-Schreier criterion fails at {a.value}")
            if (z is None) == solvable or (z is not None and z.value != min(fiber)):
                failures.append(f"F_{F.q}: Artin-Schreier solution at {a.value} is wrong")
    return CheckResult("field_layer", not failures, {"fields": fields}, {"max_q": max_q}, None, failures)


# -- 9. plan arithmetic ----------------------------------------------------------------


WORKED_PLANS = [
    # (g, q, p, t, i, r, interval_size)
    (1, 3, 3, 2704, 8, 972, 1458),
    (1, 2, 2, 2704, 12, 768, 1024),
    (2, 3, 3, 7056, 9, 2806, 4374),
]


@_timed
def check_plan_arithmetic(max_g: int = 5, max_q: int = 32) -> CheckResult:
    """Plan invariants over a grid and the worked examples, exactly."""
    failures = []
    plans = 0
    for g in range(1, max_g + 1):
        for p, n in prime_powers(max_q):
            q = p**n
            for exc in ((False, True) if p == 2 else (False,)):
                try:
                    P = plan_parameters(g, q, p, exc)
                except AssertionError as exc_info:
                    failures.append(f"g={g} q={q}: {exc_info}")
                    continue
                plans += 1
                if plan_parameters(g, q, p, exc) != P:
                    failures.append(f"g={g} q={q}: plan not deterministic")
    for g, q, p, t, i, r, size in WORKED_PLANS:
        P = plan_parameters(g, q, p, p == 2)
        got = (P.t, P.i, P.r, P.interval_size)
        if got != (t, i, r, size):
            failures.append(f"g={g} q={q}: got {got}, expected {(t, i, r, size)}")
    return CheckResult("plan_arithmetic", not failures, {"plans": plans, "worked": len(WORKED_PLANS)},
                       {"max_g": max_g, "max_q": max_q}, None, failures)


# -- driver ----------------------------------------------------------------------------


def run_checks(models, tolerances: Optional[dict] = None, cache: Optional[OracleCache] = None) -> VerdictReport:
    tol = dict(DEFAULT_TOLERANCES)
    tol.update(tolerances or {})
    cache = cache or OracleCache()
    checks = [
        check_oracle_zeta(models, cache),
        check_group_law(models, cache),
        check_end_to_end(models, cache),
        check_falsification(models, cache),
        check_character_sums(models, cache, tol=tol["charsum"], exact_tol=tol["charsum_exact"]),
        check_psi_structure(models, cache),
        check_shape_suite(tol=tol["shape"], transport_tol=tol["shape_transport"]),
        check_field_layer(),
        check_plan_arithmetic(),
    ]
    return VerdictReport(checks)


def run_suite(directory=None, tolerances: Optional[dict] = None) -> VerdictReport:
    return run_checks(load_corpus(directory), tolerances)
