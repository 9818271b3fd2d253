"""Command-line front end: ``picgen <subcommand> ...``.

Exit codes: 0 when every asserted invariant holds, 1 when a curve fails
validation (the failing clause is named) or a check fails, 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from . import abelian_group as ag
from .curve_model import (
    HyperellipticModel,
    ModelError,
    ResourceGuardError,
    affine_points,
    count_points,
    points_with_x_in,
)
from .finite_field import FieldError, make_field
from .generator_algorithm import char_sum_table, check_generation, generate, oracle_context, twist_violations
from .jacobian import (
    DivisorError,
    add,
    divisor_from_spec,
    enumerate_picard,
    group_order_via_zeta,
    l_polynomial,
    psi,
)
from .kernel import BACKEND
from .verify import DEFAULT_TOLERANCES, CorpusError, load_curve, run_suite, shipped_corpus_dir

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def resolve_curve(arg: str) -> HyperellipticModel:
    """A curve file path, or the name of a shipped corpus curve."""
    path = Path(arg)
    if not path.is_file():
        shipped = shipped_corpus_dir() / (path.stem + ".json")
        if not shipped.is_file():
            raise UsageError(f"no curve file {arg!r} (and no shipped curve named {path.stem!r})")
        path = shipped
    return load_curve(path)


def emit(args, data, table: Optional[list[list]] = None, header: Optional[list[str]] = None, text: str = "") -> None:
    if getattr(args, "json", False):
        print(json.dumps(data, sort_keys=True, indent=2))
        return
    if text:
        print(text)
    if table is not None:
        print(format_table(table, header))


def format_table(rows: list[list], header: Optional[list[str]] = None) -> str:
    rows = [[str(c) for c in r] for r in rows]
    if header:
        rows = [list(header)] + rows
    if not rows:
        return ""
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    if header:
        lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


# -- subcommands ----------------------------------------------------------------


def cmd_validate(args) -> int:
    m = resolve_curve(args.curve)
    info = {"valid": True, "g": m.g, "q": m.q, "exceptional": m.is_exceptional(), "name": m.name}
    emit(args, info, text=f"valid, g={m.g}, q={m.q}")
    return EXIT_OK


def cmd_points(args) -> int:
    m = resolve_curve(args.curve)
    if args.xset:
        xs, _ = ag.parse_subset_spec(args.xset, m.field)
        pts = points_with_x_in(m, xs)
    else:
        pts = affine_points(m)
    rows = [[P.x.value, P.y.value] for P in pts]
    emit(args, {"points": rows, "count": len(rows)}, rows, ["x", "y"], text=f"{len(rows)} affine points")
    return EXIT_OK


def cmd_count(args) -> int:
    m = resolve_curve(args.curve)
    n = count_points(m, args.ext)
    emit(args, {"ext": args.ext, "count": n}, text=str(n))
    return EXIT_OK


def cmd_picard(args) -> int:
    m = resolve_curve(args.curve)
    if args.action == "order":
        n = group_order_via_zeta(m)
        emit(args, {"order": n, "L": l_polynomial(m)}, text=str(n))
        return EXIT_OK
    if args.action == "enumerate":
        T = enumerate_picard(m)
        rows = [[D.to_spec()["u"], D.to_spec()["v"], T.coords(D)] for D in T.elements]
        data = {"order": T.order, "invariant_factors": list(T.group.invariant_factors),
                "elements": [dict(D.to_spec(), coords=list(T.coords(D))) for D in T.elements]}
        emit(args, data, rows, ["u", "v", "coords"],
             text=f"order {T.order}, invariant factors {list(T.group.invariant_factors)}")
        return EXIT_OK
    if args.action == "add":
        if not (args.a and args.b):
            raise UsageError("picard add needs --a and --b")
        D = add(divisor_from_spec(m, json.loads(args.a)), divisor_from_spec(m, json.loads(args.b)))
        emit(args, D.to_spec(), text=json.dumps(D.to_spec(), sort_keys=True))
        return EXIT_OK
    if args.action == "psi":
        if not m.is_exceptional():
            raise ModelError("exceptional_case", "psi needs characteristic 2 and deg(h) = g")
        if args.d:
            D = divisor_from_spec(m, json.loads(args.d))
            emit(args, {"psi": psi(m, D)}, text=str(psi(m, D)))
        else:
            T = enumerate_picard(m)
            rows = [[D.to_spec()["u"], D.to_spec()["v"], psi(m, D)] for D in T.elements]
            emit(args, {"values": [dict(D.to_spec(), psi=psi(m, D)) for D in T.elements]}, rows, ["u", "v", "psi"])
        return EXIT_OK
    raise UsageError(f"unknown picard action {args.action!r}")


def _shape_subset(args) -> ag.Subset:
    if args.field:
        F = make_field(args.field[0], args.field[1])
        xs, _ = ag.parse_subset_spec(args.subset, F)
        return ag.field_subset(F, xs)
    if args.group:
        G = ag.FinAbGroup([int(d) for d in args.group.split(",")])
        if not args.elements:
            raise UsageError("--group needs --elements")
        els = []
        for token in args.elements.split(","):
            coords = tuple(int(c) for c in token.split("."))
            els.append(G.element(coords))
        return ag.Subset(G, els)
    raise UsageError("shape needs --field P N --subset SPEC or --group D1,D2 --elements ...")


def cmd_shape(args) -> int:
    S = _shape_subset(args)
    est = ag.shape_estimate(S, tol=args.tol, max_iter=args.max_iter)
    ind = ag.shape_upper_bound(S, S.indicator())
    data = {"size": len(S), "group": list(S.group.invariant_factors), "is_coset": ag.is_coset(S),
            "indicator_bound": round(ind, 9), "estimate": round(est, 9), "tolerance": args.tol}
    rows = [[k, v] for k, v in data.items()]
    emit(args, data, rows, ["quantity", "value"])
    return EXIT_OK if est <= ind + args.tol else EXIT_FAIL


def cmd_generate(args) -> int:
    m = resolve_curve(args.curve)
    rep = generate(m, plan_only=args.plan_only)
    data = rep.to_dict()
    ok = True
    if not rep.plan_only and args.verify:
        T = enumerate_picard(m)
        span = len(T.closure(rep.generators))
        ok = span == T.order
        data["closure"] = {"generated_order": span, "group_order": T.order, "full": ok}
    P = rep.params
    rows = [[k, v] for k, v in P.to_dict().items() if k != "interval_spec"]
    rows.append(["interval", json.dumps(P.interval_spec, sort_keys=True)])
    if not rep.plan_only:
        rows.append(["points_found", rep.points_found])
        rows.append(["generators", len(rep.generators)])
        if "closure" in data:
            rows.append(["closure", f"{data['closure']['generated_order']} of {data['closure']['group_order']}"])
    emit(args, data, rows, ["parameter", "value"])
    if not args.json and not rep.plan_only:
        for D in rep.generators:
            print(json.dumps(D.to_spec(), sort_keys=True))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_check(args) -> int:
    m = resolve_curve(args.curve)
    xs, mode = ag.parse_subset_spec(args.subset, m.field)
    if args.mode:
        mode = args.mode
    v = check_generation(m, xs, mode)
    data = v.to_dict()
    emit(args, data, [[k, val] for k, val in data.items()], ["field", "value"])
    return EXIT_FAIL if v.counterexample else EXIT_OK


def cmd_charsum(args) -> int:
    m = resolve_curve(args.curve)
    ctx = oracle_context(m)
    rows = char_sum_table(m, ctx, tol=args.tol, exact_tol=args.exact_tol)
    twist = twist_violations(m, ctx, tol=args.tol)
    bad = [r for r in rows if not r.ok]
    data = {
        "rows": len(rows),
        "violations": len(bad),
        "twist_violations": len(twist),
        "tolerance": args.tol,
        "exact_tolerance": args.exact_tol,
        "table": [
            {"lambda": r.lambda_index.value, "chi": list(r.chi.exponents), "kind": r.kind,
             "value": [round(r.value.real, 9) + 0.0, round(r.value.imag, 9) + 0.0],
             "bound": round(r.bound, 9), "ok": r.ok}
            for r in rows
        ],
    }
    table = [[r.lambda_index.value, list(r.chi.exponents), r.kind, f"{r.value.real:+.6f}{r.value.imag:+.6f}i",
              f"{r.bound:.6f}", "ok" if r.ok else "VIOLATION"] for r in rows]
    emit(args, data, table, ["lambda", "chi", "kind", "value", "bound", "status"],
         text=f"{len(rows)} rows, {len(bad)} violations, {len(twist)} twist violations (tol {args.tol})")
    return EXIT_OK if not bad and not twist else EXIT_FAIL


def cmd_suite(args) -> int:
    tolerances = {
        "charsum": args.tol_charsum,
        "charsum_exact": args.tol_exact,
        "shape": args.tol_shape,
        "shape_transport": args.tol_transport,
    }
    report = run_suite(args.corpus, tolerances)
    if args.json:
        print(json.dumps(report.to_dict(), sort_keys=True, indent=2))
    else:
        for c in report.checks:
            print(c.line())
            for f in c.failures[:5]:
                print(f"    {f}")
        print("overall:", "PASS" if report.passed else "FAIL")
    return EXIT_OK if report.passed else EXIT_FAIL


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="picgen", description="Generators of Pic^0 of hyperelliptic curves over finite fields.")
    parser.add_argument("--version", action="version", version=f"picgen {__version__} ({BACKEND} kernel)")
    sub = parser.add_subparsers(dest="command", required=True)

    def curve_cmd(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("curve", help="curve JSON file or shipped corpus name")
        p.add_argument("--json", action="store_true", help="emit one JSON document")
        p.set_defaults(func=fn)
        return p

    curve_cmd("validate", cmd_validate, "check the model conditions")
    p = curve_cmd("points", cmd_points, "list affine points")
    p.add_argument("--xset", help="restrict x to a subset spec")
    p = curve_cmd("count", cmd_count, "count points over an extension")
    p.add_argument("--ext", type=int, default=1, help="extension degree j")

    p = sub.add_parser("picard", help="Picard group oracle")
    p.add_argument("action", choices=["enumerate", "order", "add", "psi"])
    p.add_argument("curve")
    p.add_argument("--a", help='divisor as JSON {"u": [...], "v": [...]}')
    p.add_argument("--b", help="second divisor for add")
    p.add_argument("--d", help="divisor for psi (all classes when omitted)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_picard)

    p = sub.add_parser("shape", help="shape parameter upper bound of a subset")
    p.add_argument("--field", type=int, nargs=2, metavar=("P", "N"))
    p.add_argument("--subset", help="subset spec for --field")
    p.add_argument("--group", help="invariant factors, comma separated")
    p.add_argument("--elements", help="coordinates joined by '.', elements by ','")
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--max-iter", type=int, default=10_000)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_shape)

    p = curve_cmd("generate", cmd_generate, "run the generator algorithm")
    p.add_argument("--plan-only", action="store_true")
    p.add_argument("--no-verify", dest="verify", action="store_false",
                   help="skip the closure check against the oracle")

    p = curve_cmd("check", cmd_check, "test the generation theorems on one subset")
    p.add_argument("--subset", required=True)
    p.add_argument("--mode", choices=["coset", "interval", "explicit"])

    p = curve_cmd("charsum", cmd_charsum, "character sums and their bounds")
    p.add_argument("--tol", type=float, default=DEFAULT_TOLERANCES["charsum"])
    p.add_argument("--exact-tol", type=float, default=DEFAULT_TOLERANCES["charsum_exact"])

    p = sub.add_parser("suite", help="run every acceptance check over a corpus")
    p.add_argument("corpus", nargs="?", default=None, help="corpus directory (default: shipped)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--tol-charsum", type=float, default=DEFAULT_TOLERANCES["charsum"])
    p.add_argument("--tol-exact", type=float, default=DEFAULT_TOLERANCES["charsum_exact"])
    p.add_argument("--tol-shape", type=float, default=DEFAULT_TOLERANCES["shape"])
    p.add_argument("--tol-transport", type=float, default=DEFAULT_TOLERANCES["shape_transport"])
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CorpusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL if exc.clause else EXIT_USAGE
    except ModelError as exc:
        print(f"invalid: clause {exc.clause}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, ag.GroupError, DivisorError, FieldError, ResourceGuardError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
