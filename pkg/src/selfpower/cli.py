"""Command-line front end.

Exit codes: 0 success, 1 verification mismatch, 2 usage or domain error,
3 oracle budget refused.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .arith import DomainError, ModulusContext
from .counts import CountBreakdown, fp_count_total, tc_count_total
from .oracle import (
    BudgetExceeded,
    RangeSpec,
    default_budget,
    enumerate_fixed_points,
    enumerate_two_cycles,
)
from .verify import (
    KINDS,
    CountReport,
    grid_from_bounds,
    heuristic_ratio,
    identity_suite,
    padic_property_checks,
    sweep,
    verify_fixed,
    verify_two_cycles,
)

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

REPORT_HEADER = ["kind", "p", "e", "n", "formula_total", "oracle_total", "match", "elapsed_ms"]
CLASS_HEADER = ["kind", "p", "e", "n", "class", "formula", "oracle"]
RATIO_HEADER = ["kind", "p", "e", "n", "full_count", "reduced_count", "ratio", "reference"]


def _common(parser: argparse.ArgumentParser):
    parser.add_argument("--format", choices=["human", "json", "csv"], default="human")
    parser.add_argument("--budget", type=int, default=None,
                        help="max oracle candidate evaluations (default $SELFPOWER_BUDGET or 1e8)")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0, help="seed for sampled property checks")
    parser.add_argument("--timing", action="store_true", help="include elapsed_ms in reports")


def _instance(parser: argparse.ArgumentParser):
    parser.add_argument("--p", type=int, required=True)
    parser.add_argument("--e", type=int, required=True)
    parser.add_argument("--n", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="selfpower",
        description="Count and verify fixed points and two-cycles of x -> x^(x^n) mod p^e.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("count-fixed", "count-two-cycles"):
        sp = sub.add_parser(name, help="closed-form count (no enumeration)")
        _instance(sp)
        _common(sp)

    sp = sub.add_parser("enumerate", help="list solutions by brute force")
    sp.add_argument("kind", choices=["fixed", "two-cycles"])
    _instance(sp)
    sp.add_argument("--range", choices=[r.value for r in RangeSpec], default="full")
    sp.add_argument("--limit", type=int, default=None)
    _common(sp)

    sp = sub.add_parser("verify", help="compare formula and oracle")
    sp.add_argument("kind", choices=["fixed", "two-cycles", "all"])
    _instance(sp)
    sp.add_argument("--per-class", action="store_true", help="csv: emit per-class rows")
    _common(sp)

    sp = sub.add_parser("sweep", help="verify every point of a (p, e, n) grid")
    sp.add_argument("--p-max", type=int, required=True)
    sp.add_argument("--e-max", type=int, required=True)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--kinds", nargs="+", choices=["fixed", "two-cycles"], default=["fixed", "two-cycles"])
    sp.add_argument("--per-class", action="store_true", help="csv: emit per-class rows")
    sp.add_argument("--self-test", action="store_true",
                    help="also run the sum-form, boundary and p-adic property checks")
    _common(sp)

    sp = sub.add_parser("heuristic", help="share of solutions inside 1..p^e")
    _instance(sp)
    sp.add_argument("--kind", choices=["fixed", "two-cycles", "both"], default="fixed")
    _common(sp)
    return parser


def _kind(name: str) -> str:
    return "two-cycle" if name.startswith("two") else name


def _csv(rows, header) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _breakdown_dict(b: CountBreakdown) -> dict:
    return {
        "kind": b.kind,
        "p": b.p,
        "e": b.e,
        "n": b.n,
        "regime": b.regime.value,
        "total": b.total,
        "nonsingular_total": b.nonsingular_total,
        "per_class": {str(k): c for k, c in sorted(b.per_class.items())},
        "singular_classes": [str(k) for k in sorted(b.singular)],
    }


def _render_breakdown(b: CountBreakdown, fmt: str) -> str:
    if fmt == "json":
        return _json(_breakdown_dict(b))
    if fmt == "csv":
        rows = [[b.kind, b.p, b.e, b.n, str(k), c, ""] for k, c in sorted(b.per_class.items())]
        rows.append([b.kind, b.p, b.e, b.n, "total", b.total, ""])
        return _csv(rows, CLASS_HEADER)
    lines = [
        f"{b.kind} points of x^(x^{b.n}) mod {b.p}^{b.e}",
        f"  regime:      {b.regime.value}",
        f"  total:       {b.total}",
        f"  nonsingular: {b.nonsingular_total}",
    ]
    for k, c in sorted(b.per_class.items()):
        tag = " (singular)" if k in b.singular else ""
        lines.append(f"  class {k}: {c}{tag}")
    return "\n".join(lines) + "\n"


def _report_row(r: CountReport) -> list:
    elapsed = "" if r.elapsed_ms is None else r.elapsed_ms
    oracle = "" if r.oracle_total is None else r.oracle_total
    formula = "" if r.formula_total is None else r.formula_total
    return [r.kind, r.p, r.e, r.n, formula, oracle, str(r.match).lower(), elapsed]


def _render_reports(reports: list[CountReport], fmt: str, per_class: bool = False) -> str:
    if fmt == "json":
        return _json([r.to_dict() for r in reports])
    if fmt == "csv":
        if per_class:
            rows = [
                [r.kind, r.p, r.e, r.n, c.key, c.formula, c.oracle] for r in reports for c in r.per_class
            ]
            return _csv(rows, CLASS_HEADER)
        return _csv([_report_row(r) for r in reports], REPORT_HEADER)
    lines = []
    for r in reports:
        status = "MATCH" if r.match else "MISMATCH"
        if r.error:
            status = f"ERROR {r.error}"
        timing = "" if r.elapsed_ms is None else f" [{r.elapsed_ms} ms]"
        lines.append(
            f"{status:8} {r.kind:9} p={r.p} e={r.e} n={r.n} regime={r.regime} "
            f"formula={r.formula_total} oracle={r.oracle_total}{timing}"
        )
        for c in r.per_class:
            flag = "" if c.formula == c.oracle else "   <-- differs"
            lines.append(f"           class {c.key}: formula={c.formula} oracle={c.oracle}{flag}")
    return "\n".join(lines) + ("\n" if lines else "")


def _cmd_count(args) -> int:
    ctx = ModulusContext(args.p, args.e)
    fn = fp_count_total if args.command == "count-fixed" else tc_count_total
    sys.stdout.write(_render_breakdown(fn(ctx, args.n), args.format))
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    ctx = ModulusContext(args.p, args.e)
    fn = enumerate_fixed_points if args.kind == "fixed" else enumerate_two_cycles
    records = fn(ctx, args.n, RangeSpec(args.range), budget=args.budget, workers=args.workers)
    shown = records if args.limit is None else records[: args.limit]
    rows = [r.as_row() for r in shown]
    if args.format == "json":
        sys.stdout.write(_json({"count": len(records), "solutions": rows}))
    elif args.format == "csv":
        header = list(rows[0]) if rows else (["x", "y", "x0", "x1"] if args.kind != "fixed" else ["x", "x0", "x1"])
        sys.stdout.write(_csv([[("" if v is None else v) for v in row.values()] for row in rows], header))
    else:
        for r in shown:
            sys.stdout.write(f"{r.x}\n" if r.y is None else f"{r.x} {r.y}\n")
        if len(shown) < len(records):
            print(f"... {len(records) - len(shown)} more", file=sys.stderr)
    return EXIT_OK


def _cmd_verify(args) -> int:
    ctx = ModulusContext(args.p, args.e)
    kinds = ["fixed", "two-cycles"] if args.kind == "all" else [args.kind]
    reports = []
    for kind in kinds:
        fn = verify_fixed if kind == "fixed" else verify_two_cycles
        reports.append(fn(ctx, args.n, budget=args.budget, workers=args.workers, timing=args.timing))
    sys.stdout.write(_render_reports(reports, args.format, args.per_class))
    return EXIT_OK if all(r.match for r in reports) else EXIT_MISMATCH


def _self_test(args) -> tuple[bool, dict]:
    checks = identity_suite()
    failed = [c for c in checks if not c.ok]
    props = padic_property_checks(seed=args.seed)
    summary = {
        "identities": {"checked": len(checks), "failed": [f"{c.name}{c.params}" for c in failed]},
        "padic": {p.name: {"cases": p.cases, "failures": len(p.failures)} for p in props},
    }
    return not failed and all(p.ok for p in props), summary


def _cmd_sweep(args) -> int:
    grid = grid_from_bounds(args.p_max, args.e_max, args.n_max)
    kinds = [k for k in KINDS if k in {_kind(x) for x in args.kinds}]
    reports = sweep(grid, kinds, workers=args.workers, budget=args.budget, timing=args.timing)
    sys.stdout.write(_render_reports(reports, args.format, args.per_class))
    ok = all(r.match for r in reports)
    if any(r.error and "BudgetExceeded" in r.error for r in reports):
        print("some points exceeded the oracle budget", file=sys.stderr)
    if args.self_test:
        passed, summary = _self_test(args)
        print(json.dumps(summary, indent=2), file=sys.stderr)
        ok = ok and passed
    return EXIT_OK if ok else EXIT_MISMATCH


def _cmd_heuristic(args) -> int:
    ctx = ModulusContext(args.p, args.e)
    kinds = ["fixed", "two-cycle"] if args.kind == "both" else [_kind(args.kind)]
    reports = [heuristic_ratio(ctx, args.n, k, budget=args.budget) for k in kinds]
    if args.format == "json":
        sys.stdout.write(_json([r.to_dict() for r in reports]))
    elif args.format == "csv":
        sys.stdout.write(_csv([list(r.to_dict().values()) for r in reports], RATIO_HEADER))
    else:
        for r in reports:
            print(
                f"{r.kind} p={r.p} e={r.e} n={r.n}: {r.reduced_count} of {r.full_count} "
                f"in 1..p^e, ratio {r.ratio} = {float(r.ratio):.4f} (1/p = {float(r.reference):.4f})"
            )
    return EXIT_OK


COMMANDS = {
    "count-fixed": _cmd_count,
    "count-two-cycles": _cmd_count,
    "enumerate": _cmd_enumerate,
    "verify": _cmd_verify,
    "sweep": _cmd_sweep,
    "heuristic": _cmd_heuristic,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.budget is None:
        args.budget = default_budget()
    try:
        return COMMANDS[args.command](args)
    except BudgetExceeded as exc:
        print(f"selfpower: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except DomainError as exc:
        print(f"selfpower: {exc}", file=sys.stderr)
        return EXIT_USAGE


run = main

if __name__ == "__main__":
    sys.exit(main())
