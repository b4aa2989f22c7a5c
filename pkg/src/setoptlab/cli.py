"""Command-line surface.

Exit codes: 0 success, 1 the analysis ran and found a hypothesis
violation (failed certificate pairs, union leaking outside the weak p
set, broken contraction flags), 2 usage or data errors.
"""

import argparse
import sys
from pathlib import Path

from . import reports
from .backend import active_backend
from .config import set_eps
from .contraction import refinement_probe, trace_homotopy
from .convexlike import certify
from .errors import SetOptError
from .instances import FAMILIES, generate, load_instance, save_instance
from .scalarize import lower_gap, upper_gap
from .selftest import run_selftest
from .sets import relate
from .solutions import (
    solve_bruteforce,
    weak_minimal_characterized,
    weak_p_union,
)

_PROPS = {"strict-quasi": "strict_quasi", "strict": "strict", "convexlike": "convexlike"}
_KINDS = {"min": "minimal", "weak": "weak_minimal"}


def _add_instance_arg(p):
    p.add_argument("--instance", required=True, help="instance JSON file")
    p.add_argument("--out", default=None, help="report file (default: <instance>.report.json)")
    p.add_argument("--no-report", action="store_true", help="skip writing the report file")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="setoptlab", description=__doc__)
    ap.add_argument("--epsilon", type=float, default=None, help="override the comparison tolerance")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("relate", help="decide one set relation between two decision ids")
    _add_instance_arg(p)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--order", choices=["l", "u", "h", "p"], required=True)
    p.add_argument("--strict", action="store_true")

    p = sub.add_parser("scalarize", help="gap value between two decision ids")
    _add_instance_arg(p)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--kind", choices=["lower", "upper"], required=True)

    p = sub.add_parser("solve", help="minimal / weakly minimal solution set")
    _add_instance_arg(p)
    p.add_argument("--order", choices=["l", "u", "p"], required=True)
    p.add_argument("--kind", choices=["min", "weak"], required=True)
    p.add_argument("--method", choices=["brute", "scalar"], default="brute")

    p = sub.add_parser("certify", help="convexlikeness certificate")
    _add_instance_arg(p)
    p.add_argument("--property", choices=sorted(_PROPS), required=True)
    p.add_argument("--order", choices=["l", "u", "p"], required=True)

    p = sub.add_parser("contract", help="trace the contraction homotopy")
    _add_instance_arg(p)
    p.add_argument("--order", choices=["l", "u"], required=True)
    p.add_argument("--steps", type=int, default=None, help="lambda steps (default: instance lambda_steps or 8)")
    p.add_argument("--refine", action="store_true", help="also run 2n steps and compare step sizes")
    p.add_argument("--force", action="store_true", help="trace even without certification")
    p.add_argument("--csv", default=None, help="write the homotopy table as CSV")

    p = sub.add_parser("punion", help="union of f-solution sets over the dual-base grid")
    _add_instance_arg(p)
    p.add_argument(
        "--resolution",
        type=int,
        nargs="+",
        required=True,
        help="grid resolution(s); several values sweep for the equality threshold",
    )

    p = sub.add_parser("gen", help="generate a deterministic instance")
    p.add_argument("--family", choices=sorted(FAMILIES), required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="output path (default: <family>-<seed>.json)")
    p.add_argument(
        "--param",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="generator parameter, repeatable",
    )

    p = sub.add_parser("selftest", help="run the shipped invariant suite")
    p.add_argument("--fast", action="store_true", help="skip the slower checks")
    return ap


def _report_path(args):
    if args.no_report:
        return None
    if args.out:
        return Path(args.out)
    return Path(Path(args.instance).stem + ".report.json")


def _finish(report, path):
    if report is not None and path is not None:
        reports.save_report(report, path)
        print(f"report written to {path}")


def _parse_params(items):
    params = {}
    for item in items:
        if "=" not in item:
            raise SetOptError(f"--param expects KEY=VALUE, got {item!r}")
        key, _, val = item.partition("=")
        try:
            params[key] = int(val)
        except ValueError:
            try:
                params[key] = float(val)
            except ValueError:
                params[key] = val
    return params


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.epsilon is not None:
        set_eps(args.epsilon)

    if args.command == "selftest":
        failures = run_selftest(fast=args.fast)
        return 1 if failures else 0

    if args.command == "gen":
        inst = generate(args.family, _parse_params(args.param), args.seed)
        out = Path(args.out) if args.out else Path(f"{args.family}-{args.seed}.json")
        save_instance(inst, out)
        print(f"instance written to {out} ({inst.n} points, backend {active_backend()})")
        return 0

    inst = load_instance(args.instance)
    report = reports.new_report(inst, args.instance)
    rc = 0

    if args.command == "relate":
        res = relate(inst.cone, inst.value(args.left), inst.value(args.right), args.order, args.strict)
        rel = ("<<" if args.strict else "<=") + f"^{args.order}"
        print(f"value({args.left}) {rel} value({args.right}): {res}")
        reports.add_relate(report, args.left, args.right, args.order, args.strict, res)

    elif args.command == "scalarize":
        fn = lower_gap if args.kind == "lower" else upper_gap
        res = fn(inst.cone, inst.value(args.left), inst.value(args.right))
        print(
            f"{args.kind}-gap(value({args.left}), value({args.right})) = {res.value:.12g} "
            f"(outer point #{res.witness_outer}, inner point #{res.witness_inner})"
        )
        reports.add_scalar(report, f"{args.kind}-gap", args.left, args.right, res)

    elif args.command == "solve":
        kind = _KINDS[args.kind]
        if args.method == "scalar":
            if kind != "weak_minimal":
                raise SetOptError("the scalar method characterizes the weak kind only")
            rep = weak_minimal_characterized(inst, args.order)
        else:
            rep = solve_bruteforce(inst, args.order, kind)
        print(f"{kind} ({args.order}, {rep.method}): {', '.join(rep.members) or '<empty>'}")
        reports.add_solution(report, rep)

    elif args.command == "certify":
        cert = certify(inst, _PROPS[args.property], args.order)
        reports.add_certificate(report, cert)
        if cert.passed:
            print(f"{args.property} ({args.order}): PASS on all {len(cert.pairs)} pairs")
        else:
            fails = cert.failures()
            print(f"{args.property} ({args.order}): FAIL on {len(fails)} pairs, e.g. {fails[0]}")
            rc = 1

    elif args.command == "contract":
        steps = args.steps or inst.lambda_steps or 8
        rep = trace_homotopy(inst, args.order, steps, force=args.force)
        if rep.warning:
            print(f"warning: {rep.warning}")
        print(
            f"homotopy over {len(rep.members)} weak points x {len(rep.lambdas)} lambdas: "
            f"endpoint={rep.endpoint_identity} constant_base={rep.constant_base} "
            f"membership={rep.membership_ok} ties={rep.tie_events} max_step={rep.max_step:.6g}"
        )
        reports.add_contraction(report, rep)
        if args.csv:
            rep.to_csv(args.csv)
            print(f"table written to {args.csv}")
        if args.refine:
            probe = refinement_probe(inst, args.order, steps, force=args.force)
            print(
                f"refinement: max_step({steps})={probe['max_step_n']:.6g} "
                f"max_step({2 * steps})={probe['max_step_2n']:.6g} ok={probe['ok']}"
            )
            if not probe["ok"]:
                rc = 1
        if not rep.all_flags_ok or rep.tie_events:
            rc = 1

    elif args.command == "punion":
        threshold = None
        for N in sorted(set(args.resolution)):
            rep = weak_p_union(inst, N)
            print(
                f"union over {len(rep.q_sizes)} functionals (N={rep.resolution}): "
                f"{', '.join(rep.members) or '<empty>'}"
            )
            if rep.missing:
                print(f"  grid residual (weak p points not yet sampled): {', '.join(rep.missing)}")
            if rep.extra:
                print(f"  VIOLATION: union points outside the weak p set: {', '.join(rep.extra)}")
                rc = 1
            if rep.all_singletons:
                print(f"  all f-solution sets are singletons; max path jump = {rep.max_jump:.6g}")
            if threshold is None and not rep.missing and not rep.extra:
                threshold = N
            reports.add_punion(report, rep)
        print(f"brute-force weak p set: {', '.join(rep.wp_members)}")
        if len(args.resolution) > 1:
            if threshold is None:
                print("no tested resolution reproduces the weak p set")
            else:
                print(f"union matches the weak p set from resolution {threshold} on")

    _finish(report, _report_path(args))
    return rc


def main(argv=None) -> int:
    try:
        return run(argv)
    except SetOptError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
