"""Report files: every analysis result with enough witnesses to replay it.

A report is self-contained: an independent checker can re-verify every
claim using only the module APIs, which is exactly what `replay_report`
does. Pair keys are serialized as "id1|id2".
"""

import json

import numpy as np

from .config import get_eps
from .contraction import ContractionReport
from .convexlike import ConvexlikeCertificate, TInterval
from .errors import ParseError
from .sets import FiniteSet, relate
from .solutions import Instance, PUnionReport, SolutionReport, solve_bruteforce

REPORT_TAG = "setoptlab-report/1"


def new_report(inst: Instance, path=None) -> dict:
    return {
        "format": REPORT_TAG,
        "epsilon": get_eps(),
        "instance": {
            "path": None if path is None else str(path),
            "provenance": inst.provenance,
        },
        "analyses": [],
    }


def _interval_doc(iv: TInterval):
    return {"lo": iv.lo, "hi": iv.hi, "lo_open": iv.lo_open, "hi_open": iv.hi_open}


def add_relate(report, left, right, order, strict, result) -> None:
    report["analyses"].append(
        {
            "analysis": "relate",
            "left": left,
            "right": right,
            "order": order,
            "strict": strict,
            "result": bool(result),
        }
    )


def add_scalar(report, kind, left, right, result) -> None:
    report["analyses"].append(
        {
            "analysis": "scalarize",
            "kind": kind,
            "left": left,
            "right": right,
            "value": result.value,
            "witness_outer": result.witness_outer,
            "witness_inner": result.witness_inner,
        }
    )


def add_solution(report, rep: SolutionReport) -> None:
    report["analyses"].append(
        {
            "analysis": "solve",
            "order": rep.order,
            "kind": rep.kind,
            "method": rep.method,
            "members": list(rep.members),
            "certificates": rep.certificates,
        }
    )


def add_certificate(report, cert: ConvexlikeCertificate) -> None:
    pairs = {}
    for (a, b), ev in cert.pairs.items():
        pairs[f"{a}|{b}"] = {
            "witnesses": [[x3, _interval_doc(iv)] for x3, iv in ev.witnesses],
            "uncovered": None if ev.uncovered is None else _interval_doc(ev.uncovered),
        }
    report["analyses"].append(
        {
            "analysis": "certify",
            "property": cert.prop,
            "order": cert.order,
            "passed": cert.passed,
            "pairs": pairs,
        }
    )


def add_contraction(report, rep: ContractionReport) -> None:
    table = []
    for x_id, etas, hs, gaps in zip(rep.members, rep.eta_ids, rep.h_ids, rep.gap_values):
        for lam, eta, h, g in zip(rep.lambdas, etas, hs, gaps):
            table.append([x_id, lam, eta, h, g])
    report["analyses"].append(
        {
            "analysis": "contract",
            "order": rep.order,
            "star_center": rep.star_center,
            "spacing": rep.spacing,
            "members": list(rep.members),
            "endpoint_identity": rep.endpoint_identity,
            "constant_base": rep.constant_base,
            "membership_ok": rep.membership_ok,
            "tie_events": rep.tie_events,
            "max_step": rep.max_step,
            "warning": rep.warning,
            "table": table,
        }
    )


def add_punion(report, rep: PUnionReport) -> None:
    report["analyses"].append(
        {
            "analysis": "punion",
            "resolution": rep.resolution,
            "members": list(rep.members),
            "wp_members": list(rep.wp_members),
            "missing": list(rep.missing),
            "extra": list(rep.extra),
            "q_sizes": list(rep.q_sizes),
            "all_singletons": rep.all_singletons,
            "max_jump": rep.max_jump,
        }
    )


def save_report(report, path) -> None:
    with open(path, "w") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_report(path) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from exc
    if doc.get("format") != REPORT_TAG:
        raise ParseError(f"unknown report tag {doc.get('format')!r}")
    return doc


# ---------------------------------------------------------------------------
# replay


def _replay_solution(entry, inst: Instance, problems) -> None:
    strict = entry["kind"] == "weak_minimal"
    for pid, cert in entry.get("certificates", {}).items():
        wid = cert["witness"]
        fw = relate(inst.cone, inst.value(wid), inst.value(pid), entry["order"], strict)
        bw = relate(inst.cone, inst.value(pid), inst.value(wid), entry["order"], strict)
        if not fw or bw:
            problems.append(
                f"solve[{entry['order']}/{entry['kind']}]: certificate for {pid} "
                f"(witness {wid}) does not replay"
            )
    expected = solve_bruteforce(inst, entry["order"], entry["kind"])
    if list(expected.members) != list(entry["members"]):
        problems.append(
            f"solve[{entry['order']}/{entry['kind']}]: members differ from brute force"
        )


def _replay_certificate(entry, inst: Instance, problems) -> None:
    strict = entry["property"] != "convexlike"
    for key, ev in entry["pairs"].items():
        a, b = key.split("|")
        P1 = inst.value(a).points
        P2 = inst.value(b).points
        for x3, ivd in ev["witnesses"]:
            t = 0.5 * (ivd["lo"] + ivd["hi"])
            comb = FiniteSet(
                np.array([t * p + (1 - t) * q for p in P1 for q in P2])
            )
            if not relate(inst.cone, inst.value(x3), comb, entry["order"], strict):
                problems.append(
                    f"certify[{entry['property']}/{entry['order']}]: witness {x3} "
                    f"for pair {key} fails at t={t:.4g}"
                )


def _replay_contraction(entry, inst: Instance, problems) -> None:
    members = set(solve_bruteforce(inst, entry["order"], "weak_minimal").members)
    if set(entry["members"]) != members:
        problems.append(f"contract[{entry['order']}]: member list differs from brute force")
    for x_id, lam, eta, h, gap in entry["table"]:
        if entry["membership_ok"] and h not in members:
            problems.append(f"contract: cell ({x_id}, {lam}) maps outside the weak set")
        if lam == 1.0 and entry["endpoint_identity"] and h != x_id:
            problems.append(f"contract: endpoint identity fails at {x_id}")


def _replay_punion(entry, inst: Instance, problems) -> None:
    wp = set(solve_bruteforce(inst, "p", "weak_minimal").members)
    if set(entry["wp_members"]) != wp:
        problems.append("punion: recorded weak p set differs from brute force")
    for pid in entry["members"]:
        if pid not in wp and pid not in entry["extra"]:
            problems.append(f"punion: {pid} in the union but not in the weak p set")


def replay_report(report: dict, inst: Instance) -> list:
    """Re-verify every replayable claim; returns a list of problems."""
    problems = []
    for entry in report.get("analyses", []):
        kind = entry.get("analysis")
        if kind == "solve":
            _replay_solution(entry, inst, problems)
        elif kind == "certify":
            _replay_certificate(entry, inst, problems)
        elif kind == "contract":
            _replay_contraction(entry, inst, problems)
        elif kind == "punion":
            _replay_punion(entry, inst, problems)
    return problems
