import numpy as np
import pytest

import setoptlab as sl
from setoptlab import reports
from setoptlab.config import tolerance
from setoptlab.errors import ParseError


@pytest.fixture()
def quad():
    return sl.generate("quad-l", {"n_points": 6}, seed=7)


def full_report(inst):
    rep = reports.new_report(inst, "mem")
    reports.add_solution(rep, sl.solve_bruteforce(inst, "l", "weak_minimal"))
    reports.add_solution(rep, sl.weak_minimal_characterized(inst, "u"))
    reports.add_certificate(rep, sl.certify(inst, "strict_quasi", "l"))
    reports.add_contraction(rep, sl.trace_homotopy(inst, "l", 4))
    reports.add_punion(rep, sl.weak_p_union(inst, 8))
    return rep


def test_replay_clean(quad):
    assert reports.replay_report(full_report(quad), quad) == []


def test_replay_flags_tampered_members(quad):
    rep = full_report(quad)
    solve = next(e for e in rep["analyses"] if e["analysis"] == "solve")
    solve["members"] = list(solve["members"]) + ["x000"]
    problems = reports.replay_report(rep, quad)
    assert any("members differ" in p for p in problems)


def test_replay_flags_bogus_certificate_witness(quad):
    rep = full_report(quad)
    solve = next(e for e in rep["analyses"] if e["analysis"] == "solve")
    # claim the excluded points are dominated by themselves
    for pid, cert in solve["certificates"].items():
        cert["witness"] = pid
    if solve["certificates"]:
        problems = reports.replay_report(rep, quad)
        assert any("does not replay" in p for p in problems)


def test_replay_flags_bad_convexlike_witness(quad):
    rep = full_report(quad)
    entry = next(e for e in rep["analyses"] if e["analysis"] == "certify")
    key = next(iter(entry["pairs"]))
    a, b = key.split("|")
    # swap the witness for one of the pair's own endpoints at t = 0.5,
    # which cannot strictly dominate the combination
    entry["pairs"][key]["witnesses"] = [
        [a, {"lo": 0.5, "hi": 0.5, "lo_open": False, "hi_open": False}]
    ]
    problems = reports.replay_report(rep, quad)
    assert any("fails at t" in p for p in problems)


def test_report_round_trip(tmp_path, quad):
    rep = full_report(quad)
    path = tmp_path / "r.json"
    reports.save_report(rep, path)
    again = reports.load_report(path)
    assert reports.replay_report(again, quad) == []
    path.write_text('{"format": "other/1"}')
    with pytest.raises(ParseError):
        reports.load_report(path)


def test_lambda_steps_round_trip(tmp_path, orthant2):
    inst = sl.make_instance(
        orthant2,
        [("a", [0.0]), ("b", [1.0])],
        {"a": [[0.0, 1.0]], "b": [[1.0, 0.0]]},
        star_center="a",
        lambda_steps=12,
    )
    path = tmp_path / "inst.json"
    sl.save_instance(inst, path)
    assert sl.load_instance(path).lambda_steps == 12


def test_tolerance_context_manager():
    base = sl.get_eps()
    with tolerance(1e-6):
        assert sl.get_eps() == 1e-6
    assert sl.get_eps() == base
    with pytest.raises(ValueError):
        sl.set_eps(-1.0)
