import json

import numpy as np
import pytest

import setoptlab as sl
from setoptlab.cli import main
from setoptlab.errors import BadParams, ParseError, ValidationError
from setoptlab.reports import load_report, replay_report


def test_round_trip(tmp_path):
    inst = sl.generate("quad-l", {"n_points": 6}, seed=4)
    path = tmp_path / "inst.json"
    sl.save_instance(inst, path)
    again = sl.load_instance(path)
    assert sl.instance_to_dict(inst) == sl.instance_to_dict(again)
    # byte-stable second save
    sl.save_instance(again, tmp_path / "again.json")
    assert (tmp_path / "inst.json").read_bytes() == (tmp_path / "again.json").read_bytes()


def test_unknown_version_tag(tmp_path):
    inst = sl.generate("segment-l", {}, seed=0)
    doc = sl.instance_to_dict(inst)
    doc["format"] = "setoptlab-instance/99"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(ParseError, match="format"):
        sl.load_instance(path)


def test_missing_value_names_id(tmp_path):
    inst = sl.three_point_instance()
    doc = sl.instance_to_dict(inst)
    del doc["values"]["x2"]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(ValidationError, match="x2"):
        sl.load_instance(path)


def test_non_pointed_cone_rejected(tmp_path):
    inst = sl.three_point_instance()
    doc = sl.instance_to_dict(inst)
    doc["cone"]["dual_generators"] = [[1.0, 0.0], [2.0, 0.0]]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(ValidationError, match="NotPointed"):
        sl.load_instance(path)


def test_malformed_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(ParseError):
        sl.load_instance(path)


def test_generator_determinism(tmp_path):
    a = sl.generate("apex-u", {"n_points": 6}, seed=11)
    b = sl.generate("apex-u", {"n_points": 6}, seed=11)
    assert sl.instance_to_dict(a) == sl.instance_to_dict(b)
    c = sl.generate("apex-u", {"n_points": 6}, seed=12)
    assert sl.instance_to_dict(a) != sl.instance_to_dict(c)


def test_apex_family_structure():
    inst = sl.generate("apex-u", {"n_points": 6, "n_offsets": 3}, seed=2)
    assert sl.values_apex_shaped(inst)
    for v in inst.values:
        # first point dominates the rest through the cone
        a0 = v.points[0]
        for p in v.points[1:]:
            assert sl.membership(inst.cone, a0 - p, "C")


def test_quad_family_is_shape_translate():
    inst = sl.generate("quad-l", {"n_points": 5, "shape_points": 4}, seed=3)
    sizes = {len(v) for v in inst.values}
    assert sizes == {4}
    # all values are translates of a common shape
    base = inst.values[0].points - inst.values[0].points[0]
    for v in inst.values:
        np.testing.assert_allclose(v.points - v.points[0], base, atol=1e-12)


def test_bad_params():
    with pytest.raises(BadParams):
        sl.generate("nope", {}, seed=0)
    with pytest.raises(BadParams):
        sl.generate("quad-l", {"m": 5}, seed=0)
    with pytest.raises(BadParams):
        sl.generate("quad-l", {"bogus": 1}, seed=0)
    with pytest.raises(BadParams):
        sl.generate("free", {"n_points": 1000}, seed=0)
    with pytest.raises(BadParams):
        sl.generate("staircase-p", {"n_points": 20}, seed=0)


def test_provenance_recorded():
    inst = sl.generate("ridge-p", {"n_points": 5}, seed=8)
    assert inst.provenance["family"] == "ridge-p"
    assert inst.provenance["seed"] == 8


# ---------------------------------------------------------------------------
# CLI


@pytest.fixture()
def stair_file(tmp_path):
    path = tmp_path / "stair.json"
    sl.save_instance(sl.generate("staircase-p", {"n_points": 5}, seed=0), path)
    return path


def test_cli_gen_solve_roundtrip(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(["gen", "--family", "segment-l", "--seed", "0", "--out", "seg.json"]) == 0
    assert main(
        ["solve", "--instance", "seg.json", "--order", "l", "--kind", "weak"]
    ) == 0
    report = load_report(tmp_path / "seg.report.json")
    inst = sl.load_instance(tmp_path / "seg.json")
    assert replay_report(report, inst) == []


def test_cli_relate_and_scalarize(stair_file, tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    assert main(
        [
            "relate", "--instance", str(stair_file), "--left", "x000",
            "--right", "x001", "--order", "p", "--no-report",
        ]
    ) == 0
    assert "False" in capsys.readouterr().out
    assert main(
        [
            "scalarize", "--instance", str(stair_file), "--kind", "lower",
            "--left", "x000", "--right", "x000", "--no-report",
        ]
    ) == 0
    assert "= 0" in capsys.readouterr().out


def test_cli_certify_exit_codes(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    ridge = tmp_path / "ridge.json"
    sl.save_instance(sl.generate("ridge-p", {"n_points": 5}, seed=1), ridge)
    assert main(
        [
            "certify", "--instance", str(ridge), "--property", "strict-quasi",
            "--order", "p", "--out", "ok.report.json",
        ]
    ) == 0
    seg = tmp_path / "seg.json"
    sl.save_instance(sl.generate("segment-l", {"n_points": 4}, seed=0), seg)
    assert main(
        [
            "certify", "--instance", str(seg), "--property", "strict-quasi",
            "--order", "l", "--no-report",
        ]
    ) == 1
    report = load_report(tmp_path / "ok.report.json")
    assert replay_report(report, sl.load_instance(ridge)) == []


def test_cli_contract(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    quad = tmp_path / "quad.json"
    sl.save_instance(sl.generate("quad-l", {"n_points": 6}, seed=7), quad)
    rc = main(
        [
            "contract", "--instance", str(quad), "--order", "l", "--steps", "4",
            "--refine", "--csv", "table.csv", "--out", "contract.report.json",
        ]
    )
    assert rc == 0
    assert (tmp_path / "table.csv").exists()
    report = load_report(tmp_path / "contract.report.json")
    assert replay_report(report, sl.load_instance(quad)) == []
    # refusal without --force on an uncertified instance
    seg = tmp_path / "seg.json"
    sl.save_instance(sl.generate("segment-l", {"n_points": 4}, seed=0), seg)
    assert main(
        ["contract", "--instance", str(seg), "--order", "l", "--no-report"]
    ) == 2


def test_cli_punion(stair_file, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(
        [
            "punion", "--instance", str(stair_file), "--resolution", "64",
            "--out", "punion.report.json",
        ]
    ) == 0
    report = load_report(tmp_path / "punion.report.json")
    assert replay_report(report, sl.load_instance(stair_file)) == []


def test_cli_usage_errors(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    # missing instance file is an operational error
    assert main(["solve", "--instance", str(tmp_path / "nope.json"), "--order", "l", "--kind", "weak"]) == 2


def test_cli_epsilon_flag(stair_file, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    old = sl.get_eps()
    try:
        assert main(
            [
                "--epsilon", "1e-6",
                "relate", "--instance", str(stair_file), "--left", "x000",
                "--right", "x000", "--order", "l", "--no-report",
            ]
        ) == 0
        assert sl.get_eps() == 1e-6
    finally:
        sl.set_eps(old)
