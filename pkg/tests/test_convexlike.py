import numpy as np
import pytest

import setoptlab as sl
from setoptlab.convexlike import TInterval, normalize_intervals


def curve_instance():
    # K = {0, 0.5, 1} with values (x^2, (1-x)^2) on the plane orthant
    cone = sl.build_cone(np.eye(2), [1.0, 1.0])
    points = [("x000", [0.0]), ("x001", [0.5]), ("x002", [1.0])]
    values = {
        "x000": np.array([[0.0, 1.0]]),
        "x001": np.array([[0.25, 0.25]]),
        "x002": np.array([[1.0, 0.0]]),
    }
    return sl.make_instance(cone, points, values, star_center="x000")


def minkowski_combination(P1, P2, t):
    return sl.FiniteSet(np.array([t * p + (1 - t) * q for p in P1 for q in P2]))


def test_feasible_interval_examples(orthant2):
    ivs = sl.feasible_t_set(orthant2, [[0, 0]], [[2, 2]], [[0, 0]], "l", strict=True)
    assert len(ivs) == 1
    assert ivs[0].lo == 0.0 and not ivs[0].lo_open
    assert ivs[0].hi == pytest.approx(1.0, abs=1e-8) and ivs[0].hi_open

    for F3 in ([[0, 2]], [[2, 0]]):
        assert sl.feasible_t_set(orthant2, [[0, 2]], [[2, 0]], F3, "l", strict=True) == []

    ivs = sl.feasible_t_set(orthant2, [[1, 1]], [[1, 1]], [[1, 1]], "l", strict=False)
    assert len(ivs) == 1 and ivs[0].lo == 0.0 and ivs[0].hi == 1.0
    assert not ivs[0].lo_open and not ivs[0].hi_open


def test_interval_algebra():
    merged = normalize_intervals(
        [TInterval(0.5, 1.0), TInterval(0.0, 0.5), TInterval(0.2, 0.3)]
    )
    assert len(merged) == 1 and merged[0].lo == 0.0 and merged[0].hi == 1.0
    # open touching endpoints leave a gap point
    kept = normalize_intervals(
        [TInterval(0.0, 0.5, hi_open=True), TInterval(0.5, 1.0, lo_open=True)]
    )
    assert len(kept) == 2
    from setoptlab.convexlike import intersect_interval_lists

    mid = intersect_interval_lists(
        [TInterval(0.0, 0.6)], [TInterval(0.4, 1.0, lo_open=True)]
    )
    assert len(mid) == 1 and mid[0].lo == 0.4 and mid[0].lo_open and mid[0].hi == 0.6
    ok, gap = sl.covers_open_unit([TInterval(0.0, 0.4), TInterval(0.6, 1.0)], 1e-9)
    assert not ok and gap.lo == pytest.approx(0.4) and gap.hi == pytest.approx(0.6)
    ok, gap = sl.covers_open_unit(
        [TInterval(0.0, 0.5, hi_open=True), TInterval(0.5, 1.0, lo_open=True)], 1e-9
    )
    assert ok  # eps-bridging at the shared endpoint


def test_certify_curve_pair_witness():
    inst = curve_instance()
    cert = sl.certify(inst, "strict_quasi", "l")
    ev = cert.pairs[("x000", "x002")]
    assert ev.passed
    x3, iv = ev.witnesses[0]
    assert x3 == "x001"
    assert iv.contains(0.5)
    # the pair of adjacent curve points has no witness
    assert not cert.pairs[("x000", "x001")].passed
    assert not cert.passed


def test_certify_antichain_pair_fails(orthant2):
    points = [("x1", [0.0]), ("x2", [1.0])]
    values = {"x1": np.array([[0.0, 2.0]]), "x2": np.array([[2.0, 0.0]])}
    inst = sl.make_instance(orthant2, points, values)
    cert = sl.certify(inst, "strict_quasi", "l")
    assert not cert.passed
    assert cert.pairs[("x1", "x2")].uncovered == TInterval(0.0, 1.0)


def test_certify_constant_values_fail(orthant2):
    points = [("x1", [0.0]), ("x2", [1.0]), ("x3", [2.0])]
    values = {k: np.array([[1.0, 1.0]]) for k, _ in points}
    inst = sl.make_instance(orthant2, points, values)
    for order in ("l", "u", "p"):
        assert not sl.certify(inst, "strict_quasi", order).passed


def test_certificate_replay():
    rng = np.random.default_rng(41)
    for seed in range(4):
        inst = sl.generate("quad-l", {"n_points": 6}, seed=seed)
        cert = sl.certify(inst, "strict_quasi", "l")
        assert cert.passed
        for (a, b), ev in cert.pairs.items():
            x3, iv = ev.witnesses[0]
            t = iv.midpoint()
            comb = minkowski_combination(inst.value(a).points, inst.value(b).points, t)
            assert sl.relate(inst.cone, inst.value(x3), comb, "l", strict=True)


def test_fail_replays_by_sampling():
    inst = curve_instance()
    ev = sl.certify(inst, "strict_quasi", "l").pairs[("x000", "x001")]
    assert not ev.passed
    P1, P2 = inst.value("x000").points, inst.value("x001").points
    for t in np.linspace(0.0, 1.0, 101):
        comb = minkowski_combination(P1, P2, t)
        for x3 in inst.ids:
            assert not sl.relate(inst.cone, inst.value(x3), comb, "l", strict=True)


def test_strict_implies_strict_quasi():
    for seed in range(3):
        inst = sl.generate("ridge-p", {"n_points": 6}, seed=seed)
        for order in ("l", "p"):
            if sl.certify(inst, "strict", order).passed:
                assert sl.certify(inst, "strict_quasi", order).passed
                break
        else:
            pytest.fail("expected at least one strict certificate on ridge instances")


def test_coverage_properties_on_ridge():
    inst = sl.generate("ridge-p", {"n_points": 7}, seed=2)
    assert sl.certify(inst, "convexlike", "p").passed
    assert sl.certify(inst, "strict", "p").passed
    assert sl.certify(inst, "strict_quasi", "p").passed


def test_certify_u_on_apex_family():
    for seed in range(3):
        inst = sl.generate("apex-u", {"n_points": 6}, seed=seed)
        cert = sl.certify(inst, "strict_quasi", "u")
        assert cert.passed
        for (a, b), ev in cert.pairs.items():
            x3, iv = ev.witnesses[0]
            comb = minkowski_combination(
                inst.value(a).points, inst.value(b).points, iv.midpoint()
            )
            assert sl.relate(inst.cone, inst.value(x3), comb, "u", strict=True)


def test_scalar_strict_quasi_examples():
    got = sl.scalar_strict_quasi_convexlike({"x1": 2.0, "x2": 4.0, "x3": 1.0})
    assert got[("x1", "x2")] == {"witness": ("x3", 0.0)}
    got = sl.scalar_strict_quasi_convexlike({"x1": 5.0, "x2": 5.0, "x3": 5.0})
    assert all(v == {"fail": True} for v in got.values())
    got = sl.scalar_strict_quasi_convexlike({"a": 3.0, "b": 0.0, "c": 2.0, "d": 7.0})
    assert got[("a", "c")] == {"witness": ("b", 1.0)}
    assert got[("a", "d")] == {"witness": ("b", 0.0)}


def test_scalar_bridge_on_certified_instance():
    # strict quasi convexlikeness of the objective pushes down to the
    # scalarized map against every fixed anchor
    inst = sl.generate("quad-l", {"n_points": 6}, seed=9)
    assert sl.certify(inst, "strict_quasi", "l").passed
    G = inst.gap_matrix("l")
    for j, y0 in enumerate(inst.ids):
        values = {pid: float(G[i, j]) for i, pid in enumerate(inst.ids)}
        got = sl.scalar_strict_quasi_convexlike(values)
        assert all("witness" in v for v in got.values())
