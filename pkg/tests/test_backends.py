import numpy as np
import pytest

import setoptlab as sl
import setoptlab._kernels_numba as knb
import setoptlab._kernels_numpy as knp
from setoptlab import backend


@pytest.fixture(autouse=True)
def restore_backend():
    yield
    backend.set_backend(None)


def _instances():
    for seed, cone in ((0, "orthant"), (1, "skewed"), (2, "general")):
        yield sl.generate(
            "free", {"n_points": 12, "max_value_size": 5, "cone": cone}, seed=seed
        )


def test_gap_matrices_agree():
    for inst in _instances():
        flat, offs = inst.packed()
        a = knp.lower_gap_matrix(inst.cone.gens_e, flat, offs)
        b = knb.lower_gap_matrix(inst.cone.gens_e, flat, offs)
        np.testing.assert_array_equal(a, b)
        a = knp.upper_gap_matrix(inst.cone.gens_w, flat, offs)
        b = knb.upper_gap_matrix(inst.cone.gens_w, flat, offs)
        np.testing.assert_array_equal(a, b)


def test_relate_matrices_agree():
    for inst in _instances():
        flat, offs = inst.packed()
        for upper in (False, True):
            for strict in (False, True):
                a = knp.relate_lu_matrix(inst.cone.gens, flat, offs, upper, strict, 1e-9)
                b = knb.relate_lu_matrix(inst.cone.gens, flat, offs, upper, strict, 1e-9)
                np.testing.assert_array_equal(a, b)
        sig = inst.sup_points()
        for strict in (False, True):
            a = knp.relate_h_matrix(inst.cone.gens, flat, offs, sig, strict, 1e-9)
            b = knb.relate_h_matrix(inst.cone.gens, flat, offs, sig, strict, 1e-9)
            np.testing.assert_array_equal(a, b)


def test_matrices_match_scalar_ops():
    inst = sl.generate("free", {"n_points": 8, "max_value_size": 4}, seed=3)
    G = inst.gap_matrix("l")
    H = inst.gap_matrix("u")
    R = inst.dominance_matrix("l", True)
    for i in range(inst.n):
        for j in range(inst.n):
            assert G[i, j] == pytest.approx(
                sl.lower_gap(inst.cone, inst.values[i], inst.values[j]).value, abs=1e-12
            )
            assert H[i, j] == pytest.approx(
                sl.upper_gap(inst.cone, inst.values[i], inst.values[j]).value, abs=1e-12
            )
            assert R[i, j] == sl.relate(
                inst.cone, inst.values[i], inst.values[j], "l", True
            )


def test_backend_switch_changes_module():
    backend.set_backend("numpy")
    assert backend.active_backend() == "numpy"
    assert backend.kernels() is knp
    backend.set_backend("numba")
    assert backend.active_backend() == "numba"
    assert backend.kernels() is knb
    with pytest.raises(ValueError):
        backend.set_backend("fortran")


def test_solutions_identical_across_backends():
    inst_doc = sl.instance_to_dict(
        sl.generate("free", {"n_points": 10, "max_value_size": 4}, seed=9)
    )
    results = {}
    for name in ("numpy", "numba"):
        backend.set_backend(name)
        inst = sl.instance_from_dict(inst_doc)  # fresh caches
        results[name] = (
            sl.solve_bruteforce(inst, "l", "weak_minimal").members,
            sl.solve_bruteforce(inst, "u", "minimal").members,
            sl.weak_minimal_characterized(inst, "l").members,
            sl.weak_minimal_characterized(inst, "u").members,
        )
    assert results["numpy"] == results["numba"]
