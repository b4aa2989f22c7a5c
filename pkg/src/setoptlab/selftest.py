"""Self-contained invariant suite over the shipped fixture families.

Runs the cross-route checks that the full pytest suite covers, on a
smaller budget, without needing any files on disk. Each check prints one
ok/FAIL line; the return value is the list of failures.
"""

import numpy as np

from . import backend
from .config import get_eps
from .contraction import refinement_probe, trace_homotopy
from .convexlike import certify
from .instances import generate, random_cone, three_point_instance
from .scalarize import bisection_threshold, lower_gap, lower_scalar, upper_gap, upper_scalar
from .sets import FiniteSet
from .solutions import (
    solve_bruteforce,
    vop_solve,
    weak_minimal_characterized,
    weak_p_union,
)


def _random_sets(rng, m, max_pts=5):
    def one():
        return FiniteSet(rng.integers(-4, 5, size=(int(rng.integers(1, max_pts + 1)), m)) / 2.0)

    return one


def run_selftest(fast: bool = False) -> list:
    failures = []

    def check(name, ok, detail=""):
        line = f"{'ok  ' if ok else 'FAIL'} {name}"
        if detail and not ok:
            line += f": {detail}"
        print(line)
        if not ok:
            failures.append(name)

    print(f"backend: {backend.active_backend()}, epsilon: {get_eps():g}")

    inst = three_point_instance()
    expected = ("x1", "x2")
    routes = {
        "brute l weak": solve_bruteforce(inst, "l", "weak_minimal").members,
        "brute l min": solve_bruteforce(inst, "l", "minimal").members,
        "brute u weak": solve_bruteforce(inst, "u", "weak_minimal").members,
        "brute p weak": solve_bruteforce(inst, "p", "weak_minimal").members,
        "scalar l": weak_minimal_characterized(inst, "l").members,
        "scalar u": weak_minimal_characterized(inst, "u").members,
        "vop weak": vop_solve(inst, "weakly_efficient").members,
        "vop eff": vop_solve(inst, "efficient").members,
    }
    for name, members in routes.items():
        check(f"three-point {name} = {{x1, x2}}", members == expected, str(members))

    seg = generate("segment-l", {"n_points": 5})
    wl = solve_bruteforce(seg, "l", "weak_minimal").members
    check("segment-l: every point weakly minimal", wl == seg.ids, str(wl))
    rep = trace_homotopy(seg, "l", 4, force=True)
    check("segment-l trace flags", rep.all_flags_ok and rep.tie_events == 0)
    check("segment-l max step equals grid spacing", abs(rep.max_step - 0.25) < 1e-12)

    quad = generate("quad-l", {"n_points": 7}, seed=7)
    cert = certify(quad, "strict_quasi", "l")
    check("quad-l certifies strict quasi (l)", cert.passed)
    same = (
        solve_bruteforce(quad, "l", "minimal").members
        == solve_bruteforce(quad, "l", "weak_minimal").members
    )
    check("quad-l minimal = weak minimal (l)", same)
    agree = (
        weak_minimal_characterized(quad, "l").members
        == solve_bruteforce(quad, "l", "weak_minimal").members
    )
    check("quad-l scalar route = brute force (l)", agree)
    rep = trace_homotopy(quad, "l", 8)
    check("quad-l contraction flags", rep.all_flags_ok and rep.tie_events == 0)

    apex = generate("apex-u", {"n_points": 7}, seed=1)
    check("apex-u certifies strict quasi (u)", certify(apex, "strict_quasi", "u").passed)
    same = (
        solve_bruteforce(apex, "u", "minimal").members
        == solve_bruteforce(apex, "u", "weak_minimal").members
    )
    check("apex-u minimal = weak minimal (u)", same)
    rep = trace_homotopy(apex, "u", 8)
    check("apex-u contraction flags", rep.all_flags_ok and rep.tie_events == 0)

    ridge = generate("ridge-p", {"n_points": 9}, seed=3)
    check("ridge-p certifies strict quasi (p)", certify(ridge, "strict_quasi", "p").passed)
    same = (
        solve_bruteforce(ridge, "p", "minimal").members
        == solve_bruteforce(ridge, "p", "weak_minimal").members
    )
    check("ridge-p minimal = weak minimal (p)", same)
    pun = weak_p_union(ridge, 8)
    check("ridge-p f-solution sets all singletons", pun.all_singletons, str(pun.q_sizes))

    stair = generate("staircase-p", {"n_points": 7}, seed=0)
    pun = weak_p_union(stair, 64)
    check("staircase-p union(64) = weak p set", pun.members == pun.wp_members and not pun.extra)
    for N in (1, 4, 16):
        pun = weak_p_union(stair, N)
        check(f"staircase-p union({N}) inside weak p set", not pun.extra)

    rng = np.random.default_rng(2024)
    n_triples = 20 if fast else 60
    worst = 0.0
    cones = [
        random_cone(rng, 2, "orthant"),
        random_cone(rng, 2, "general"),
        random_cone(rng, 2, "redundant"),
        random_cone(rng, 3, "square3"),
    ]
    for k in range(n_triples):
        cone = cones[k % len(cones)]
        make = _random_sets(rng, cone.dim)
        S, y = make(), rng.integers(-4, 5, size=cone.dim) / 2.0
        worst = max(worst, abs(lower_scalar(cone, S, y).value - bisection_threshold(cone, S, y, "l")))
        worst = max(worst, abs(upper_scalar(cone, S, y).value - bisection_threshold(cone, S, y, "u")))
    check(f"scalarizers match the bisection oracle ({n_triples} triples)", worst <= 1e-8, f"worst {worst:g}")

    worst = 0.0
    cone = cones[1]
    make = _random_sets(rng, 2)
    for _ in range(10 if fast else 40):
        A = make()
        worst = max(worst, abs(lower_gap(cone, A, A).value), abs(upper_gap(cone, A, A).value))
    check("self gaps vanish", worst <= 1e-9, f"worst {worst:g}")

    if not fast:
        probe = refinement_probe(quad, "l", 8)
        check("quad-l refinement step bound", probe["ok"])
        free = generate("free", {"n_points": 10}, seed=5)
        for order in ("l", "u"):
            agree = (
                weak_minimal_characterized(free, order).members
                == solve_bruteforce(free, order, "weak_minimal").members
            )
            check(f"free instance scalar route = brute force ({order})", agree)

    print(f"{len(failures)} failures")
    return failures
