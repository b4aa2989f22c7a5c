"""Instance files and reproducible instance generators.

The on-disk format is a single JSON document with an explicit version
tag; floats round-trip exactly (shortest-repr serialization). Generator
families are named after the hypothesis sets they are built to satisfy;
generation never asserts a hypothesis, certification always re-checks.

Families:
    quad-l       strictly convex scalar profile times an interior
                 direction, plus a fixed shape: strictly quasi
                 convexlike for the lower order.
    apex-u       values {a0} u {a0 - c_i} with c_i in C (apex-shaped,
                 -C-convex): the upper-order hypothesis family.
    ridge-p      singleton values on an interior ray profile: strictly
                 quasi convexlike for the p order.
    staircase-p  singleton antichain with breakpoint weights on the
                 64-grid: rich weak p set, exact grid union.
    segment-l    F(x) = {(x, 1-x)} on a 1-D grid: closed-form homotopy.
    free         unstructured random instance.
"""

import json

import numpy as np

from .cone import Cone, build_cone
from .errors import BadParams, ParseError, SetOptError, ValidationError
from .solutions import Instance, make_instance

FORMAT_TAG = "setoptlab-instance/1"

STAIRCASE_SLOPES = (-63, -31, -15, -7, -3, -1)


# ---------------------------------------------------------------------------
# file format


def instance_to_dict(inst: Instance) -> dict:
    doc = {
        "format": FORMAT_TAG,
        "cone": {
            "dim": inst.cone.dim,
            "dual_generators": inst.cone.gens.tolist(),
            "e": inst.cone.e.tolist(),
            "w": inst.cone.w.tolist(),
        },
        "points": [
            {"id": pid, "coords": inst.X[i].tolist()} for i, pid in enumerate(inst.ids)
        ],
        "values": {pid: inst.values[i].points.tolist() for i, pid in enumerate(inst.ids)},
    }
    if inst.star_center is not None:
        doc["star_center"] = inst.star_center
    if inst.lambda_steps is not None:
        doc["lambda_steps"] = inst.lambda_steps
    if inst.provenance:
        doc["provenance"] = inst.provenance
    return doc


def instance_from_dict(doc: dict) -> Instance:
    if not isinstance(doc, dict):
        raise ParseError("instance document must be a JSON object")
    tag = doc.get("format")
    if tag != FORMAT_TAG:
        raise ParseError(f"unknown format tag {tag!r} (expected {FORMAT_TAG!r})")
    for key in ("cone", "points", "values"):
        if key not in doc:
            raise ParseError(f"missing required field {key!r}")
    cone_doc = doc["cone"]
    for key in ("dual_generators", "e"):
        if key not in cone_doc:
            raise ParseError(f"missing required field cone.{key!r}")
    try:
        cone = build_cone(
            cone_doc["dual_generators"], cone_doc["e"], cone_doc.get("w")
        )
        points = [(p["id"], p["coords"]) for p in doc["points"]]
        values = {pid: np.asarray(v, dtype=np.float64) for pid, v in doc["values"].items()}
        return make_instance(
            cone,
            points,
            values,
            star_center=doc.get("star_center"),
            lambda_steps=doc.get("lambda_steps"),
            provenance=doc.get("provenance"),
        )
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed instance document: {exc}") from exc
    except ValidationError:
        raise
    except SetOptError as exc:
        raise ValidationError(f"{type(exc).__name__}: {exc}") from exc


def save_instance(inst: Instance, path) -> None:
    with open(path, "w") as fh:
        json.dump(instance_to_dict(inst), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_instance(path) -> Instance:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from exc
    return instance_from_dict(doc)


# ---------------------------------------------------------------------------
# cones for generators and tests


def random_cone(rng, m: int, kind: str = "skewed") -> Cone:
    """Deterministic random cones.

    kinds: "orthant"; "skewed" (nonnegative integer generator rows, still
    containing the orthant); "general" (integer primal basis, arbitrary
    orientation); "redundant" (general plus positive-combination rows,
    non-simplicial by count); "square3" (the four-facet cone over a square
    base in R^3, genuinely non-simplicial).
    """
    if kind == "orthant":
        return build_cone(np.eye(m), np.ones(m))
    if kind == "skewed":
        while True:
            gens = np.eye(m) + rng.integers(0, 2, size=(m, m))
            if abs(np.linalg.det(gens)) > 0.5:
                e = rng.integers(1, 3, size=m).astype(float)
                w = rng.integers(1, 3, size=m).astype(float)
                return build_cone(gens, e, w)
    if kind == "general":
        while True:
            P = rng.integers(-2, 3, size=(m, m)).astype(float)
            if abs(np.linalg.det(P)) >= 1.0:
                gens = np.linalg.inv(P)
                e = P @ np.ones(m)
                w = P @ rng.integers(1, 4, size=m).astype(float)
                return build_cone(gens, e, w)
    if kind == "redundant":
        base = random_cone(rng, m, "general")
        lam = rng.integers(1, 3, size=2).astype(float)
        extra = lam[0] * base.gens[0] + lam[1] * base.gens[-1]
        gens = np.vstack([base.gens, extra])
        return build_cone(gens, base.e, base.w)
    if kind == "square3":
        if m != 3:
            raise BadParams("square3 cone lives in R^3")
        gens = np.array(
            [[1.0, 0.0, 1.0], [0.0, 1.0, 1.0], [-1.0, 0.0, 1.0], [0.0, -1.0, 1.0]]
        )
        return build_cone(gens, np.array([0.0, 0.0, 1.0]))
    raise BadParams(f"unknown cone kind {kind!r}")


# ---------------------------------------------------------------------------
# generator families


def _ids(n: int):
    return [f"x{k:03d}" for k in range(n)]


def _grid_1d(n: int) -> np.ndarray:
    if n == 1:
        return np.zeros((1, 1))
    return (np.arange(n) / (n - 1)).reshape(-1, 1)


def _convex_profile(rng, n: int) -> np.ndarray:
    """Strictly convex index profile with a guaranteed unique grid minimum:
    ((4(k - s) - 1)^2) / 16 never ties across k."""
    s = int(rng.integers(0, n))
    k = np.arange(n)
    return ((4 * (k - s) - 1) ** 2) / 16.0


def _pick_cone(rng, params):
    kind = params.get("cone", "orthant")
    m = int(params.get("m", 2))
    if m not in (2, 3):
        raise BadParams(f"m must be 2 or 3, got {m}")
    return random_cone(rng, m, kind), m


def _check_params(params, allowed):
    unknown = set(params) - set(allowed)
    if unknown:
        raise BadParams(f"unknown params {sorted(unknown)} (allowed: {sorted(allowed)})")
    if "n_points" in params:
        n = int(params["n_points"])
        if not 1 <= n <= 512:
            raise BadParams(f"n_points must be in [1, 512], got {n}")


def _gen_quad_l(rng, params):
    _check_params(params, {"n_points", "m", "cone", "shape_points"})
    n = int(params.get("n_points", 9))
    shape_n = int(params.get("shape_points", 3))
    if not 1 <= shape_n <= 32:
        raise BadParams("shape_points must be in [1, 32]")
    cone, m = _pick_cone(rng, params)
    prof = _convex_profile(rng, n)
    base = rng.integers(-2, 3, size=m).astype(float)
    shape = [np.zeros(m)] + [
        rng.integers(-2, 3, size=m) / 2.0 for _ in range(shape_n - 1)
    ]
    values = {
        pid: np.vstack([prof[k] * cone.e + base + s for s in shape])
        for k, pid in enumerate(_ids(n))
    }
    return make_instance(
        cone, list(zip(_ids(n), _grid_1d(n))), values, star_center="x000"
    )


def _gen_apex_u(rng, params):
    _check_params(params, {"n_points", "m", "cone", "n_offsets"})
    n = int(params.get("n_points", 9))
    n_off = int(params.get("n_offsets", 2))
    if not 0 <= n_off <= 31:
        raise BadParams("n_offsets must be in [0, 31]")
    cone, m = _pick_cone(rng, params)
    prof = _convex_profile(rng, n)
    base = rng.integers(-2, 3, size=m).astype(float)
    values = {}
    for k, pid in enumerate(_ids(n)):
        a0 = prof[k] * cone.e + base
        pts = [a0]
        for _ in range(n_off):
            c = rng.integers(0, 3, size=m).astype(float)
            while not c.any():
                c = rng.integers(0, 3, size=m).astype(float)
            pts.append(a0 - c)
        values[pid] = np.vstack(pts)
    return make_instance(
        cone, list(zip(_ids(n), _grid_1d(n))), values, star_center="x000"
    )


def _gen_ridge_p(rng, params):
    _check_params(params, {"n_points", "m", "cone"})
    n = int(params.get("n_points", 11))
    cone, m = _pick_cone(rng, params)
    prof = _convex_profile(rng, n)
    base = rng.integers(-2, 3, size=m).astype(float)
    values = {
        pid: (prof[k] * cone.e + base).reshape(1, -1)
        for k, pid in enumerate(_ids(n))
    }
    return make_instance(
        cone, list(zip(_ids(n), _grid_1d(n))), values, star_center="x000"
    )


def _gen_staircase_p(rng, params):
    _check_params(params, {"n_points"})
    n = int(params.get("n_points", 7))
    if not 2 <= n <= len(STAIRCASE_SLOPES) + 1:
        raise BadParams(f"staircase-p supports 2..{len(STAIRCASE_SLOPES) + 1} points")
    cone = build_cone(np.eye(2), np.ones(2))
    slopes = STAIRCASE_SLOPES[-(n - 1):]
    off = rng.integers(-2, 3, size=2).astype(float)
    heights = np.concatenate([[0.0], np.cumsum(slopes)])
    heights -= heights[-1]  # keep the last step at the offset level
    values = {
        pid: np.array([[k + off[0], heights[k] + off[1]]])
        for k, pid in enumerate(_ids(n))
    }
    return make_instance(
        cone, list(zip(_ids(n), _grid_1d(n))), values, star_center="x000"
    )


def _gen_segment_l(rng, params):
    _check_params(params, {"n_points"})
    n = int(params.get("n_points", 5))
    if n < 2:
        raise BadParams("segment-l needs at least 2 points")
    cone = build_cone(np.eye(2), np.ones(2))
    xs = _grid_1d(n)
    values = {
        pid: np.array([[xs[k, 0], 1.0 - xs[k, 0]]]) for k, pid in enumerate(_ids(n))
    }
    return make_instance(cone, list(zip(_ids(n), xs)), values, star_center="x000")


def _gen_free(rng, params):
    _check_params(params, {"n_points", "m", "d", "cone", "max_value_size"})
    n = int(params.get("n_points", 12))
    d = int(params.get("d", 2))
    max_sz = int(params.get("max_value_size", 4))
    if not 1 <= max_sz <= 32:
        raise BadParams("max_value_size must be in [1, 32]")
    cone, m = _pick_cone(rng, params)
    coords = set()
    while len(coords) < n:
        coords.add(tuple(rng.integers(0, 64, size=d).tolist()))
    X = np.array(sorted(coords), dtype=float) / 16.0
    values = {}
    for pid in _ids(n):
        sz = int(rng.integers(1, max_sz + 1))
        values[pid] = rng.integers(-4, 5, size=(sz, m)) / 2.0
    return make_instance(cone, list(zip(_ids(n), X)), values, star_center="x000")


FAMILIES = {
    "quad-l": _gen_quad_l,
    "apex-u": _gen_apex_u,
    "ridge-p": _gen_ridge_p,
    "staircase-p": _gen_staircase_p,
    "segment-l": _gen_segment_l,
    "free": _gen_free,
}


def generate(family: str, params: dict | None = None, seed: int = 0) -> Instance:
    """Deterministically generate an instance of the named family."""
    if family not in FAMILIES:
        raise BadParams(f"unknown family {family!r} (have {sorted(FAMILIES)})")
    params = dict(params or {})
    rng = np.random.default_rng(int(seed))
    inst = FAMILIES[family](rng, params)
    provenance = {"family": family, "seed": int(seed), "params": params}
    return Instance(
        cone=inst.cone,
        ids=inst.ids,
        X=inst.X,
        values=inst.values,
        star_center=inst.star_center,
        lambda_steps=inst.lambda_steps,
        provenance=provenance,
    )


def three_point_instance() -> Instance:
    """The worked example: singleton values (0,2), (2,0), (3,3) on the
    plane orthant; every solution route yields {x1, x2}."""
    cone = build_cone(np.eye(2), np.ones(2))
    points = [("x1", [0.0]), ("x2", [1.0]), ("x3", [2.0])]
    values = {
        "x1": np.array([[0.0, 2.0]]),
        "x2": np.array([[2.0, 0.0]]),
        "x3": np.array([[3.0, 3.0]]),
    }
    return make_instance(cone, points, values, star_center="x1")
