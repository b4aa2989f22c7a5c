"""Minimal / weakly minimal solution sets of finite set optimization instances.

An instance is a finite decision set K (ids with coordinates), a
set-valued objective id -> FiniteSet, and an ordering cone. Solution sets
are computed twice: by exhaustive pairwise definition checks (the ground
truth) and, for the weak l/u sets, by the scalarization characterization.
The p-order machinery (f-solution sets over a dual-base grid) follows the
apex identity for simplicial cones.
"""

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import backend
from .config import resolve_eps
from .cone import Cone, sup_point
from .errors import (
    DimensionMismatch,
    EmptyWeakMinimalSet,
    NotInDualCone,
    NotSimplicial,
    NotSingleValued,
    ValidationError,
)
from .sets import FiniteSet, sets_equal

KINDS = ("minimal", "weak_minimal")


@dataclass(frozen=True)
class Instance:
    """Decision ids with coordinates, objective values and a cone."""

    cone: Cone
    ids: tuple
    X: np.ndarray  # (n, d) decision coordinates
    values: tuple  # FiniteSet per id, aligned with ids
    star_center: str | None = None
    lambda_steps: int | None = None
    provenance: dict | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.X.setflags(write=False)

    @property
    def n(self) -> int:
        return len(self.ids)

    @property
    def decision_dim(self) -> int:
        return self.X.shape[1]

    def index(self, point_id: str) -> int:
        try:
            return self._cache.setdefault(
                "index", {pid: i for i, pid in enumerate(self.ids)}
            )[point_id]
        except KeyError:
            raise KeyError(f"unknown decision id {point_id!r}") from None

    def value(self, point_id: str) -> FiniteSet:
        return self.values[self.index(point_id)]

    def packed(self):
        """Values stacked flat plus int64 segment offsets (kernel layout)."""
        if "packed" not in self._cache:
            offs = np.zeros(self.n + 1, dtype=np.int64)
            for i, v in enumerate(self.values):
                offs[i + 1] = offs[i] + len(v)
            flat = np.vstack([v.points for v in self.values])
            self._cache["packed"] = (np.ascontiguousarray(flat), offs)
        return self._cache["packed"]

    def sup_points(self) -> np.ndarray:
        """Apex of every value set (simplicial cones only)."""
        if "sigmas" not in self._cache:
            self._cache["sigmas"] = np.vstack(
                [sup_point(self.cone, v.points) for v in self.values]
            )
        return self._cache["sigmas"]

    def gap_matrix(self, order: str) -> np.ndarray:
        """All-pairs gap values: entry [i, j] scores value_i against value_j."""
        key = ("gap", order)
        if key not in self._cache:
            flat, offs = self.packed()
            k = backend.kernels()
            if order == "l":
                self._cache[key] = k.lower_gap_matrix(self.cone.gens_e, flat, offs)
            elif order == "u":
                self._cache[key] = k.upper_gap_matrix(self.cone.gens_w, flat, offs)
            else:
                raise ValueError(f"gap matrices exist for orders 'l'/'u', got {order!r}")
        return self._cache[key]

    def dominance_matrix(self, order: str, strict: bool, eps=None) -> np.ndarray:
        """R[i, j] = relate(value_i, value_j, order, strict) for all pairs."""
        eps = resolve_eps(eps)
        key = ("dom", order, strict, eps)
        if key not in self._cache:
            flat, offs = self.packed()
            k = backend.kernels()
            if order in ("l", "u"):
                R = k.relate_lu_matrix(
                    self.cone.gens, flat, offs, order == "u", strict, eps
                )
            elif order in ("h", "p"):
                if not self.cone.simplicial:
                    raise NotSimplicial("h/p orders need a simplicial cone")
                R = k.relate_h_matrix(
                    self.cone.gens, flat, offs, self.sup_points(), strict, eps
                )
                if order == "p" and not strict:
                    R = np.array(R)
                    for i, j in zip(*np.nonzero(~R)):
                        if sets_equal(self.values[i], self.values[j], eps):
                            R[i, j] = True
            else:
                raise ValueError(f"unknown order {order!r}")
            self._cache[key] = np.asarray(R)
        return self._cache[key]


def make_instance(
    cone: Cone,
    points,
    values,
    star_center=None,
    lambda_steps=None,
    provenance=None,
    eps=None,
) -> Instance:
    """Validate and assemble an Instance.

    `points` is a sequence of (id, coords); `values` maps id to an array of
    outcome points. Raises ValidationError naming the offending id/field.
    """
    eps = resolve_eps(eps)
    ids = []
    coords = []
    seen = set()
    for pid, xy in points:
        pid = str(pid)
        if pid in seen:
            raise ValidationError(f"duplicate decision id {pid!r}")
        seen.add(pid)
        ids.append(pid)
        coords.append(np.asarray(xy, dtype=np.float64).ravel())
    if not ids:
        raise ValidationError("instance needs at least one decision point")
    d = coords[0].shape[0]
    if any(c.shape[0] != d for c in coords):
        raise ValidationError("decision coordinates have inconsistent dimension")
    X = np.vstack(coords)
    for i, j in itertools.combinations(range(len(ids)), 2):
        if np.all(np.abs(X[i] - X[j]) <= eps):
            raise ValidationError(
                f"decision points {ids[i]!r} and {ids[j]!r} coincide"
            )

    vals = []
    for pid in ids:
        if pid not in values:
            raise ValidationError(f"missing value for decision id {pid!r}")
        fs = values[pid] if isinstance(values[pid], FiniteSet) else FiniteSet(values[pid])
        if fs.dim != cone.dim:
            raise DimensionMismatch(
                f"value of {pid!r} lives in R^{fs.dim}, cone expects R^{cone.dim}"
            )
        if len(fs) > 32:
            raise ValidationError(f"value of {pid!r} has {len(fs)} points (max 32)")
        vals.append(fs)
    extra = set(values) - set(ids)
    if extra:
        raise ValidationError(f"values given for unknown ids {sorted(extra)}")
    if star_center is not None and star_center not in seen:
        raise ValidationError(f"star_center {star_center!r} is not a decision id")
    if lambda_steps is not None and int(lambda_steps) < 1:
        raise ValidationError("lambda_steps must be a positive integer")

    return Instance(
        cone=cone,
        ids=tuple(ids),
        X=X,
        values=tuple(vals),
        star_center=star_center,
        lambda_steps=None if lambda_steps is None else int(lambda_steps),
        provenance=provenance,
    )


@dataclass(frozen=True)
class SolutionReport:
    """Membership report with replayable exclusion certificates.

    Every excluded id carries the dominating id and the relation that
    witnessed the exclusion; `members` is sorted by id.
    """

    order: str
    kind: str
    method: str
    members: tuple
    certificates: dict

    def member_set(self):
        return set(self.members)


def _report(inst, order, kind, method, member_mask, witness_for):
    members = sorted(pid for pid, ok in zip(inst.ids, member_mask) if ok)
    certificates = {}
    for j, pid in enumerate(inst.ids):
        if not member_mask[j]:
            certificates[pid] = witness_for(j)
    return SolutionReport(
        order=order, kind=kind, method=method, members=tuple(members), certificates=certificates
    )


def solve_bruteforce(inst: Instance, order: str, kind: str, eps=None) -> SolutionReport:
    """Solution set straight from the definition, by exhaustive pairwise scan.

    x0 is kept iff every x with value(x) related below value(x0) is related
    back: relate(F(x), F(x0)) implies relate(F(x0), F(x)). kind "minimal"
    uses the nonstrict relation, "weak_minimal" the strict one.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    strict = kind == "weak_minimal"
    R = inst.dominance_matrix(order, strict, eps)
    # violation[i, j): i dominates j without the reverse relation
    viol = R & ~R.T
    member_mask = ~viol.any(axis=0)

    id_order = np.argsort(np.asarray(inst.ids))

    def witness_for(j):
        for i in id_order:
            if viol[i, j]:
                return {
                    "witness": inst.ids[i],
                    "order": order,
                    "strict": strict,
                    "relation": f"value({inst.ids[i]}) {'<<' if strict else '<='}^{order} value({inst.ids[j]})",
                }
        raise AssertionError("excluded id without dominator")

    return _report(inst, order, kind, "bruteforce", member_mask, witness_for)


def weak_minimal_characterized(inst: Instance, order: str, eps=None) -> SolutionReport:
    """Weak solution set through the scalarization characterization.

    x0 is weakly minimal iff no y scores strictly negative against it:
    min over y of gap(value(y), value(x0)) >= -eps. Must coincide with the
    brute-force weak report on every valid instance.
    """
    if order not in ("l", "u"):
        raise ValueError(f"characterization exists for orders 'l'/'u', got {order!r}")
    eps = resolve_eps(eps)
    G = inst.gap_matrix(order)
    member_mask = G.min(axis=0) >= -eps

    id_order = np.argsort(np.asarray(inst.ids))

    def witness_for(j):
        for i in id_order:
            if G[i, j] < -eps:
                return {
                    "witness": inst.ids[i],
                    "order": order,
                    "strict": True,
                    "gap": float(G[i, j]),
                    "relation": f"gap(value({inst.ids[i]}), value({inst.ids[j]})) < 0",
                }
        raise AssertionError("excluded id without negative gap")

    return _report(inst, order, "weak_minimal", "scalarization", member_mask, witness_for)


def _check_base_functional(cone: Cone, f, eps) -> np.ndarray:
    f = np.asarray(f, dtype=np.float64).ravel()
    cone.check_dim(f, "functional")
    if not cone.simplicial:
        raise NotSimplicial("f-solution sets need a simplicial cone")
    mu = np.linalg.solve(cone.gens_e.T, f)
    if np.any(mu < -1e-9):
        raise NotInDualCone(
            f"functional has weight {mu.min():.3g} on a dual generator"
        )
    fe = float(f @ cone.e)
    if abs(fe - 1.0) > 1e-6:
        raise ValidationError(f"functional not normalized at e: f(e) = {fe:.9g}")
    return f


def f_solution_set(inst: Instance, f, eps=None) -> list:
    """All ids whose value's worst f-score beats every apex f-score.

    Q(f) = ids x with max over a in value(x) of f(a) at most
    min over y of f(apex(value(y))); the apex identity inf over
    value(y) + C of f equals f(apex) holds for f in the dual cone.
    """
    eps = resolve_eps(eps)
    f = _check_base_functional(inst.cone, f, eps)
    flat, offs = inst.packed()
    scores = flat @ f
    sup_per_id = np.maximum.reduceat(scores, offs[:-1])
    apex_scores = inst.sup_points() @ f
    thresh = apex_scores.min()
    hit = sup_per_id <= thresh + eps
    return sorted(pid for pid, ok in zip(inst.ids, hit) if ok)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def dual_base_grid(cone: Cone, resolution: int):
    """Uniform simplex grid over the dual base {f in C*: f(e) = 1}.

    Returns (weights, functionals): all convex combinations of the
    e-normalized generators with weights on the denominator-N grid, in
    lexicographically descending weight order.
    """
    if not cone.simplicial:
        raise NotSimplicial("dual base grid needs a simplicial cone")
    N = int(resolution)
    if N < 1:
        raise ValueError("resolution must be a positive integer")
    mus = np.array(list(_compositions(N, cone.dim)), dtype=np.float64) / N
    return mus, mus @ cone.gens_e


def _snake_order(mus_int: np.ndarray) -> np.ndarray:
    """Hamilton path through the simplex grid: consecutive rows differ by
    moving one grid unit between two coordinates (m <= 3)."""
    m = mus_int.shape[1]
    if m <= 2:
        return np.arange(mus_int.shape[0])
    order = []
    firsts = sorted(set(mus_int[:, 0]), reverse=True)
    for gi, k1 in enumerate(firsts):
        rows = np.nonzero(mus_int[:, 0] == k1)[0]
        rows = rows[np.argsort(-mus_int[rows, 1])]
        if gi % 2 == 1:
            rows = rows[::-1]
        order.extend(rows.tolist())
    return np.asarray(order)


@dataclass(frozen=True)
class PUnionReport:
    """Sampled union of f-solution sets against the brute-force weak p set."""

    resolution: int
    members: tuple  # union over the grid
    wp_members: tuple  # brute force
    missing: tuple  # wp \ union (grid residual)
    extra: tuple  # union \ wp (must be empty)
    q_sizes: tuple  # |Q(f)| along the snake path
    all_singletons: bool
    max_jump: float | None  # decision-space jump along the path, if singletons


def weak_p_union(inst: Instance, resolution: int, eps=None) -> PUnionReport:
    """Union of Q(f) over the dual-base grid, with the path diagnostic.

    The union is always contained in the brute-force weak p set; equality
    may need a fine grid. When every Q(f) is a singleton the report traces
    the representatives along a Hamilton path through adjacent grid
    functionals and records the largest decision-space jump.
    """
    eps = resolve_eps(eps)
    mus, fs = dual_base_grid(inst.cone, resolution)
    q_sets = [f_solution_set(inst, f, eps) for f in fs]
    union = sorted(set(itertools.chain.from_iterable(q_sets)))
    wp = solve_bruteforce(inst, "p", "weak_minimal", eps)

    snake = _snake_order(np.rint(mus * int(resolution)).astype(np.int64))
    sizes = tuple(len(q_sets[i]) for i in snake)
    all_single = all(s == 1 for s in sizes)
    max_jump = None
    if all_single:
        path_pts = np.vstack([inst.X[inst.index(q_sets[i][0])] for i in snake])
        if path_pts.shape[0] > 1:
            jumps = np.linalg.norm(np.diff(path_pts, axis=0), axis=1)
            max_jump = float(jumps.max())
        else:
            max_jump = 0.0

    wp_set = set(wp.members)
    return PUnionReport(
        resolution=int(resolution),
        members=tuple(union),
        wp_members=wp.members,
        missing=tuple(sorted(wp_set - set(union))),
        extra=tuple(sorted(set(union) - wp_set)),
        q_sizes=sizes,
        all_singletons=all_single,
        max_jump=max_jump,
    )


def union_resolution_sweep(inst: Instance, resolutions, eps=None) -> list:
    """Union-vs-weak-p summary per grid resolution.

    The first listed resolution with an empty residual is the observed
    threshold beyond which the sampled union reproduces the weak p set.
    """
    out = []
    for N in sorted(int(n) for n in resolutions):
        rep = weak_p_union(inst, N, eps)
        out.append(
            {
                "resolution": N,
                "union_size": len(rep.members),
                "missing": rep.missing,
                "extra": rep.extra,
                "equal": rep.members == rep.wp_members,
            }
        )
    return out


def vop_solve(inst: Instance, kind: str, eps=None) -> SolutionReport:
    """Efficient / weakly efficient points for single-valued objectives.

    weakly_efficient: no y with g(x0) - g(y) interior to C.
    efficient: no y with g(x0) - g(y) in C other than g(y) = g(x0).
    Coincides with the brute-force lower-order reports on singleton values.
    """
    if kind not in ("efficient", "weakly_efficient"):
        raise ValueError(f"kind must be 'efficient' or 'weakly_efficient', got {kind!r}")
    eps = resolve_eps(eps)
    for pid, v in zip(inst.ids, inst.values):
        if len(v) != 1:
            raise NotSingleValued(f"value of {pid!r} has {len(v)} points")
    g = np.vstack([v.points[0] for v in inst.values])
    vals = (g[:, None, :] - g[None, :, :]) @ inst.cone.gens.T  # [x0, y, k] of g(x0)-g(y)
    if kind == "weakly_efficient":
        dominated = np.all(vals > eps, axis=2)  # g(x0)-g(y) in int C
    else:
        in_cone = np.all(vals >= -eps, axis=2)
        equal = np.all(np.abs(g[:, None, :] - g[None, :, :]) <= eps, axis=2)
        dominated = in_cone & ~equal
    member_mask = ~dominated.any(axis=1)

    id_order = np.argsort(np.asarray(inst.ids))

    def witness_for(j):
        for i in id_order:
            if dominated[j, i]:
                return {
                    "witness": inst.ids[i],
                    "order": "l",
                    "strict": kind == "weakly_efficient",
                    "relation": f"g({inst.ids[j]}) - g({inst.ids[i]}) in "
                    + ("int C" if kind == "weakly_efficient" else "C \\ {0}"),
                }
        raise AssertionError("excluded id without dominator")

    mapped = "weak_minimal" if kind == "weakly_efficient" else "minimal"
    return _report(inst, "l", mapped, "vector-definition", member_mask, witness_for)


def weak_members_or_raise(inst: Instance, order: str, eps=None) -> list:
    """Weak solution ids via brute force; defensively rejects emptiness."""
    report = solve_bruteforce(inst, order, "weak_minimal", eps)
    if not report.members:
        raise EmptyWeakMinimalSet("finite instance produced no weakly minimal point")
    return list(report.members)
