"""Certification of convexlikeness hypotheses on finite instances.

The defining inclusions compare a Minkowski combination
t*F(x1) + (1-t)*F(x2) against a candidate F(x3) through the cone. Every
generator constraint is affine in t, so the exact feasible parameter set
is a finite union of intervals computed by endpoint arithmetic, no
sampling. Three properties per order:

* convexlike:    for every t in (0,1) some x3 satisfies the nonstrict
                 inclusion (feasible sets must cover (0,1));
* strict:        same with the strict (interior) inclusion;
* strict_quasi:  some x3 and some t in [0,1] satisfy the strict inclusion
                 (closed endpoints allowed).
"""

import itertools
from dataclasses import dataclass

import numpy as np

from .config import resolve_eps
from .cone import Cone, sup_point
from .errors import NotSimplicial
from .sets import as_points

PROPERTIES = ("convexlike", "strict", "strict_quasi")


@dataclass(frozen=True)
class TInterval:
    """Interval of combination parameters, clipped to [0, 1]."""

    lo: float
    hi: float
    lo_open: bool = False
    hi_open: bool = False

    def is_empty(self) -> bool:
        if self.lo > self.hi:
            return True
        return self.lo == self.hi and (self.lo_open or self.hi_open)

    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, t: float, tol: float = 0.0) -> bool:
        above = t > self.lo + tol if self.lo_open else t >= self.lo - tol
        below = t < self.hi - tol if self.hi_open else t <= self.hi + tol
        return above and below


def _interval_from_affine(slopes, icpts, strict: bool, eps: float):
    """Feasible t in [0,1] for the system slope_j * t + icpt_j >= 0
    (strict: > 0), by exact endpoint arithmetic; strict constraints open
    the binding endpoint. Near-zero slopes become t-independent gates
    decided with the membership tolerance."""
    lo, hi = 0.0, 1.0
    lo_open = hi_open = False
    for s, c in zip(slopes, icpts):
        if abs(s) <= eps:
            ok = c > eps if strict else c >= -eps
            if not ok:
                return None
            continue
        t0 = -c / s
        if s > 0.0:
            if t0 > lo:
                lo, lo_open = t0, strict
            elif t0 == lo:
                lo_open = lo_open or strict
        else:
            if t0 < hi:
                hi, hi_open = t0, strict
            elif t0 == hi:
                hi_open = hi_open or strict
    iv = TInterval(lo, hi, lo_open, hi_open)
    return None if iv.is_empty() else iv


def normalize_intervals(intervals) -> list:
    """Sort and merge a union of intervals (touching closed endpoints fuse)."""
    ivs = sorted(
        (iv for iv in intervals if iv is not None and not iv.is_empty()),
        key=lambda iv: (iv.lo, iv.lo_open),
    )
    out = []
    for iv in ivs:
        if out:
            cur = out[-1]
            touching = iv.lo < cur.hi or (
                iv.lo == cur.hi and not (iv.lo_open and cur.hi_open)
            )
            if touching:
                if (iv.hi, not iv.hi_open) > (cur.hi, not cur.hi_open):
                    out[-1] = TInterval(cur.lo, iv.hi, cur.lo_open, iv.hi_open)
                continue
        out.append(iv)
    return out


def intersect_interval_lists(A, B) -> list:
    """Intersection of two finite unions of intervals."""
    out = []
    for a in A:
        for b in B:
            lo, lo_open = max((a.lo, a.lo_open), (b.lo, b.lo_open))
            hi, hi_open = min((a.hi, not a.hi_open), (b.hi, not b.hi_open))
            iv = TInterval(lo, hi, lo_open, not hi_open)
            if not iv.is_empty():
                out.append(iv)
    return normalize_intervals(out)


def covers_open_unit(intervals, eps: float):
    """Does the union cover (0, 1) up to eps-bridging of endpoint gaps?

    Returns (True, None) or (False, gap) with the first uncovered
    subinterval.
    """
    ivs = normalize_intervals(intervals)
    reach = 0.0
    for iv in ivs:
        if iv.lo > reach + eps:
            return False, TInterval(reach, min(iv.lo, 1.0))
        reach = max(reach, iv.hi)
        if reach >= 1.0 - eps:
            return True, None
    if reach >= 1.0 - eps:
        return True, None
    return False, TInterval(reach, 1.0)


def _pair_feasible_lu(cone, M1, M2, M3, order, strict, eps) -> list:
    """Feasible t for the lower (all combinations covered by some a3) or
    upper (every a3 under some combination) inclusion; M* are generator
    evaluations of the respective point sets."""
    n1, n2, n3 = M1.shape[0], M2.shape[0], M3.shape[0]
    if order == "l":
        result = [TInterval(0.0, 1.0)]
        for i in range(n1):
            for j in range(n2):
                slopes = M1[i] - M2[j]
                union = [
                    _interval_from_affine(slopes, M2[j] - M3[l], strict, eps)
                    for l in range(n3)
                ]
                result = intersect_interval_lists(result, normalize_intervals(union))
                if not result:
                    return []
        return result
    # order == "u"
    result = [TInterval(0.0, 1.0)]
    for l in range(n3):
        union = []
        for i in range(n1):
            for j in range(n2):
                union.append(
                    _interval_from_affine(M1[i] - M2[j], M2[j] - M3[l], strict, eps)
                )
        result = intersect_interval_lists(result, normalize_intervals(union))
        if not result:
            return []
    return result


def feasible_t_set(cone: Cone, F1, F2, F3, order: str, strict: bool, eps=None) -> list:
    """Exact {t in [0,1] : t*F1 + (1-t)*F2 relates to F3} as interval union.

    order "l": the combination lies inside F3 + C (int C when strict);
    order "u": F3 lies inside the combination - C (int C when strict).
    """
    eps = resolve_eps(eps)
    if order not in ("l", "u"):
        raise ValueError(f"order must be 'l' or 'u', got {order!r}")
    P1, P2, P3 = as_points(F1), as_points(F2), as_points(F3)
    for P in (P1, P2, P3):
        cone.check_dim(P, "set")
    G = cone.gens.T
    return _pair_feasible_lu(cone, P1 @ G, P2 @ G, P3 @ G, order, strict, eps)


def _feasible_p(cone, P1, P2, P3, strict, eps) -> list:
    """Feasible t for the p-order form: some combination point reaches
    apex(F3) + C (int C when strict). Nonstrict singleton triples also get
    the exact set-equality branch."""
    if not cone.simplicial:
        raise NotSimplicial("p-order certification needs a simplicial cone")
    sigma = sup_point(cone, P3)
    G = cone.gens.T
    M1, M2 = P1 @ G, P2 @ G
    Ms = sigma @ G
    union = []
    for i in range(M1.shape[0]):
        for j in range(M2.shape[0]):
            union.append(_interval_from_affine(M1[i] - M2[j], M2[j] - Ms, strict, eps))
    if not strict and P1.shape[0] == P2.shape[0] == P3.shape[0] == 1:
        p, q, r = P1[0], P2[0], P3[0]
        d = p - q
        if np.all(np.abs(d) <= eps):
            if np.all(np.abs(q - r) <= eps):
                union.append(TInterval(0.0, 1.0))
        else:
            k = int(np.argmax(np.abs(d)))
            t_star = (r[k] - q[k]) / d[k]
            if 0.0 <= t_star <= 1.0 and np.all(np.abs(t_star * p + (1 - t_star) * q - r) <= eps):
                union.append(TInterval(t_star, t_star))
    return normalize_intervals(union)


def candidate_feasible_set(inst, i: int, j: int, x3: int, order: str, strict: bool, eps) -> list:
    """Feasible t-set for one (pair, candidate) combination of an instance."""
    P1 = inst.values[i].points
    P2 = inst.values[j].points
    P3 = inst.values[x3].points
    if order == "p":
        return _feasible_p(inst.cone, P1, P2, P3, strict, eps)
    return feasible_t_set(inst.cone, P1, P2, P3, order, strict, eps)


@dataclass(frozen=True)
class PairEvidence:
    """Witness list or failure gap for one unordered decision pair."""

    witnesses: tuple  # ((x3_id, TInterval), ...) replayable at midpoints
    uncovered: TInterval | None

    @property
    def passed(self) -> bool:
        return self.uncovered is None


@dataclass(frozen=True)
class ConvexlikeCertificate:
    prop: str
    order: str
    pairs: dict  # (id1, id2) -> PairEvidence

    @property
    def passed(self) -> bool:
        return all(ev.passed for ev in self.pairs.values())

    def failures(self) -> list:
        return sorted(k for k, ev in self.pairs.items() if not ev.passed)


def certify(inst, prop: str, order: str, eps=None) -> ConvexlikeCertificate:
    """Certify a convexlikeness property pair by pair.

    strict_quasi scans candidates for any nonempty strict feasible set in
    the closed parameter interval; strict / convexlike require the union
    over candidates to cover the open interval. FAIL evidence carries the
    first uncovered subinterval.
    """
    eps = resolve_eps(eps)
    if prop not in PROPERTIES:
        raise ValueError(f"property must be one of {PROPERTIES}, got {prop!r}")
    cache_key = ("certify", prop, order, eps)
    if cache_key in inst._cache:
        return inst._cache[cache_key]
    order_ids = sorted(range(inst.n), key=lambda i: inst.ids[i])
    pairs = {}
    for a_pos in range(len(order_ids)):
        for b_pos in range(a_pos + 1, len(order_ids)):
            i, j = order_ids[a_pos], order_ids[b_pos]
            key = (inst.ids[i], inst.ids[j])
            pairs[key] = _certify_pair(inst, i, j, order_ids, prop, order, eps)
    cert = ConvexlikeCertificate(prop=prop, order=order, pairs=pairs)
    inst._cache[cache_key] = cert
    return cert


def _certify_pair(inst, i, j, order_ids, prop, order, eps) -> PairEvidence:
    strict = prop != "convexlike"
    if prop == "strict_quasi":
        for x3 in order_ids:
            ivs = candidate_feasible_set(inst, i, j, x3, order, True, eps)
            if ivs:
                return PairEvidence(witnesses=((inst.ids[x3], ivs[0]),), uncovered=None)
        return PairEvidence(witnesses=(), uncovered=TInterval(0.0, 1.0))

    tagged = []
    for x3 in order_ids:
        for iv in candidate_feasible_set(inst, i, j, x3, order, strict, eps):
            tagged.append((inst.ids[x3], iv))
    tagged.sort(key=lambda p: (p[1].lo, p[1].lo_open))
    chosen = []
    reach = 0.0
    for x3_id, iv in tagged:
        if reach >= 1.0 - eps:
            break
        if iv.lo > reach + eps:
            continue  # cannot extend yet; a later interval will not start earlier
        if iv.hi > reach:
            chosen.append((x3_id, iv))
            reach = iv.hi
    if reach >= 1.0 - eps:
        return PairEvidence(witnesses=tuple(chosen), uncovered=None)
    next_lo = min((iv.lo for _, iv in tagged if iv.lo > reach + eps), default=1.0)
    return PairEvidence(witnesses=tuple(chosen), uncovered=TInterval(reach, min(next_lo, 1.0)))


def scalar_strict_quasi_convexlike(values: dict, eps=None) -> dict:
    """Strict quasi convexlikeness of a scalar map on ids.

    For each unordered pair a witness (x3, lam) exists iff the global
    minimum sits strictly below the larger endpoint value; lam is taken at
    that endpoint. Returns pair -> {"witness": (x3, lam)} or {"fail": True}.
    """
    eps = resolve_eps(eps)
    ids = sorted(values)
    best = min(ids, key=lambda k: (values[k], k))
    out = {}
    for x1, x2 in itertools.combinations(ids, 2):
        hi = max(values[x1], values[x2])
        if values[best] >= hi - eps:
            out[(x1, x2)] = {"fail": True}
        else:
            lam = 1.0 if values[x1] >= values[x2] else 0.0
            out[(x1, x2)] = {"witness": (best, lam)}
    return out
