"""Finite outcome sets, set order relations and extremal points.

Order tags follow the standard set-relation names: "l" (lower set less,
B inside A + C), "u" (upper, A inside B - C), "h" (some point of B in the
upper intersection A_C) and "p" (h made reflexive by an equality branch).
Weak forms replace C with int C. All quantifiers are decided by exhaustive
scan; sets are desk-scale.

A nonempty finite set is automatically C-proper, C-closed, C-bounded and
C-compact (both signs) for any pointed cone, so every compactness-style
side condition of the underlying theory holds by construction; only the
convexlikeness hypotheses ever need certifying.
"""

from dataclasses import dataclass

import numpy as np

from .config import resolve_eps
from .cone import Cone, sup_point
from .errors import NotSimplicial

ORDERS = ("l", "u", "h", "p")
EXTREMAL_KINDS = ("min", "weak_min", "max", "weak_max")


@dataclass(frozen=True)
class FiniteSet:
    """Nonempty deduplicated finite point set in R^m (one objective value F(x))."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=np.float64))
        if pts.size == 0:
            raise ValueError("FiniteSet must be nonempty")
        if not np.isfinite(pts).all():
            raise ValueError("FiniteSet entries must be finite")
        pts = _dedup(pts, resolve_eps(None))
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.points, dtype=dtype)

    def __len__(self):
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]


def _dedup(pts: np.ndarray, eps: float) -> np.ndarray:
    keep = []
    for i in range(pts.shape[0]):
        if not any(np.all(np.abs(pts[i] - pts[k]) <= eps) for k in keep):
            keep.append(i)
    return pts[keep]


def as_points(obj) -> np.ndarray:
    """Coerce a FiniteSet or array-like to a deduplicated (n, m) float array."""
    if isinstance(obj, FiniteSet):
        return obj.points
    return FiniteSet(np.atleast_2d(np.asarray(obj, dtype=np.float64))).points


def sets_equal(A, B, eps=None) -> bool:
    """Set equality up to the tolerance (pointwise matching both ways)."""
    eps = resolve_eps(eps)
    a, b = as_points(A), as_points(B)
    if a.shape != b.shape:
        return False
    used = np.zeros(b.shape[0], dtype=bool)
    for p in a:
        hit = np.where(~used & np.all(np.abs(b - p) <= eps, axis=1))[0]
        if hit.size == 0:
            return False
        used[hit[0]] = True
    return True


def _pair_in_cone(cone: Cone, diffs: np.ndarray, strict: bool, eps: float) -> np.ndarray:
    # diffs: (..., m) -> boolean array of cone membership
    vals = diffs @ cone.gens.T
    if strict:
        return np.all(vals > eps, axis=-1)
    return np.all(vals >= -eps, axis=-1)


def relate(cone: Cone, A, B, order: str, strict: bool = False, eps=None) -> bool:
    """Decide the set relation A <=^order B (or the weak form when strict).

    The h relation has no strict form; the p relation is h plus an equality
    branch when nonstrict, and the interior apex test when strict. h and p
    need a simplicial cone for the apex.
    """
    eps = resolve_eps(eps)
    if order not in ORDERS:
        raise ValueError(f"order must be one of {ORDERS}, got {order!r}")
    a, b = as_points(A), as_points(B)
    cone.check_dim(a, "left set")
    cone.check_dim(b, "right set")

    if order == "l":
        # every point of B reachable from some point of A through C
        ok = _pair_in_cone(cone, b[:, None, :] - a[None, :, :], strict, eps)
        return bool(ok.any(axis=1).all())
    if order == "u":
        # every point of A below some point of B through C
        ok = _pair_in_cone(cone, b[None, :, :] - a[:, None, :], strict, eps)
        return bool(ok.any(axis=1).all())

    if order == "h" and strict:
        raise ValueError("the h relation has no strict form; use order='p' strict")
    if not cone.simplicial:
        raise NotSimplicial("h/p relations need a simplicial cone")
    if order == "p" and not strict and sets_equal(a, b, eps):
        return True
    sigma = sup_point(cone, a)
    ok = _pair_in_cone(cone, b - sigma[None, :], strict, eps)
    return bool(ok.any())


def extremal_points(cone: Cone, A, which: str, eps=None) -> FiniteSet:
    """Minimal / weakly minimal / maximal / weakly maximal points of a finite set.

    min:      no other point a' with a - a' in C
    weak_min: no point a' with a - a' in int C
    max / weak_max: same with the roles of a and a' swapped.
    Finiteness guarantees a nonempty result.
    """
    eps = resolve_eps(eps)
    if which not in EXTREMAL_KINDS:
        raise ValueError(f"which must be one of {EXTREMAL_KINDS}, got {which!r}")
    pts = as_points(A)
    cone.check_dim(pts, "set")
    n = pts.shape[0]
    strict = which.startswith("weak")
    lower = which.endswith("min")

    keep = []
    for i in range(n):
        diffs = (pts[i] - pts) if lower else (pts - pts[i])
        dominated = _pair_in_cone(cone, diffs, strict, eps)
        if not strict:
            dominated[i] = False  # a - a = 0 is always in C
        if not dominated.any():
            keep.append(i)
    assert keep, "finite set must have an extremal point"
    return FiniteSet(pts[keep])
