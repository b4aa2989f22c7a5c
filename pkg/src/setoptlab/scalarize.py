"""Translation scalarizers for the lower and upper set orders.

Two Gerstewitz-type functionals over finite sets:

* lower: smallest t with y + t*e inside A + C, in closed form
  min over a in A of max_j f^e_j(a - y) with f^e_j the e-normalized dual
  generators. Negative exactly when y lies in A + int C.
* upper: smallest t with y inside t*w + B - C, in closed form
  min over b in B of max_j f^w_j(y - b). Below r exactly when y lies in
  r*w + B - int C.

Their sup-liftings `lower_gap` / `upper_gap` decide the strict set
relations by sign. `bisection_threshold` recomputes either functional by
binary search on the raw membership predicate and serves as the
independent oracle throughout the test suite.
"""

from dataclasses import dataclass, field

import numpy as np

from .config import resolve_eps
from .cone import Cone
from .errors import BracketFailure
from .sets import as_points

#: markers kept for defensive code paths; unreachable for validated finite inputs
NEG_INF = float("-inf")
POS_INF = float("inf")


@dataclass(frozen=True)
class ScalarResult:
    """Scalarizer value plus the attaining point indices.

    witness_inner indexes the minimizing point of the anchor set;
    witness_outer (gap functions only) indexes the point attaining the sup.
    """

    value: float
    witness_inner: int
    witness_outer: int | None = None


def _lower_values(cone: Cone, A: np.ndarray, y: np.ndarray) -> np.ndarray:
    # max_j f^e_j(a - y) for every a
    return ((A - y) @ cone.gens_e.T).max(axis=1)


def _upper_values(cone: Cone, B: np.ndarray, y: np.ndarray) -> np.ndarray:
    # max_j f^w_j(y - b) for every b
    return ((y - B) @ cone.gens_w.T).max(axis=1)


def lower_scalar(cone: Cone, A, y) -> ScalarResult:
    """Smallest translation of y along e into A + C."""
    a = as_points(A)
    y = np.asarray(y, dtype=np.float64).ravel()
    cone.check_dim(a, "anchor set")
    cone.check_dim(y, "point")
    vals = _lower_values(cone, a, y)
    i = int(np.argmin(vals))
    return ScalarResult(value=float(vals[i]), witness_inner=i)


def upper_scalar(cone: Cone, B, y) -> ScalarResult:
    """Smallest t with y inside t*w + B - C."""
    b = as_points(B)
    y = np.asarray(y, dtype=np.float64).ravel()
    cone.check_dim(b, "anchor set")
    cone.check_dim(y, "point")
    vals = _upper_values(cone, b, y)
    i = int(np.argmin(vals))
    return ScalarResult(value=float(vals[i]), witness_inner=i)


def lower_gap(cone: Cone, A, B) -> ScalarResult:
    """sup over b in B of lower_scalar(A, b).

    Zero on identical sets; negative exactly when A is strictly below B in
    the lower set order.
    """
    a, b = as_points(A), as_points(B)
    cone.check_dim(a, "left set")
    cone.check_dim(b, "right set")
    best_val, best_outer, best_inner = NEG_INF, -1, -1
    for q in range(b.shape[0]):
        vals = _lower_values(cone, a, b[q])
        i = int(np.argmin(vals))
        if vals[i] > best_val:
            best_val, best_outer, best_inner = float(vals[i]), q, i
    return ScalarResult(value=best_val, witness_inner=best_inner, witness_outer=best_outer)


def upper_gap(cone: Cone, A, B) -> ScalarResult:
    """sup over a in A of upper_scalar(B, a).

    Zero on identical sets; negative exactly when A is strictly below B in
    the upper set order.
    """
    a, b = as_points(A), as_points(B)
    cone.check_dim(a, "left set")
    cone.check_dim(b, "right set")
    best_val, best_outer, best_inner = NEG_INF, -1, -1
    for p in range(a.shape[0]):
        vals = _upper_values(cone, b, a[p])
        i = int(np.argmin(vals))
        if vals[i] > best_val:
            best_val, best_outer, best_inner = float(vals[i]), p, i
    return ScalarResult(value=best_val, witness_inner=best_inner, witness_outer=best_outer)


def bisection_threshold(cone: Cone, S, y, mode: str, resolution: float = 1e-12) -> float:
    """Binary-search recomputation of either scalarizer.

    mode "l": threshold of t -> (y + t*e in S + C); mode "u": threshold of
    t -> (y in t*w + S - C). Both predicates are monotone in t because e
    and w are interior; a non-monotone bracket signals broken cone data.
    """
    if mode not in ("l", "u"):
        raise ValueError(f"mode must be 'l' or 'u', got {mode!r}")
    pts = as_points(S)
    y = np.asarray(y, dtype=np.float64).ravel()
    cone.check_dim(pts, "set")
    cone.check_dim(y, "point")

    if mode == "l":
        spread = np.abs((pts - y) @ cone.gens_e.T)
    else:
        spread = np.abs((y - pts) @ cone.gens_w.T)
    T = float(spread.max()) + 1.0

    def pred(t: float) -> bool:
        if mode == "l":
            vals = (y + t * cone.e - pts) @ cone.gens.T
        else:
            vals = (t * cone.w + pts - y) @ cone.gens.T
        return bool(np.any(np.all(vals >= 0.0, axis=1)))

    if pred(-T) or not pred(T):
        raise BracketFailure(
            f"membership predicate not monotone on [-{T:.6g}, {T:.6g}] for mode {mode!r}"
        )
    lo, hi = -T, T
    while hi - lo > resolution:
        mid = 0.5 * (lo + hi)
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class LevelSetClass:
    """Level-set classification of a point against r*w + (B - C).

    `scalar` flags come from comparing the upper scalarizer value with r;
    `geometric` flags come from direct cone-membership tests. The two
    routes must agree on consistent data.
    """

    r: float
    value: float
    relation: str  # "below" | "onBoundary" | "above"
    scalar: dict = field(repr=False)
    geometric: dict = field(repr=False)

    @property
    def consistent(self) -> bool:
        return all(self.scalar[k] == self.geometric[k] for k in self.scalar)


def classify_level(cone: Cone, B, y, r: float, eps=None) -> LevelSetClass:
    """Report all five level-set relations of y against r*w + (B - C).

    below:      value < r     <=>  y in r*w + B - int C
    atMost:     value <= r    <=>  y in r*w + (B - C)   (closed for finite B)
    atLeast:    value >= r    <=>  y not in r*w + B - int C
    above:      value > r     <=>  y not in r*w + (B - C)
    onBoundary: value == r    <=>  atMost and not below
    """
    eps = resolve_eps(eps)
    b = as_points(B)
    y = np.asarray(y, dtype=np.float64).ravel()
    cone.check_dim(b, "set")
    cone.check_dim(y, "point")
    val = upper_scalar(cone, b, y).value

    below = val < r - eps
    above = val > r + eps
    scalar = {
        "below": below,
        "atMost": val <= r + eps,
        "atLeast": val >= r - eps,
        "above": above,
        "onBoundary": (not below) and (not above),
    }

    shifted = r * np.asarray(cone.w) + b - y  # rows r*w + b - y
    vals = shifted @ cone.gens.T
    in_int = bool(np.any(np.all(vals > eps, axis=1)))
    in_closed = bool(np.any(np.all(vals >= -eps, axis=1)))
    geometric = {
        "below": in_int,
        "atMost": in_closed,
        "atLeast": not in_int,
        "above": not in_closed,
        "onBoundary": in_closed and not in_int,
    }

    relation = "below" if below else ("above" if above else "onBoundary")
    return LevelSetClass(r=float(r), value=val, relation=relation, scalar=scalar, geometric=geometric)
