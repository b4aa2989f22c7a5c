"""Polyhedral ordering cones given by a dual (inequality) description.

A cone is C = {y : f_j(y) >= 0 for all j} for finitely many linear
functionals f_j. Two distinguished interior directions are carried along:
`e` drives the lower-type scalarizer, `w` the upper-type one. Everything
downstream reduces to finitely many evaluations f_j(.), so no primal
(generator) description is ever needed.
"""

from dataclasses import dataclass, field

import numpy as np

from .config import resolve_eps
from .errors import (
    DimensionMismatch,
    EmptyDescription,
    NotInterior,
    NotPointed,
    NotSimplicial,
)

REGIONS = ("C", "intC", "negC", "negIntC")


@dataclass(frozen=True)
class Cone:
    """Validated polyhedral cone.

    Attributes:
        dim: ambient dimension m.
        gens: (k, m) array, rows are the dual generators f_j.
        e, w: interior directions, each (m,).
        gens_e: rows rescaled so that f_j(e) = 1.
        gens_w: rows rescaled so that f_j(w) = 1.
        simplicial: True iff exactly m independent generators.
    """

    dim: int
    gens: np.ndarray
    e: np.ndarray
    w: np.ndarray
    gens_e: np.ndarray = field(repr=False)
    gens_w: np.ndarray = field(repr=False)
    simplicial: bool

    def __post_init__(self):
        for arr in (self.gens, self.e, self.w, self.gens_e, self.gens_w):
            arr.setflags(write=False)

    def check_dim(self, vec: np.ndarray, what: str = "vector") -> None:
        if vec.shape[-1] != self.dim:
            raise DimensionMismatch(
                f"{what} has dimension {vec.shape[-1]}, cone expects {self.dim}"
            )


def build_cone(dual_generators, e, w=None, eps=None) -> Cone:
    """Validate a dual description and cache the normalized generator rows.

    `w` defaults to `e`. Raises EmptyDescription, NotPointed (generators do
    not span, i.e. the cone would contain a line) or NotInterior (e or w is
    not strictly interior).
    """
    eps = resolve_eps(eps)
    gens = np.atleast_2d(np.asarray(dual_generators, dtype=np.float64))
    if gens.size == 0:
        raise EmptyDescription("need at least one dual generator")
    e = np.asarray(e, dtype=np.float64).ravel()
    w = e if w is None else np.asarray(w, dtype=np.float64).ravel()
    m = gens.shape[1]
    if e.shape[0] != m or w.shape[0] != m:
        raise DimensionMismatch(
            f"interior directions must have dimension {m}, got {e.shape[0]} and {w.shape[0]}"
        )
    if not (np.isfinite(gens).all() and np.isfinite(e).all() and np.isfinite(w).all()):
        raise ValueError("cone data must be finite")

    fe = gens @ e
    fw = gens @ w
    if np.any(fe <= eps):
        j = int(np.argmin(fe))
        raise NotInterior(f"f_{j}(e) = {fe[j]:.6g} <= 0: e is not interior")
    if np.any(fw <= eps):
        j = int(np.argmin(fw))
        raise NotInterior(f"f_{j}(w) = {fw[j]:.6g} <= 0: w is not interior")
    rank = np.linalg.matrix_rank(gens, tol=1e-12)
    if rank < m:
        raise NotPointed(
            f"dual generators span a {rank}-dimensional space, need {m} (cone not pointed)"
        )

    return Cone(
        dim=m,
        gens=gens,
        e=e,
        w=w,
        gens_e=gens / fe[:, None],
        gens_w=gens / fw[:, None],
        simplicial=(gens.shape[0] == m),
    )


def membership(cone: Cone, y, region: str, eps=None) -> bool:
    """Decide y in C / int C / -C / -int C with the global tolerance.

    C means f_j(y) >= -eps for all j; int C means f_j(y) > eps for all j;
    the neg variants apply the same test to -y.
    """
    eps = resolve_eps(eps)
    if region not in REGIONS:
        raise ValueError(f"region must be one of {REGIONS}, got {region!r}")
    y = np.asarray(y, dtype=np.float64).ravel()
    cone.check_dim(y, "point")
    if region.startswith("neg"):
        y = -y
    vals = cone.gens @ y
    if region in ("C", "negC"):
        return bool(np.all(vals >= -eps))
    return bool(np.all(vals > eps))


def sup_point(cone: Cone, points, eps=None) -> np.ndarray:
    """Apex of the upper Minkowski intersection of a finite set.

    For a simplicial cone the set A_C = intersection of (a + C) over a in A
    equals sigma + C where sigma solves f_j(sigma) = max_a f_j(a) for each
    of the m independent generators. General polyhedral cones are rejected
    rather than approximated.
    """
    if not cone.simplicial:
        raise NotSimplicial(
            f"sup_point needs a simplicial cone ({cone.gens.shape[0]} generators in R^{cone.dim})"
        )
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    cone.check_dim(pts, "point set")
    if pts.shape[0] == 0:
        raise ValueError("sup_point needs a nonempty set")
    targets = (pts @ cone.gens.T).max(axis=0)
    return np.linalg.solve(cone.gens, targets)
