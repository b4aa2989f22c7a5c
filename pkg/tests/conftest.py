import numpy as np
import pytest

import setoptlab as sl

EPS = 1e-9


@pytest.fixture(scope="session")
def orthant2():
    return sl.build_cone(np.eye(2), [1.0, 1.0])


@pytest.fixture(scope="session")
def orthant3():
    return sl.build_cone(np.eye(3), [1.0, 1.0, 1.0])


def cone_zoo(rng, include_nonsimplicial=True):
    """Deterministic spread of test cones: orthants, skewed/general
    simplicial, and (optionally) redundant + square-based non-simplicial."""
    cones = [
        sl.random_cone(rng, 2, "orthant"),
        sl.random_cone(rng, 3, "orthant"),
        sl.random_cone(rng, 2, "skewed"),
        sl.random_cone(rng, 2, "general"),
        sl.random_cone(rng, 3, "general"),
    ]
    if include_nonsimplicial:
        cones += [
            sl.random_cone(rng, 2, "redundant"),
            sl.random_cone(rng, 3, "redundant"),
            sl.random_cone(rng, 3, "square3"),
        ]
    return cones


def random_set(rng, m, max_pts=5):
    """Small random point set on the half-integer lattice."""
    n = int(rng.integers(1, max_pts + 1))
    return sl.FiniteSet(rng.integers(-4, 5, size=(n, m)) / 2.0)


def random_point(rng, m):
    return rng.integers(-4, 5, size=m) / 2.0


def interior_vector(rng, cone, lo=1, hi=4):
    """A point of int C: positive primal-basis combination (simplicial cones)."""
    P = np.linalg.inv(cone.gens)
    return P @ rng.integers(lo, hi, size=cone.dim).astype(float)


def cone_vector(rng, cone, allow_zero=False):
    """A point of C via nonnegative primal weights (simplicial cones)."""
    P = np.linalg.inv(cone.gens)
    u = rng.integers(0, 4, size=cone.dim).astype(float)
    if not allow_zero:
        while not u.any():
            u = rng.integers(0, 4, size=cone.dim).astype(float)
    return P @ u


def relate_oracle(cone, A, B, order, strict, eps=EPS):
    """Independent reimplementation of the set relations (plain loops)."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.atleast_2d(np.asarray(B, dtype=float))

    def in_cone(v, strict_):
        vals = cone.gens @ v
        return np.all(vals > eps) if strict_ else np.all(vals >= -eps)

    if order == "l":
        return all(any(in_cone(b - a, strict) for a in A) for b in B)
    if order == "u":
        return all(any(in_cone(b - a, strict) for b in B) for a in A)
    sigma = sl.sup_point(cone, A)
    if order == "p" and not strict and sl.sets_equal(A, B):
        return True
    return any(in_cone(b - sigma, strict) for b in B)
