"""Numba kernel backend: jitted mirrors of `_kernels_numpy`."""

import numpy as np
from numba import njit, prange


@njit(cache=True, parallel=True)
def lower_gap_matrix(gen_e, flat, offs):
    n = offs.shape[0] - 1
    M = np.ascontiguousarray(flat) @ np.ascontiguousarray(gen_e.T)
    nk = M.shape[1]
    out = np.empty((n, n))
    for i in prange(n):
        for j in range(n):
            outer = -np.inf
            for q in range(offs[j], offs[j + 1]):
                inner = np.inf
                for p in range(offs[i], offs[i + 1]):
                    mx = -np.inf
                    for k in range(nk):
                        v = M[p, k] - M[q, k]
                        if v > mx:
                            mx = v
                    if mx < inner:
                        inner = mx
                if inner > outer:
                    outer = inner
            out[i, j] = outer
    return out


@njit(cache=True, parallel=True)
def upper_gap_matrix(gen_w, flat, offs):
    n = offs.shape[0] - 1
    M = np.ascontiguousarray(flat) @ np.ascontiguousarray(gen_w.T)
    nk = M.shape[1]
    out = np.empty((n, n))
    for i in prange(n):
        for j in range(n):
            outer = -np.inf
            for p in range(offs[i], offs[i + 1]):
                inner = np.inf
                for q in range(offs[j], offs[j + 1]):
                    mx = -np.inf
                    for k in range(nk):
                        v = M[p, k] - M[q, k]
                        if v > mx:
                            mx = v
                    if mx < inner:
                        inner = mx
                if inner > outer:
                    outer = inner
            out[i, j] = outer
    return out


@njit(cache=True, parallel=True)
def relate_lu_matrix(gens, flat, offs, upper, strict, eps):
    n = offs.shape[0] - 1
    M = np.ascontiguousarray(flat) @ np.ascontiguousarray(gens.T)
    nk = M.shape[1]
    out = np.empty((n, n), dtype=np.bool_)
    for i in prange(n):
        for j in range(n):
            if upper:
                o0, o1 = offs[i], offs[i + 1]
                q0, q1 = offs[j], offs[j + 1]
            else:
                o0, o1 = offs[j], offs[j + 1]
                q0, q1 = offs[i], offs[i + 1]
            ok_all = True
            for o in range(o0, o1):
                found = False
                for q in range(q0, q1):
                    inside = True
                    for k in range(nk):
                        # b - a with b from the j set (l) / the j set (u)
                        v = (M[q, k] - M[o, k]) if upper else (M[o, k] - M[q, k])
                        if strict:
                            if v <= eps:
                                inside = False
                                break
                        else:
                            if v < -eps:
                                inside = False
                                break
                    if inside:
                        found = True
                        break
                if not found:
                    ok_all = False
                    break
            out[i, j] = ok_all
    return out


@njit(cache=True, parallel=True)
def relate_h_matrix(gens, flat, offs, sigmas, strict, eps):
    n = offs.shape[0] - 1
    Mq = np.ascontiguousarray(flat) @ np.ascontiguousarray(gens.T)
    Ms = np.ascontiguousarray(sigmas) @ np.ascontiguousarray(gens.T)
    nk = Mq.shape[1]
    out = np.empty((n, n), dtype=np.bool_)
    for i in prange(n):
        for j in range(n):
            found = False
            for q in range(offs[j], offs[j + 1]):
                inside = True
                for k in range(nk):
                    v = Mq[q, k] - Ms[i, k]
                    if strict:
                        if v <= eps:
                            inside = False
                            break
                    else:
                        if v < -eps:
                            inside = False
                            break
                if inside:
                    found = True
                    break
            out[i, j] = found
    return out
