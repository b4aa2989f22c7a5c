"""Pure-numpy kernel backend.

Reference implementations of the batch kernels; semantics must match
`_kernels_numba` exactly. Values are packed ragged: `flat` stacks all set
points, `offs[i]:offs[i+1]` delimits the points of decision index i.
Memory is kept flat by chunking the column axis at segment boundaries.
"""

import numpy as np

_CHUNK_PTS = 2048


def _seg_chunks(offs):
    """Yield (j0, j1) segment-index ranges whose point span is bounded."""
    n = offs.shape[0] - 1
    j0 = 0
    while j0 < n:
        j1 = j0 + 1
        while j1 < n and offs[j1 + 1] - offs[j0] <= _CHUNK_PTS:
            j1 += 1
        yield j0, j1
        j0 = j1


def _diff_max(M, qs):
    """D[p, q] = max_k (M[p, k] - M[qs[q], k]) without a 3-D temporary."""
    Mq = M[qs]
    D = M[:, 0][:, None] - Mq[:, 0][None, :]
    for k in range(1, M.shape[1]):
        np.maximum(D, M[:, k][:, None] - Mq[:, k][None, :], out=D)
    return D


def lower_gap_matrix(gen_e, flat, offs):
    """Xi[i, j] = max over b in set j of min over a in set i of max_k f^e_k(a - b)."""
    n = offs.shape[0] - 1
    M = flat @ gen_e.T
    out = np.empty((n, n))
    for j0, j1 in _seg_chunks(offs):
        qs = np.arange(offs[j0], offs[j1])
        D = _diff_max(M, qs)
        phi = np.minimum.reduceat(D, offs[:-1], axis=0)  # (n, nq)
        local = offs[j0:j1] - offs[j0]
        out[:, j0:j1] = np.maximum.reduceat(phi, local, axis=1)
    return out


def upper_gap_matrix(gen_w, flat, offs):
    """Gamma[i, j] = max over a in set i of min over b in set j of max_k f^w_k(a - b)."""
    n = offs.shape[0] - 1
    M = flat @ gen_w.T
    out = np.empty((n, n))
    for j0, j1 in _seg_chunks(offs):
        qs = np.arange(offs[j0], offs[j1])
        D = _diff_max(M, qs)
        local = offs[j0:j1] - offs[j0]
        inner = np.minimum.reduceat(D, local, axis=1)  # (T, j1-j0)
        out[:, j0:j1] = np.maximum.reduceat(inner, offs[:-1], axis=0)
    return out


def relate_lu_matrix(gens, flat, offs, upper, strict, eps):
    """R[i, j] = relate(set_i, set_j) for the l (upper=False) or u (upper=True) order."""
    n = offs.shape[0] - 1
    M = flat @ gens.T
    out = np.empty((n, n), dtype=np.bool_)
    for j0, j1 in _seg_chunks(offs):
        qs = np.arange(offs[j0], offs[j1])
        Mq = M[qs]
        # ok[p, q] = (flat[q] - flat[p]) in C (strict: int C)
        if strict:
            ok = (Mq[:, 0][None, :] - M[:, 0][:, None]) > eps
            for k in range(1, M.shape[1]):
                ok &= (Mq[:, k][None, :] - M[:, k][:, None]) > eps
        else:
            ok = (Mq[:, 0][None, :] - M[:, 0][:, None]) >= -eps
            for k in range(1, M.shape[1]):
                ok &= (Mq[:, k][None, :] - M[:, k][:, None]) >= -eps
        local = offs[j0:j1] - offs[j0]
        if upper:
            # every a in set i has some b in set j above it
            found = np.logical_or.reduceat(ok, local, axis=1)  # (T, segs)
            out[:, j0:j1] = np.logical_and.reduceat(found, offs[:-1], axis=0)
        else:
            # every b in set j is above some a in set i
            found = np.logical_or.reduceat(ok, offs[:-1], axis=0)  # (n, nq)
            out[:, j0:j1] = np.logical_and.reduceat(found, local, axis=1)
    return out


def relate_h_matrix(gens, flat, offs, sigmas, strict, eps):
    """R[i, j] = some b in set j with b - sigma_i in C (strict: int C)."""
    n = offs.shape[0] - 1
    Mq = flat @ gens.T  # (T, k)
    Ms = sigmas @ gens.T  # (n, k)
    d = Mq[:, None, :] - Ms[None, :, :]  # (T, n, k)
    ok = np.all(d > eps, axis=2) if strict else np.all(d >= -eps, axis=2)
    hit = np.logical_or.reduceat(ok, offs[:-1], axis=0)  # (n_j, n_i)
    return np.ascontiguousarray(hit.T)
