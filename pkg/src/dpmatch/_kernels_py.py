"""Pure numpy implementations of the two hot kernels.

Used when the compiled extension is unavailable (or explicitly disabled
via DPMATCH_PURE_PYTHON=1).  Semantics match dpmatch._kernels; summation
inside one cell uses numpy's deterministic pairwise reduction instead of
the compiled kernel's strictly ascending loop, so values may differ from
the compiled backend by normal rounding slack (never within one backend).
"""

from __future__ import annotations

import numpy as np


def pairwise_weighted_l1(U: np.ndarray, V: np.ndarray, w: np.ndarray) -> np.ndarray:
    """out[i, k] = sum_l w[l] * |U[i, l] - V[k, l]|."""
    nu = U.shape[0]
    out = np.empty((nu, V.shape[0]))
    buf = np.empty_like(V)
    for i in range(nu):
        np.subtract(V, U[i], out=buf)
        np.abs(buf, out=buf)
        out[i] = buf @ w
    return out


def sparse_count_l1(gbins: np.ndarray, gcounts: np.ndarray, gptr: np.ndarray,
                    hbins: np.ndarray, hcounts: np.ndarray, hptr: np.ndarray
                    ) -> np.ndarray:
    """L1 distance between sparse histograms stored in CSR-like form.

    Row i of the first family occupies gbins[gptr[i]:gptr[i+1]] (sorted,
    unique) with positive counts gcounts[...].  Uses
    sum_m |a_m - b_m| = tot_a + tot_b - 2 * sum_m min(a_m, b_m).
    """
    ng, nh = gptr.size - 1, hptr.size - 1
    gtot = np.add.reduceat(gcounts, gptr[:-1]) if gcounts.size else np.zeros(ng)
    htot = np.add.reduceat(hcounts, hptr[:-1]) if hcounts.size else np.zeros(nh)
    # reduceat yields garbage for empty rows; fix them up
    gtot[gptr[:-1] == gptr[1:]] = 0.0
    htot[hptr[:-1] == hptr[1:]] = 0.0
    out = np.empty((ng, nh))
    hslices = [(hbins[hptr[k]:hptr[k + 1]], hcounts[hptr[k]:hptr[k + 1]])
               for k in range(nh)]
    for i in range(ng):
        bi = gbins[gptr[i]:gptr[i + 1]]
        ci = gcounts[gptr[i]:gptr[i + 1]]
        row = out[i]
        for k, (bk, ck) in enumerate(hslices):
            if bi.size and bk.size:
                _, ia, ib = np.intersect1d(bi, bk, assume_unique=True,
                                           return_indices=True)
                common = float(np.minimum(ci[ia], ck[ib]).sum())
            else:
                common = 0.0
            row[k] = gtot[i] + htot[k] - 2.0 * common
    return out
