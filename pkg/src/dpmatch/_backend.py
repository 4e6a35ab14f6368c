"""Kernel backend selection.

The compiled extension is preferred; the numpy fallback is used when it
is missing or when DPMATCH_PURE_PYTHON=1 is set.  Both backends take the
same arguments; coercion to the contiguous dtypes the compiled kernels
require happens here so callers stay clean.
"""

from __future__ import annotations

import os

import numpy as np

if os.environ.get("DPMATCH_PURE_PYTHON", "") == "1":
    from . import _kernels_py as _impl
    BACKEND = "fallback"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
        BACKEND = "compiled"
    except ImportError:  # pragma: no cover - depends on the install
        from . import _kernels_py as _impl
        BACKEND = "fallback"


def _c64(a) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.float64)


def _ci64(a) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.int64)


def pairwise_weighted_l1(U, V, w) -> np.ndarray:
    """out[i, k] = sum_l w[l] * |U[i, l] - V[k, l]| for all row pairs."""
    U, V, w = _c64(U), _c64(V), _c64(w)
    if U.ndim != 2 or V.ndim != 2 or U.shape[1] != V.shape[1] or w.shape != (U.shape[1],):
        raise ValueError("shape mismatch")
    return _impl.pairwise_weighted_l1(U, V, w)


def sparse_count_l1(gbins, gcounts, gptr, hbins, hcounts, hptr) -> np.ndarray:
    """All-pairs L1 between CSR-stored sparse histograms (sorted unique
    bins per row)."""
    return _impl.sparse_count_l1(_ci64(gbins), _c64(gcounts), _ci64(gptr),
                                 _ci64(hbins), _c64(hcounts), _ci64(hptr))
