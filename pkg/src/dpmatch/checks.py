"""Exact and brute-force verification utilities.

Two families:

* circle geometry: the closed-form overlap g(x) of two cyclic radius-1/L
  intervals, checked against direct interval intersection;
* the symmetric {-1,0,1} sum toolkit: exact convolution distributions
  behind f_n = E|sum X_i| and the inequality checks built on it.

Everything here is deterministic and sampling-free.  Inequalities are
verified in 64-bit floats with an absolute tolerance of 1e-9 (they hold
with slack on random inputs, so rational arithmetic is not needed).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .signatures import arc_segments, frac

TOL = 1e-9


# ---------------------------------------------------------------------------
# circle geometry


def cycd(x: float, y: float = 0.0) -> float:
    """Cyclic distance min_m |x - y - m|."""
    d = float(frac(np.float64(x) - np.float64(y)))
    return min(d, 1.0 - d)


def g_eval(x: float, L: int) -> float:
    """g(x) = max(0, 2/L - cyclic distance of x to 0); the measure of bin
    positions whose interval contains two balls offset by x."""
    if L < 5:
        raise ValueError("L must be at least 5")
    return max(0.0, 2.0 / L - cycd(x))


def _intersection_measure(segs_a, segs_b) -> float:
    total = 0.0
    for la, ha in segs_a:
        for lb, hb in segs_b:
            total += max(0.0, min(ha, hb) - max(la, lb))
    return total


def g_identity_check(a: float, b: float, L: int, grid: int | None = None) -> float:
    """|measure{t in [0,1): a and b in the interval at t} - g(a-b)|.

    The measure is the overlap of the two cyclic arcs around a and b,
    computed by exact segment intersection; with `grid` set it is instead
    estimated by midpoint sampling (a coarser, fully independent route).
    """
    if L < 5:
        raise ValueError("L must be at least 5")
    expected = g_eval(a - b, L)
    if grid is None:
        measure = _intersection_measure(arc_segments(a, L), arc_segments(b, L))
    else:
        inv = 1.0 / L
        t = (np.arange(int(grid), dtype=np.float64) + 0.5) / int(grid)
        da = np.mod(a - t, 1.0)
        db = np.mod(b - t, 1.0)
        inside = (np.minimum(da, 1.0 - da) <= inv) & (np.minimum(db, 1.0 - db) <= inv)
        measure = float(inside.sum()) / int(grid)
    return abs(measure - expected)


# ---------------------------------------------------------------------------
# symmetric {-1,0,1} sums


@dataclass(frozen=True, eq=False)
class SymSumDistribution:
    """Exact law of sum X_i, X_i independent on {-1,0,1} with
    P[X_i=1] = P[X_i=-1] = p_i.  pmf[v + n] = P[sum = v], v in [-n, n].

    Mirror symmetry pmf[v] == pmf[-v] holds exactly: each convolution
    step computes p*(left + right) + (1-2p)*center, and float addition
    commutes.
    """

    probs: np.ndarray
    pmf: np.ndarray

    @property
    def n(self) -> int:
        return self.probs.size

    @classmethod
    def build(cls, probs) -> "SymSumDistribution":
        probs = np.asarray(probs, dtype=np.float64)
        if probs.ndim != 1:
            raise ValueError("probs must be a vector")
        if np.any((probs < 0.0) | (probs > 0.5)):
            raise ValueError("probabilities must lie in [0, 1/2]")
        pmf = np.array([1.0])
        for p in probs:
            q = 1.0 - 2.0 * p
            zeros = np.zeros(1)
            left = np.concatenate([pmf, zeros, zeros])
            right = np.concatenate([zeros, zeros, pmf])
            center = np.concatenate([zeros, pmf, zeros])
            pmf = p * (left + right) + q * center
        return cls(probs, pmf)

    def prob(self, v: int) -> float:
        idx = v + self.n
        if 0 <= idx < self.pmf.size:
            return float(self.pmf[idx])
        return 0.0

    def mean_abs(self) -> float:
        v = np.abs(np.arange(-self.n, self.n + 1))
        return float(self.pmf @ v)


def f_n(probs) -> float:
    """E|sum X_i| for independent symmetric {-1,0,1} variables, exact
    via convolution (no sampling)."""
    probs = np.asarray(probs, dtype=np.float64)
    if probs.size > 25:
        raise ValueError("n must be at most 25")
    return SymSumDistribution.build(probs).mean_abs()


def check_control_f(probs) -> bool:
    """f_n >= 2S / sqrt(6S + 1) with S = sum p_i."""
    S = float(np.sum(np.asarray(probs, dtype=np.float64)))
    return f_n(probs) >= 2.0 * S / np.sqrt(6.0 * S + 1.0) - TOL


def check_compare_f(probs) -> bool:
    """f_n(4 p) >= 2 f_n(p) for p_i <= 1/16."""
    probs = np.asarray(probs, dtype=np.float64)
    if np.any((probs < 0.0) | (probs > 1.0 / 16.0)):
        raise ValueError("probabilities must lie in [0, 1/16]")
    return f_n(4.0 * probs) >= 2.0 * f_n(probs) - TOL


def check_monotone_f(probs, coordinate: int, increment: float) -> bool:
    """f_n is non-decreasing in each coordinate (while it stays <= 1/2)."""
    probs = np.asarray(probs, dtype=np.float64).copy()
    before = f_n(probs)
    probs[coordinate] += increment
    if increment < 0.0 or probs[coordinate] > 0.5:
        raise ValueError("increment must keep the coordinate in [p, 1/2]")
    return f_n(probs) >= before - TOL


def _bernoulli_sum_pmf(ps: np.ndarray) -> np.ndarray:
    """Exact law of a sum of independent Bernoulli(p_i); pmf over 0..n."""
    pmf = np.array([1.0])
    for p in ps:
        pmf = np.concatenate([pmf, [0.0]]) * (1.0 - p) \
            + np.concatenate([[0.0], pmf]) * p
    return pmf


def check_bern_to_sym(bern_probs) -> bool:
    """inf_x E|sum X_i - x| >= (1/2) f_n(min(p_i, 1-p_i)) for independent
    Bernoulli(p_i).

    The objective is piecewise linear in x with breakpoints at the
    integer support, so the infimum is attained at an integer median;
    it is evaluated exactly at every integer 0..n and minimized.
    """
    ps = np.asarray(bern_probs, dtype=np.float64)
    if ps.size > 15:
        raise ValueError("n must be at most 15")
    if np.any((ps < 0.0) | (ps > 1.0)):
        raise ValueError("probabilities must lie in [0, 1]")
    pmf = _bernoulli_sum_pmf(ps)
    support = np.arange(ps.size + 1)
    lhs = min(float(pmf @ np.abs(support - x)) for x in support)
    rhs = 0.5 * f_n(np.minimum(ps, 1.0 - ps))
    return lhs >= rhs - TOL


def check_control_h(probs, coeffs, x: int) -> bool:
    """P[sum a_i X_i = 0] >= P[sum a_i X_i = x] for symmetric X_i with
    p_i <= 1/4, integer coefficients, integer x."""
    ps = np.asarray(probs, dtype=np.float64)
    a = np.asarray(coeffs, dtype=np.int64)
    if ps.size != a.size:
        raise ValueError("probs and coeffs must have equal length")
    if ps.size > 12:
        raise ValueError("n must be at most 12")
    if np.any((ps < 0.0) | (ps > 0.25)):
        raise ValueError("probabilities must lie in [0, 1/4]")
    if np.any(np.abs(a) > 5):
        raise ValueError("coefficients must lie in [-5, 5]")
    if int(x) != x:
        raise ValueError("x must be an integer")
    span = int(np.abs(a).sum())
    pmf = np.zeros(2 * span + 1)
    pmf[span] = 1.0  # offset v stored at index v + span
    for p, ai in zip(ps, a):
        shift_l = np.roll(pmf, -int(ai)) if ai else pmf
        shift_r = np.roll(pmf, int(ai)) if ai else pmf
        pmf = p * (shift_l + shift_r) + (1.0 - 2.0 * p) * pmf
    p0 = float(pmf[span])
    idx = int(x) + span
    px = float(pmf[idx]) if 0 <= idx < pmf.size else 0.0
    return p0 >= px - TOL
