"""Per-vertex degree-profile signatures on the unit circle.

Each neighbor j of a vertex contributes a "ball" at sqrt(degree(j)),
taken mod 1.  The signature counts, for every bin position t in [0,1),
how many balls fall in the closed cyclic interval of radius 1/L around t.
As a function of t this count is a step function that can only change at
the 4n landmark values frac(sqrt(deg) +- 1/L) of the two graphs, so it is
stored as one value per landmark gap.

All geometry here is exact in the following sense: an arc endpoint and
the landmark generated from the same vertex degree are computed by the
same expression on the same inputs, hence are bit-identical floats, and
interval coverage is decided by searchsorted against those exact values.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np


def frac(x):
    """Fractional part, exact for float64 (x - floor(x) never rounds)."""
    x = np.asarray(x, dtype=np.float64)
    return x - np.floor(x)


def cyclic_arc(values, L: int):
    """Endpoints (lo, hi) of the closed cyclic interval of radius 1/L
    around each value (mod 1).  The arc wraps around 0 iff lo > hi."""
    inv = 1.0 / L
    v = np.asarray(values, dtype=np.float64)
    return frac(v - inv), frac(v + inv)


def arc_segments(value: float, L: int) -> tuple[tuple[float, float], ...]:
    """The arc around `value` as plain subintervals of [0,1):
    ((lo, hi),) in the interior case, ((0, hi), (lo, 1)) when wrapping."""
    lo, hi = cyclic_arc(float(value), L)
    lo, hi = float(lo), float(hi)
    if lo <= hi:
        return ((lo, hi),)
    return ((0.0, hi), (lo, 1.0))


def ball_support(x: float, L: int) -> tuple[tuple[float, float], ...]:
    """Support of t -> 1{sqrt(x) in closed cyclic interval around t}.

    One interval when frac(sqrt(x)) lies in [1/L, 1-1/L), else the
    two-piece wraparound; total length 2/L either way.
    """
    if x < 0:
        raise ValueError("x must be nonnegative")
    if L < 5:
        raise ValueError("L must be at least 5")
    return arc_segments(float(np.sqrt(np.float64(x))), L)


def segments_measure(segments) -> float:
    return float(sum(b - a for a, b in segments))


@dataclass(frozen=True, eq=False)
class LandmarkTable:
    """Sorted landmark grid shared by the two graphs of a matching run.

    boundaries = [0, a_1, ..., a_4n, 1] (length 4n+2, duplicates kept);
    interval l is (boundaries[l], boundaries[l+1]) for l = 0..4n.
    """

    L: int
    n: int
    boundaries: np.ndarray
    source: str = ""

    @property
    def landmarks(self) -> np.ndarray:
        return self.boundaries[1:-1]

    @cached_property
    def widths(self) -> np.ndarray:
        return np.diff(self.boundaries)

    @property
    def num_intervals(self) -> int:
        return self.boundaries.size - 1


def build_landmarks(gdeg, hdeg, L: int) -> LandmarkTable:
    """All 4n values frac(sqrt(deg) +- 1/L) of both graphs, sorted,
    duplicates retained, padded with 0 and 1."""
    if L < 5 or int(L) != L:
        raise ValueError("L must be an integer >= 5")
    gdeg = np.asarray(gdeg, dtype=np.float64)
    hdeg = np.asarray(hdeg, dtype=np.float64)
    if gdeg.shape != hdeg.shape or gdeg.ndim != 1:
        raise ValueError("degree vectors must share one length")
    glo, ghi = cyclic_arc(np.sqrt(gdeg), L)
    hlo, hhi = cyclic_arc(np.sqrt(hdeg), L)
    marks = np.sort(np.concatenate([glo, ghi, hlo, hhi]))
    boundaries = np.concatenate([[0.0], marks, [1.0]])
    return LandmarkTable(int(L), gdeg.size, boundaries,
                         source=f"degrees n={gdeg.size} L={int(L)}")


def _ball_ranges(table: LandmarkTable, positions: np.ndarray):
    """Interval-index coverage of the arcs around `positions`.

    Returns (start, stop, wrap): a non-wrapping arc covers intervals
    [start, stop); a wrapping one covers [start, K) plus [0, stop) where
    K = table.num_intervals.  Raises if an arc endpoint is not a landmark
    (i.e. the table was built from other degree data).
    """
    lo, hi = cyclic_arc(positions, table.L)
    B = table.boundaries
    start = np.searchsorted(B, lo, side="left")
    stop = np.searchsorted(B, hi, side="right") - 1
    if not (np.array_equal(B[start], lo) and np.array_equal(B[stop], hi)):
        raise ValueError("table does not contain this graph's landmarks")
    return start, stop, lo > hi


@dataclass(frozen=True, eq=False)
class Signature:
    """Step-function ball counts of one vertex over a landmark table:
    values[l] is the count on interval (boundaries[l], boundaries[l+1])."""

    values: np.ndarray
    table: LandmarkTable
    vertex: int
    degree: int

    def mass(self) -> float:
        """Integral of the step function; equals degree * (2/L)."""
        return float(self.values @ self.table.widths)


def _accumulate_row(diff, start, stop, wrap, K):
    """Add one ball's coverage into a difference array of length K+1."""
    if wrap:
        diff[start] += 1.0
        diff[K] -= 1.0
        diff[0] += 1.0
        diff[stop] -= 1.0
    else:
        diff[start] += 1.0
        diff[stop] -= 1.0


def build_signature(graph, vertex: int, table: LandmarkTable, L: int) -> Signature:
    """Signature of one vertex: per interval, the number of neighbors j
    whose arc around sqrt(deg(j)) covers that whole interval."""
    if not (0 <= vertex < graph.n):
        raise IndexError(f"vertex {vertex} out of range")
    if table.L != L:
        raise ValueError("table was built with a different L")
    if table.n != graph.n:
        raise ValueError("table was built for a different graph size")
    K = table.num_intervals
    nb = graph.neighbors(vertex)
    diff = np.zeros(K + 1)
    if nb.size:
        pos = np.sqrt(graph.degrees[nb].astype(np.float64))
        start, stop, wrap = _ball_ranges(table, pos)
        for s, e, w in zip(start, stop, wrap):
            _accumulate_row(diff, s, e, w, K)
    values = np.cumsum(diff[:K])
    return Signature(values, table, vertex, int(graph.degrees[vertex]))


def signature_matrix(graph, table: LandmarkTable) -> np.ndarray:
    """All n signatures at once as an (n, 4n+1) float64 matrix.

    Row i equals build_signature(graph, i, table, L).values; built by
    scattering +-1 coverage events per (vertex, neighbor) pair and
    prefix-summing each row.
    """
    if table.n != graph.n:
        raise ValueError("table was built for a different graph size")
    K = table.num_intervals
    pos = np.sqrt(graph.degrees.astype(np.float64))
    start, stop, wrap = _ball_ranges(table, pos)
    indptr, indices = graph._csr
    rows = np.repeat(np.arange(graph.n), np.diff(indptr))
    balls = indices
    diff = np.zeros((graph.n, K + 1))
    # main segment: [start, stop) normally, [start, K) when wrapping
    end_main = np.where(wrap, K, stop)
    np.add.at(diff, (rows, start[balls]), 1.0)
    np.add.at(diff, (rows, end_main[balls]), -1.0)
    wb = wrap[balls]
    if np.any(wb):
        np.add.at(diff, (rows[wb], 0), 1.0)
        np.add.at(diff, (rows[wb], stop[balls][wb]), -1.0)
    return np.cumsum(diff[:, :K], axis=1)
