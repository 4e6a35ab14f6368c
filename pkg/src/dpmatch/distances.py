"""Row-profile distances between two graphs (or two real matrices).

Every variant reduces to an L1 distance between per-vertex step-function
or histogram encodings, so the O(n^3) work is concentrated in the
pairwise weighted-L1 kernel (compiled when available):

  cyclic-bin  signatures on the unit circle, weights = landmark gaps
  bin(r)      same sweep on the real line with radius r, no wraparound
  ref / cdf   empirical CDFs of neighbor degrees (resp. sqrt degrees) on
              the shared integer-degree grid, weights = grid gaps
  disc(r)     dense histograms over width-2r bins of sqrt degree
  gaussian    sparse histograms of matrix rows over width-1/L bins

Entry (i, k) always depends only on row i of the first input and row k
of the second.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .models import Graph
from .signatures import build_landmarks, signature_matrix


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    values: np.ndarray
    variant: str
    params: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def label(self) -> str:
        """Short tag like "bin(0.5)" used in logs and plot legends."""
        if not self.params:
            return self.variant
        inner = ",".join(repr(v) for v in self.params.values())
        return f"{self.variant}({inner})"

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            out = csv.writer(fh)
            out.writerow(["i", "k", "distance"])
            for i in range(self.values.shape[0]):
                for k in range(self.values.shape[1]):
                    out.writerow([i, k, repr(float(self.values[i, k]))])


def _check_same_n(g: Graph, h: Graph) -> int:
    if g.n != h.n:
        raise ValueError(f"size mismatch: {g.n} vs {h.n}")
    return g.n


# ---------------------------------------------------------------------------
# cyclic-bin distance and its numeric cross-check


def distance_cyclic(g: Graph, h: Graph, L: int) -> DistanceMatrix:
    """D(i,k) = integral over t in [0,1) of |#balls of i in the cyclic
    bin at t - #balls of k in it|, evaluated exactly as the weighted L1
    distance between step-function signatures on the shared landmark
    grid."""
    n = _check_same_n(g, h)
    if L < 5 or int(L) != L:
        raise ValueError("L must be an integer >= 5")
    table = build_landmarks(g.degrees, h.degrees, int(L))
    U = signature_matrix(g, table)
    V = signature_matrix(h, table)
    values = _backend.pairwise_weighted_l1(U, V, table.widths)
    return DistanceMatrix(values, "cyclic-bin", {"L": int(L)})


def distance_numeric_oracle(g: Graph, h: Graph, L: int, i: int, k: int,
                            grid: int) -> float:
    """Midpoint-rule estimate of the cyclic-bin integrand for one pair,
    computed directly from the definition (no landmarks, no sweep); test
    plumbing for cross-checking distance_cyclic.

    Quadrature error is at most (total step-function variation)/grid,
    i.e. 4 * max_degree / grid.
    """
    if grid < 10_000:
        raise ValueError("grid must be at least 10^4")
    _check_same_n(g, h)
    inv = 1.0 / L
    balls_i = np.sqrt(g.degrees[g.neighbors(i)].astype(np.float64))
    balls_k = np.sqrt(h.degrees[h.neighbors(k)].astype(np.float64))
    total = 0.0
    step = 200_000
    for lo in range(0, grid, step):
        t = (np.arange(lo, min(lo + step, grid), dtype=np.float64) + 0.5) / grid
        ci = _cyclic_cover_count(balls_i, t, inv)
        ck = _cyclic_cover_count(balls_k, t, inv)
        total += float(np.abs(ci - ck).sum())
    return total / grid


def _cyclic_cover_count(balls: np.ndarray, t: np.ndarray, radius: float):
    """count[q] = #{balls b : cyclic distance(b, t[q]) <= radius}."""
    if balls.size == 0:
        return np.zeros(t.size)
    d = np.mod(balls[:, None] - t[None, :], 1.0)
    d = np.minimum(d, 1.0 - d)
    return (d <= radius).sum(axis=0).astype(np.float64)


# ---------------------------------------------------------------------------
# real-line interval sweep, radius r


def distance_bin(g: Graph, h: Graph, r: float) -> DistanceMatrix:
    """Unnormalized interval-count distance on the real line:
    D(i,k) = integral over t of |#{sqrt deg of i's neighbors in
    [t-r, t+r]} - same for k|."""
    n = _check_same_n(g, h)
    if not r > 0:
        raise ValueError("r must be positive")
    r = float(r)
    gpos = np.sqrt(g.degrees.astype(np.float64))
    hpos = np.sqrt(h.degrees.astype(np.float64))
    # all interval endpoints sqrt(deg) +- r of both graphs, like the
    # cyclic landmarks but without wraparound
    B = np.sort(np.concatenate([gpos - r, gpos + r, hpos - r, hpos + r]))
    widths = np.diff(B)
    U = _line_coverage_matrix(g, gpos, r, B)
    V = _line_coverage_matrix(h, hpos, r, B)
    values = _backend.pairwise_weighted_l1(U, V, widths)
    return DistanceMatrix(values, "bin", {"r": r})


def _line_coverage_matrix(graph: Graph, pos: np.ndarray, r: float,
                          B: np.ndarray) -> np.ndarray:
    """Row i counts, per gap of the sorted endpoint grid B, how many of
    i's neighbor intervals [pos_j - r, pos_j + r] cover that gap."""
    lo, hi = pos - r, pos + r
    start = np.searchsorted(B, lo, side="left")
    stop = np.searchsorted(B, hi, side="right") - 1
    if not (np.array_equal(B[start], lo) and np.array_equal(B[stop], hi)):
        raise ValueError("endpoint grid does not match this graph")
    indptr, indices = graph._csr
    rows = np.repeat(np.arange(graph.n), np.diff(indptr))
    K = B.size - 1
    diff = np.zeros((graph.n, K + 1))
    np.add.at(diff, (rows, start[indices]), 1.0)
    np.add.at(diff, (rows, stop[indices]), -1.0)
    return np.cumsum(diff[:, :K], axis=1)


# ---------------------------------------------------------------------------
# normalized CDF distances (1-Wasserstein between neighbor-degree laws)


def _cdf_matrix(graph: Graph, top: int) -> np.ndarray:
    """Row i = empirical CDF of {deg(j): j neighbor of i} evaluated at
    degree values 0..top-1, or zeros for an isolated vertex.

    Sample values can equal top, so counts are scattered over 0..top and
    the final column (identically 1, hence distance-neutral) is dropped.
    """
    indptr, indices = graph._csr
    rows = np.repeat(np.arange(graph.n), np.diff(indptr))
    C = np.zeros((graph.n, top + 1))
    np.add.at(C, (rows, graph.degrees[indices]), 1.0)
    np.cumsum(C, axis=1, out=C)
    deg = graph.degrees.astype(np.float64)
    nz = deg > 0
    C[nz] /= deg[nz, None]
    return C[:, :top]


def _wasserstein_by_grid(g: Graph, h: Graph, weights_of) -> np.ndarray:
    n = _check_same_n(g, h)
    top = int(max(g.degrees.max(initial=0), h.degrees.max(initial=0)))
    top = max(top, 1)
    # CDFs agree (=1) from the max degree on, so the grid 0..top-1 meshes
    # the whole difference
    FG = _cdf_matrix(g, top)
    FH = _cdf_matrix(h, top)
    values = _backend.pairwise_weighted_l1(FG, FH, weights_of(top))
    empty_g = g.degrees == 0
    empty_h = h.degrees == 0
    if empty_g.any() or empty_h.any():
        values[empty_g, :] = np.inf
        values[:, empty_h] = np.inf
        values[np.ix_(empty_g, empty_h)] = 0.0
    return values


def distance_ref(g: Graph, h: Graph) -> DistanceMatrix:
    """1-Wasserstein distance between the empirical distributions of
    neighbor degrees (counts normalized by the degree).  Isolated
    vertices: 0 against isolated, +inf against anything else."""
    values = _wasserstein_by_grid(g, h, lambda top: np.ones(top))
    return DistanceMatrix(values, "ref", {})


def distance_cdf(g: Graph, h: Graph) -> DistanceMatrix:
    """distance_ref with sqrt applied to each degree sample; on the
    shared grid this only changes the gap weights to sqrt(v+1)-sqrt(v)."""

    def weights(top: int) -> np.ndarray:
        v = np.arange(top, dtype=np.float64)
        return np.sqrt(v + 1.0) - np.sqrt(v)

    values = _wasserstein_by_grid(g, h, weights)
    return DistanceMatrix(values, "cdf", {})


# ---------------------------------------------------------------------------
# discrete-bin histogram distance


def distance_disc(g: Graph, h: Graph, r: float) -> DistanceMatrix:
    """D(i,k) = sum_m |c_i(m) - c_k(m)| with c_i(m) the number of i's
    neighbors whose sqrt degree lies in [2mr, 2(m+1)r)."""
    n = _check_same_n(g, h)
    if not r > 0:
        raise ValueError("r must be positive")
    r = float(r)

    def hist(graph: Graph, nbins: int) -> np.ndarray:
        indptr, indices = graph._csr
        rows = np.repeat(np.arange(graph.n), np.diff(indptr))
        bins = _disc_bin_index(np.sqrt(graph.degrees.astype(np.float64)), r)
        C = np.zeros((graph.n, nbins))
        np.add.at(C, (rows, bins[indices]), 1.0)
        return C

    top = 1 + int(max(
        _disc_bin_index(np.sqrt(g.degrees.astype(np.float64)), r).max(initial=0),
        _disc_bin_index(np.sqrt(h.degrees.astype(np.float64)), r).max(initial=0)))
    values = _backend.pairwise_weighted_l1(hist(g, top), hist(h, top),
                                           np.ones(top))
    return DistanceMatrix(values, "disc", {"r": r})


def _disc_bin_index(x: np.ndarray, r: float) -> np.ndarray:
    return np.floor(x / (2.0 * r)).astype(np.int64)


# ---------------------------------------------------------------------------
# dense-matrix histogram distance (huge L, sparse bins)


def distance_gaussian(g: np.ndarray, h: np.ndarray, L: int) -> DistanceMatrix:
    """Rows of two real matrices compared by histogram L1 over the
    half-open bins [m/L, (m+1)/L); bin indices are accumulated sparsely
    so L can be astronomically large."""
    g = np.asarray(g, dtype=np.float64)
    h = np.asarray(h, dtype=np.float64)
    if g.ndim != 2 or h.ndim != 2 or g.shape[1] != h.shape[1]:
        raise ValueError("inputs must be matrices with equal row length")
    if L < 1 or int(L) != L:
        raise ValueError("L must be a positive integer")
    gb, gc, gp = _sparse_rows(g, int(L))
    hb, hc, hp = _sparse_rows(h, int(L))
    values = _backend.sparse_count_l1(gb, gc, gp, hb, hc, hp)
    return DistanceMatrix(values, "gaussian", {"L": int(L)})


def _sparse_rows(mat: np.ndarray, L: int):
    """Per row: sorted unique bin indices floor(L*x) with counts, packed
    CSR-style."""
    bins_list = []
    counts_list = []
    ptr = np.zeros(mat.shape[0] + 1, dtype=np.int64)
    for i in range(mat.shape[0]):
        b, c = np.unique(np.floor(L * mat[i]).astype(np.int64),
                         return_counts=True)
        bins_list.append(b)
        counts_list.append(c.astype(np.float64))
        ptr[i + 1] = ptr[i] + b.size
    if bins_list:
        return np.concatenate(bins_list), np.concatenate(counts_list), ptr
    return np.empty(0, dtype=np.int64), np.empty(0), ptr


# ---------------------------------------------------------------------------
# dispatch used by the CLI and the experiment harness

VARIANT_KINDS = ("cyclic-bin", "ref", "cdf", "bin", "disc", "gaussian")


def compute_distance(kind: str, g, h, L: int | None = None,
                     r: float | None = None) -> DistanceMatrix:
    """Uniform entry point: kind is one of VARIANT_KINDS (graph inputs,
    except "gaussian" which takes matrices)."""
    if kind == "cyclic-bin":
        if L is None:
            raise ValueError("cyclic-bin needs L")
        return distance_cyclic(g, h, L)
    if kind == "ref":
        return distance_ref(g, h)
    if kind == "cdf":
        return distance_cdf(g, h)
    if kind == "bin":
        if r is None:
            raise ValueError("bin needs r")
        return distance_bin(g, h, r)
    if kind == "disc":
        if r is None:
            raise ValueError("disc needs r")
        return distance_disc(g, h, r)
    if kind == "gaussian":
        if L is None:
            raise ValueError("gaussian needs L")
        return distance_gaussian(g, h, L)
    raise ValueError(f"unknown distance kind {kind!r}")
