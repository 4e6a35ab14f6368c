"""Correlated pair samplers.

A correlated pair is two graphs (or two real matrices in the dense-noise
variant) on the same vertex set whose edge variables are drawn jointly:
equal marginals p_ij, disagreement probability p_ij * delta_ij per side.
The second object is relabeled by a hidden permutation which samplers
return as ground truth.

Randomness protocol: every sampler owns a single PCG64 stream seeded with
the spec's 64-bit seed.  Pair variables are consumed in lexicographic
(i, j) order with i < j (i <= j in the dense case), then the hidden
permutation is drawn from the same stream.  Reruns with the same seed are
bit-identical.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np

log = logging.getLogger(__name__)

# Edge probabilities are kept below 1 - DEFAULT_ALPHA unless a spec
# overrides alpha explicitly.
DEFAULT_ALPHA = 0.05

IndexFn = Callable[[np.ndarray, np.ndarray], np.ndarray]


# ---------------------------------------------------------------------------
# graphs


def _canonical_edges(n: int, edges) -> np.ndarray:
    """Normalize an edge collection to a lexicographically sorted (m, 2)
    int64 array with u < v, rejecting self-loops, duplicates and
    out-of-range endpoints."""
    arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                     dtype=np.int64)
    if arr.size == 0:
        return np.empty((0, 2), dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("edges must be pairs")
    if arr.min() < 0 or arr.max() >= n:
        raise ValueError("edge endpoint out of range")
    if np.any(arr[:, 0] == arr[:, 1]):
        raise ValueError("self-loops are not allowed")
    arr = np.sort(arr, axis=1)
    order = np.lexsort((arr[:, 1], arr[:, 0]))
    arr = arr[order]
    if arr.shape[0] > 1 and np.any(np.all(arr[1:] == arr[:-1], axis=1)):
        raise ValueError("duplicate edges")
    return arr


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    ``edges`` is canonical: each row (u, v) with u < v, rows sorted
    lexicographically.  ``ids`` optionally records the original external
    id of each vertex (used by the ingest pipeline); defaults to 0..n-1.
    """

    n: int
    edges: np.ndarray
    ids: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "edges", _canonical_edges(self.n, self.edges))
        if self.ids is not None:
            ids = np.asarray(self.ids, dtype=np.int64)
            if ids.shape != (self.n,):
                raise ValueError("ids must have one entry per vertex")
            object.__setattr__(self, "ids", ids)

    @property
    def m(self) -> int:
        return self.edges.shape[0]

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.bincount(self.edges.ravel(), minlength=self.n).astype(np.int64)

    @cached_property
    def _csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(indptr, indices): neighbor lists in ascending order."""
        both = np.concatenate([self.edges, self.edges[:, ::-1]])
        order = np.lexsort((both[:, 1], both[:, 0]))
        both = both[order]
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(np.bincount(both[:, 0], minlength=self.n), out=indptr[1:])
        return indptr, np.ascontiguousarray(both[:, 1])

    def neighbors(self, v: int) -> np.ndarray:
        indptr, indices = self._csr
        return indices[indptr[v]:indptr[v + 1]]

    def edge_set(self) -> set[tuple[int, int]]:
        return {(int(u), int(v)) for u, v in self.edges}

    def same_as(self, other: "Graph") -> bool:
        return self.n == other.n and np.array_equal(self.edges, other.edges)


def relabel(graph: Graph, perm: np.ndarray) -> Graph:
    """Rename vertex u to perm[u]; the edge set is mapped accordingly."""
    perm = np.asarray(perm, dtype=np.int64)
    if sorted(perm.tolist()) != list(range(graph.n)):
        raise ValueError("perm must be a permutation of 0..n-1")
    return Graph(graph.n, perm[graph.edges])


# ---------------------------------------------------------------------------
# correlated Bernoulli pairs


def sample_correlated_bernoulli(p: float, delta: float, rng: np.random.Generator):
    """One draw of the joint edge law from a single uniform.

    P[(1,1)] = p(1-delta), P[(1,0)] = P[(0,1)] = p*delta,
    P[(0,0)] = 1 - p(1+delta).
    """
    u = rng.random()
    g = u < p
    h = (u < p * (1.0 - delta)) or (p <= u < p * (1.0 + delta))
    return int(g), int(h)


def _joint_masks(p: np.ndarray, delta: np.ndarray, u: np.ndarray):
    # same thresholds as sample_correlated_bernoulli, vectorized
    g = u < p
    h = (u < p * (1.0 - delta)) | ((u >= p) & (u < p * (1.0 + delta)))
    return g, h


@dataclass(frozen=True, eq=False)
class CorrelatedModelSpec:
    """Validated description of a correlated graph pair distribution.

    edge_prob and noise take two equal-length int arrays (i, j) and return
    elementwise p_ij / delta_ij.  Both must be symmetric in (i, j); the
    diagonal is never evaluated (p_ii = 0 by convention).  Validation is
    eager: all n(n-1)/2 values are computed at construction and cached,
    so feasibility errors surface here and not mid-sample.
    """

    n: int
    edge_prob: IndexFn
    noise: IndexFn
    alpha: float = DEFAULT_ALPHA
    seed: int = 0
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if not (0.0 < self.alpha < 1.0):
            raise ValueError("alpha must lie in (0, 1)")
        iu, ju = np.triu_indices(self.n, k=1)
        p = np.asarray(self.edge_prob(iu, ju), dtype=np.float64)
        d = np.asarray(self.noise(iu, ju), dtype=np.float64)
        if p.shape != iu.shape or d.shape != iu.shape:
            raise ValueError("edge_prob/noise must evaluate elementwise")
        if not (np.all(np.isfinite(p)) and np.all(np.isfinite(d))):
            raise ValueError("edge_prob/noise produced non-finite values")
        bad = (p < 0.0) | (p > 1.0 - self.alpha)
        if np.any(bad):
            k = int(np.flatnonzero(bad)[0])
            raise ValueError(
                f"p[{iu[k]},{ju[k]}]={p[k]} outside [0, 1-alpha]={1.0 - self.alpha}")
        if np.any((d < 0.0) | (d > 1.0)):
            raise ValueError("delta must lie in [0, 1]")
        infeas = p * (1.0 + d) > 1.0
        if np.any(infeas):
            k = int(np.flatnonzero(infeas)[0])
            raise ValueError(
                f"infeasible joint law at ({iu[k]},{ju[k]}): p(1+delta) > 1")
        # spot-check symmetry of user-supplied functions
        if iu.size:
            take = np.linspace(0, iu.size - 1, num=min(iu.size, 256), dtype=np.int64)
            if (not np.array_equal(p[take], np.asarray(self.edge_prob(ju[take], iu[take]), dtype=np.float64))
                    or not np.array_equal(d[take], np.asarray(self.noise(ju[take], iu[take]), dtype=np.float64))):
                raise ValueError("edge_prob/noise must be symmetric in (i, j)")
        object.__setattr__(self, "_p", p)
        object.__setattr__(self, "_delta", d)

    # cached upper-triangle values in lexicographic order
    @property
    def pair_probs(self) -> np.ndarray:
        return self._p

    @property
    def pair_noise(self) -> np.ndarray:
        return self._delta


def expected_degrees(spec: CorrelatedModelSpec) -> np.ndarray:
    """d_i = sum_j p_ij (diagonal excluded)."""
    iu, ju = np.triu_indices(spec.n, k=1)
    p = spec.pair_probs
    return (np.bincount(iu, weights=p, minlength=spec.n)
            + np.bincount(ju, weights=p, minlength=spec.n))


def min_expected_degree(spec: CorrelatedModelSpec) -> float:
    return float(expected_degrees(spec).min())


@dataclass(frozen=True, eq=False)
class CorrelatedPair:
    """Sampled pair: g keeps latent labels, h is relabeled by ground_truth.

    Vertex i of g corresponds to vertex ground_truth[i] of h.
    """

    g: Graph
    h: Graph
    ground_truth: np.ndarray
    meta: dict = field(default_factory=dict)


def sample_pair(spec: CorrelatedModelSpec) -> CorrelatedPair:
    """Draw a correlated graph pair from spec.

    Consumes one uniform per vertex pair in lexicographic order, then the
    hidden permutation, all from one stream seeded with spec.seed.
    """
    rng = np.random.default_rng(spec.seed)
    iu, ju = np.triu_indices(spec.n, k=1)
    u = rng.random(iu.size)
    gmask, hmask = _joint_masks(spec.pair_probs, spec.pair_noise, u)
    g = Graph(spec.n, np.stack([iu[gmask], ju[gmask]], axis=1))
    h_latent = Graph(spec.n, np.stack([iu[hmask], ju[hmask]], axis=1))
    perm = rng.permutation(spec.n)
    meta = dict(spec.meta)
    meta["seed"] = spec.seed
    return CorrelatedPair(g, relabel(h_latent, perm), perm, meta)


def subsample_pair(parent: Graph, s: float, seed: int) -> CorrelatedPair:
    """Two independent s-subsamples of a fixed parent graph.

    Each parent edge is kept in g with probability s and, independently,
    in the latent h with probability s (keep decisions consumed in
    lexicographic edge order, g pass then h pass).  Conditional on a parent
    edge this is the joint law with p = s, delta = 1 - s.
    """
    if not (0.0 <= s <= 1.0):
        raise ValueError("s must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    keep_g = rng.random(parent.m) < s
    keep_h = rng.random(parent.m) < s
    g = Graph(parent.n, parent.edges[keep_g])
    h_latent = Graph(parent.n, parent.edges[keep_h])
    perm = rng.permutation(parent.n)
    return CorrelatedPair(g, relabel(h_latent, perm), perm,
                          {"model": "subsample", "s": s, "seed": seed,
                           "parent_m": parent.m})


# ---------------------------------------------------------------------------
# named specs


def _const(c: float) -> IndexFn:
    return lambda i, j: np.full(np.shape(i), float(c))


def er_spec(n: int, q: float, s: float, alpha: float = DEFAULT_ALPHA,
            seed: int = 0) -> CorrelatedModelSpec:
    """Homogeneous pair: p_ij = q, delta = 1 - s.

    Equivalent to subsampling a parent G(n, q/s) twice, hence q <= s.
    """
    if not (0.0 <= q <= s <= 1.0):
        raise ValueError(f"require 0 <= q <= s <= 1, got q={q}, s={s}")
    return CorrelatedModelSpec(n, _const(q), _const(1.0 - s), alpha, seed,
                               {"model": "er", "q": q, "s": s})


def sbm_spec(partition, P, s: float, alpha: float = DEFAULT_ALPHA,
             seed: int = 0) -> CorrelatedModelSpec:
    """Block-constant pair: p_uv = P[block(u)][block(v)], delta = 1 - s.

    partition assigns a block id to each vertex; P is symmetric with
    entries in [0, s] (the parent block matrix is P/s).
    """
    part = np.asarray(partition, dtype=np.int64)
    P = np.asarray(P, dtype=np.float64)
    n = part.size
    r = P.shape[0]
    if P.shape != (r, r) or not np.array_equal(P, P.T):
        raise ValueError("P must be square and symmetric")
    if part.min() < 0 or part.max() >= r:
        raise ValueError("partition refers to a missing block")
    if np.any((P < 0.0) | (P > s)):
        raise ValueError("P entries must lie in [0, s]")

    def edge_prob(i, j):
        return P[part[np.asarray(i)], part[np.asarray(j)]]

    return CorrelatedModelSpec(n, edge_prob, _const(1.0 - s), alpha, seed,
                               {"model": "sbm", "blocks": r, "s": s})


def chunglu_spec(weights, s: float, alpha: float = DEFAULT_ALPHA,
                 seed: int = 0) -> CorrelatedModelSpec:
    """Weight-product pair: p_ij = s * w_i w_j / sum(w), delta = 1 - s.

    Values above 1 - alpha are clamped there; the number of clamped pairs
    is recorded in meta["clamped_pairs"] and logged, since clamping biases
    the targeted expected degrees d_i = s * w_i.
    """
    w = np.asarray(weights, dtype=np.float64)
    if np.any(w <= 0.0):
        raise ValueError("weights must be positive")
    total = float(w.sum())
    if float(w.max()) ** 2 >= total:
        raise ValueError("max weight^2 must stay below the weight sum")
    cap = 1.0 - alpha
    raw_iu, raw_ju = np.triu_indices(w.size, k=1)
    raw = s * w[raw_iu] * w[raw_ju] / total
    clamped = int(np.count_nonzero(raw > cap))
    if clamped:
        log.warning("chunglu_spec: clamped %d pair probabilities to %g",
                    clamped, cap)

    def edge_prob(i, j):
        return np.minimum(s * w[np.asarray(i)] * w[np.asarray(j)] / total, cap)

    return CorrelatedModelSpec(w.size, edge_prob, _const(1.0 - s), alpha, seed,
                               {"model": "chunglu", "s": s,
                                "clamped_pairs": clamped})


def inverse_sqrt_spec(n: int, delta: float, alpha: float = DEFAULT_ALPHA,
                      seed: int = 0) -> CorrelatedModelSpec:
    """Distance-decay pair: p_ij = |i - j|^{-1/2} / 2, constant delta."""

    def edge_prob(i, j):
        return 0.5 / np.sqrt(np.abs(np.asarray(i, dtype=np.float64)
                                    - np.asarray(j, dtype=np.float64)))

    return CorrelatedModelSpec(n, edge_prob, _const(delta), alpha, seed,
                               {"model": "fig2", "delta": delta})


def powerlaw_weights(n: int, gamma: float, b: float,
                     rng: np.random.Generator) -> np.ndarray:
    """Pareto weights with density (gamma-1) b^{gamma-1} x^{-gamma} on
    [b, inf), drawn by inverting the CDF.  Mean is b(gamma-1)/(gamma-2)
    for gamma > 2."""
    if gamma <= 2.0:
        raise ValueError("gamma must exceed 2 for a finite mean")
    u = rng.random(n)
    return b * (1.0 - u) ** (-1.0 / (gamma - 1.0))


# ---------------------------------------------------------------------------
# dense (real-valued) pairs


@dataclass(frozen=True, eq=False)
class GaussianPairSpec:
    """Correlated symmetric Gaussian matrices.

    Entry pairs (g_ij, h_ij) for i <= j are bivariate normal with common
    mean mean(i, j), unit variances and correlation correlation(i, j);
    both matrices are symmetric and h is relabeled by a hidden permutation.
    """

    n: int
    mean: IndexFn
    correlation: IndexFn
    seed: int = 0
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        iu, ju = np.triu_indices(self.n, k=0)
        mu = np.asarray(self.mean(iu, ju), dtype=np.float64)
        rho = np.asarray(self.correlation(iu, ju), dtype=np.float64)
        if mu.shape != iu.shape or rho.shape != iu.shape:
            raise ValueError("mean/correlation must evaluate elementwise")
        if not (np.all(np.isfinite(mu)) and np.all(np.isfinite(rho))):
            raise ValueError("mean/correlation produced non-finite values")
        if np.any((rho < -1.0) | (rho > 1.0)):
            raise ValueError("correlation must lie in [-1, 1]")
        object.__setattr__(self, "_mu", mu)
        object.__setattr__(self, "_rho", rho)


@dataclass(frozen=True, eq=False)
class GaussianPair:
    g: np.ndarray
    h: np.ndarray
    ground_truth: np.ndarray
    meta: dict = field(default_factory=dict)


def gaussian_spec(n: int, rho: float, mu: float = 0.0,
                  mu_range: tuple[float, float] | None = None,
                  seed: int = 0) -> GaussianPairSpec:
    """Constant-correlation dense spec.

    With mu_range the symmetric mean matrix is drawn uniformly from the
    range once, from a stream derived from (seed, 1), so the spec stays a
    deterministic function of its arguments.
    """
    if mu_range is not None:
        lo, hi = float(mu_range[0]), float(mu_range[1])
        npairs = n * (n + 1) // 2
        vals = np.random.default_rng([seed, 1]).uniform(lo, hi, size=npairs)
        M = np.zeros((n, n))
        iu, ju = np.triu_indices(n, k=0)
        M[iu, ju] = vals
        M[ju, iu] = vals
        mean = lambda i, j: M[np.asarray(i), np.asarray(j)]
        meta = {"model": "gaussian", "rho": rho, "mu_range": [lo, hi]}
    else:
        mean = _const(mu)
        meta = {"model": "gaussian", "rho": rho, "mu": mu}
    return GaussianPairSpec(n, mean, _const(rho), seed, meta)


def sample_gaussian_pair(spec: GaussianPairSpec) -> GaussianPair:
    """Draw a dense correlated pair.

    h_ij = mu + rho z1 + sqrt(1 - rho^2) z2 with z1 shared with g.  The
    stream is consumed as: all z1 in lexicographic (i <= j) order, all z2,
    then the hidden permutation.
    """
    rng = np.random.default_rng(spec.seed)
    n = spec.n
    iu, ju = np.triu_indices(n, k=0)
    z1 = rng.standard_normal(iu.size)
    z2 = rng.standard_normal(iu.size)
    mu, rho = spec._mu, spec._rho
    gvals = mu + z1
    hvals = mu + rho * z1 + np.sqrt(1.0 - rho * rho) * z2
    G = np.zeros((n, n))
    H = np.zeros((n, n))
    G[iu, ju] = gvals
    G[ju, iu] = gvals
    H[iu, ju] = hvals
    H[ju, iu] = hvals
    perm = rng.permutation(n)
    H_obs = np.empty_like(H)
    H_obs[np.ix_(perm, perm)] = H
    meta = dict(spec.meta)
    meta["seed"] = spec.seed
    return GaussianPair(G, H_obs, perm, meta)


# ---------------------------------------------------------------------------
# JSON spec loading (the `generate` CLI input format)


def spec_from_json(obj: dict):
    """Build a spec from {"model": ..., "n": ..., "params": {...}, "seed": ...}.

    Models: er(q, s), sbm(partition, P, s), chunglu(weights | gamma+b, s),
    fig2(delta), gaussian(rho, mu | mu_range).  Extra params raise.
    """
    try:
        model = obj["model"]
        n = int(obj["n"])
        params = dict(obj.get("params", {}))
        seed = int(obj.get("seed", 0))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed model spec: {exc}") from exc
    alpha = float(params.pop("alpha", DEFAULT_ALPHA))
    try:
        return _model_spec(model, n, params, seed, alpha)
    except KeyError as exc:
        raise ValueError(f"missing param for model {model!r}: {exc}") from exc


def _model_spec(model, n: int, params: dict, seed: int, alpha: float):
    def done(extra):
        if extra:
            raise ValueError(f"unknown params for model {model!r}: {sorted(extra)}")

    if model == "er":
        q, s = float(params.pop("q")), float(params.pop("s"))
        done(params)
        return er_spec(n, q, s, alpha, seed)
    if model == "sbm":
        part, P, s = params.pop("partition"), params.pop("P"), float(params.pop("s"))
        done(params)
        if len(part) != n:
            raise ValueError("partition length must equal n")
        return sbm_spec(part, P, s, alpha, seed)
    if model == "chunglu":
        s = float(params.pop("s"))
        if "weights" in params:
            w = np.asarray(params.pop("weights"), dtype=np.float64)
        else:
            gamma, b = float(params.pop("gamma")), float(params.pop("b"))
            w = powerlaw_weights(n, gamma, b,
                                 np.random.default_rng([seed, 2]))
        done(params)
        if w.size != n:
            raise ValueError("weights length must equal n")
        return chunglu_spec(w, s, alpha, seed)
    if model == "fig2":
        delta = float(params.pop("delta"))
        done(params)
        return inverse_sqrt_spec(n, delta, alpha, seed)
    if model == "gaussian":
        rho = float(params.pop("rho"))
        mu = float(params.pop("mu", 0.0))
        mu_range = params.pop("mu_range", None)
        done(params)
        return gaussian_spec(n, rho, mu,
                             tuple(mu_range) if mu_range is not None else None,
                             seed)
    raise ValueError(f"unknown model {model!r}")
