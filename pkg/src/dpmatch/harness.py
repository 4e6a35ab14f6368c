"""Experiment presets: correlated-pair benchmarks over a noise grid.

Each preset sweeps a noise grid (sqrt-discrepancy for the synthetic
models, 1-correlation for the dense Gaussian model, the keep probability
s for subsampled real networks), runs several seeded samples per grid
point, matches with every configured distance variant, and records
accuracy rows.  Output is a CSV with a fixed header and, optionally, a
self-contained SVG line chart; both are byte-deterministic for a fixed
config, so elapsed_ms is written as 0 unless timing is requested.
"""

from __future__ import annotations

import logging
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import models
from .distances import VARIANT_KINDS, compute_distance
from .matching import accuracy, match_lenient

log = logging.getLogger(__name__)

CSV_HEADER = "preset,variant,param,noise,run,seed,accuracy,ties,elapsed_ms"

PRESET_NAMES = ("fig1", "fig2", "fig3", "gaussian", "realdata")

_DEFAULT_N = {"fig1": 1000, "fig2": 1000, "fig3": 1000, "gaussian": 200}

FIG3_GAMMA = 2.5
FIG3_B = 10.0 ** (4.0 / 3.0)


@dataclass(frozen=True)
class VariantSpec:
    """A distance variant plus its resolved parameter: L for cyclic-bin
    and gaussian, the radius r for bin and disc, nothing for ref/cdf."""

    kind: str
    param: int | float | None = None

    def __post_init__(self):
        if self.kind not in VARIANT_KINDS:
            raise ValueError(f"unknown variant kind {self.kind!r}")
        needs_param = self.kind in ("cyclic-bin", "bin", "disc", "gaussian")
        if needs_param and self.param is None:
            raise ValueError(f"variant {self.kind!r} needs a parameter")
        if not needs_param and self.param is not None:
            raise ValueError(f"variant {self.kind!r} takes no parameter")
        if self.kind in ("cyclic-bin", "gaussian"):
            object.__setattr__(self, "param", int(self.param))
        elif needs_param:
            object.__setattr__(self, "param", float(self.param))

    @property
    def label(self) -> str:
        return _fmt_label(self.kind, self.param)

    def distance_kwargs(self) -> dict:
        if self.kind in ("cyclic-bin", "gaussian"):
            return {"L": self.param}
        if self.kind in ("bin", "disc"):
            return {"r": self.param}
        return {}


def _fmt_label(kind: str, param) -> str:
    if param is None:
        return kind
    if isinstance(param, (int, np.integer)):
        return f"{kind}({int(param)})"
    return f"{kind}({float(param)!r})"


@dataclass(frozen=True)
class ResultRow:
    preset: str
    variant: str
    param: int | float | None
    noise: float
    run: int
    seed: int
    accuracy: float
    ties: int
    elapsed_ms: int

    def __post_init__(self):
        if not (0.0 <= self.accuracy <= 1.0):
            raise ValueError(f"accuracy {self.accuracy} outside [0, 1]")


@dataclass(frozen=True)
class ExperimentConfig:
    preset: str
    n: int
    grid: tuple[float, ...]
    variants: tuple[VariantSpec, ...]
    runs: int = 10
    seed: int = 0
    l_scale: float = 8.0
    timing: bool = False
    out_csv: str | None = None
    out_svg: str | None = None

    def __post_init__(self):
        if self.preset not in PRESET_NAMES:
            raise ValueError(f"unknown preset {self.preset!r}")
        object.__setattr__(self, "grid", tuple(float(x) for x in self.grid))
        object.__setattr__(self, "variants", tuple(self.variants))
        if not self.grid:
            raise ValueError("grid must be nonempty")
        if self.runs < 1:
            raise ValueError("runs must be at least 1")
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.l_scale <= 0.0:
            raise ValueError("l_scale must be positive")


def default_l(n: int, l_scale: float = 8.0) -> int:
    """Bin-count scale for graph signatures: ceil(l_scale * ln n)."""
    return max(5, math.ceil(l_scale * math.log(n)))


def gaussian_l(n: int) -> int:
    """Bin count for the dense Gaussian variant: ceil(1e5 * ln n)."""
    return math.ceil(1e5 * math.log(n))


def default_grid(preset: str, n: int) -> tuple[float, ...]:
    if preset == "realdata":
        return tuple((60 + 5 * j) / 100 for j in range(9))
    if preset == "gaussian":
        return (1e-8 / gaussian_l(n) ** 2,)
    return tuple(5 * j / 100 for j in range(11))


def default_variants(preset: str, n: int,
                     l_scale: float = 8.0) -> tuple[VariantSpec, ...]:
    if preset == "gaussian":
        return (VariantSpec("gaussian", gaussian_l(n)),)
    base = (VariantSpec("cyclic-bin", default_l(n, l_scale)),
            VariantSpec("ref"), VariantSpec("cdf"),
            VariantSpec("bin", 0.25), VariantSpec("bin", 0.5),
            VariantSpec("bin", 1.0))
    if preset in ("fig3", "realdata"):
        base = base + (VariantSpec("disc", 0.5),)
    return base


def default_config(preset: str, n: int | None = None, runs: int = 10,
                   seed: int = 0, l_scale: float = 8.0,
                   grid=None, variants=None, timing: bool = False,
                   out_csv: str | None = None,
                   out_svg: str | None = None) -> ExperimentConfig:
    """Fill a preset's defaults; n is mandatory for realdata (the parent
    graph's size, which fixes the cyclic-bin L)."""
    if n is None:
        n = _DEFAULT_N.get(preset)
        if n is None:
            raise ValueError(f"preset {preset!r} needs an explicit n")
    if grid is None:
        grid = default_grid(preset, n)
    if variants is None:
        variants = default_variants(preset, n, l_scale)
    return ExperimentConfig(preset, n, tuple(grid), tuple(variants), runs,
                            seed, l_scale, timing, out_csv, out_svg)


# ---------------------------------------------------------------------------
# sweep machinery


def _run_seed(cfg: ExperimentConfig, grid_index: int, run: int) -> int:
    return cfg.seed + 10 ** 6 * grid_index + run


def _measure_variants(cfg, noise, run, seed, g, h, truth) -> list[ResultRow]:
    rows = []
    for v in cfg.variants:
        t0 = time.perf_counter()
        d = compute_distance(v.kind, g, h, **v.distance_kwargs())
        res = match_lenient(d)
        acc = accuracy(res, truth)
        ms = int(round((time.perf_counter() - t0) * 1e3)) if cfg.timing else 0
        rows.append(ResultRow(cfg.preset, v.kind, v.param, noise, run, seed,
                              acc, res.tie_count, ms))
    return rows


def _sweep(cfg: ExperimentConfig, make_pair) -> list[ResultRow]:
    """Run make_pair(noise, seed) on every (grid point, run), measure all
    variants, and return rows sorted by (noise, run).

    Jobs carry independent seeds, so they are safe to run concurrently;
    the final sort keeps the output order-deterministic either way.
    """
    jobs = [(noise, run, _run_seed(cfg, gi, run))
            for gi, noise in enumerate(cfg.grid)
            for run in range(cfg.runs)]

    def one(job):
        noise, run, seed = job
        pair = make_pair(noise, seed)
        return _measure_variants(cfg, noise, run, seed,
                                 pair.g, pair.h, pair.ground_truth)

    workers = min(len(jobs), os.cpu_count() or 1)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(one, jobs))
    else:
        chunks = [one(job) for job in jobs]
    rows = [row for chunk in chunks for row in chunk]
    rows.sort(key=lambda r: (r.noise, r.run))
    return rows


# ---------------------------------------------------------------------------
# presets


def run_fig1(cfg: ExperimentConfig) -> list[ResultRow]:
    """Homogeneous pairs, q=0.05; grid values are sqrt(discrepancy)."""

    def make(noise, seed):
        delta = noise * noise
        return models.sample_pair(
            models.er_spec(cfg.n, 0.05, 1.0 - delta, seed=seed))

    return _sweep(cfg, make)


def run_fig2(cfg: ExperimentConfig) -> list[ResultRow]:
    """Distance-decay pairs p_ij = |i-j|^{-1/2}/2; grid is sqrt(delta)."""

    def make(noise, seed):
        return models.sample_pair(
            models.inverse_sqrt_spec(cfg.n, noise * noise, seed=seed))

    return _sweep(cfg, make)


def _heavy_tail_chunglu_spec(weights, delta: float, seed: int,
                             alpha: float = models.DEFAULT_ALPHA):
    """Weight-product spec with constant discrepancy delta.

    Heavy-tailed weights routinely break the max(w)^2 < sum(w) guarantee
    behind the plain weight-product constructor, so pair probabilities
    w_i w_j / sum(w) are capped at min(1 - alpha, 1/(1 + delta)); the
    second bound keeps the joint edge law feasible.  Cap count lands in
    meta.
    """
    w = np.asarray(weights, dtype=np.float64)
    if np.any(w <= 0.0):
        raise ValueError("weights must be positive")
    if not (0.0 <= delta < 1.0):
        raise ValueError("delta must lie in [0, 1)")
    total = float(w.sum())
    cap = min(1.0 - alpha, 1.0 / (1.0 + delta))

    def edge_prob(i, j):
        return np.minimum(w[np.asarray(i)] * w[np.asarray(j)] / total, cap)

    iu, ju = np.triu_indices(w.size, k=1)
    clamped = int(np.count_nonzero(w[iu] * w[ju] / total > cap))
    if clamped:
        log.info("heavy-tail weights: capped %d pair probabilities at %g",
                 clamped, cap)
    return models.CorrelatedModelSpec(
        w.size, edge_prob,
        lambda i, j: np.full(np.shape(i), delta), alpha, seed,
        {"model": "chunglu-heavy", "delta": delta, "cap": cap,
         "clamped_pairs": clamped})


def run_fig3(cfg: ExperimentConfig) -> list[ResultRow]:
    """Power-law weight-product pairs; fresh weights every run."""

    def make(noise, seed):
        w = models.powerlaw_weights(cfg.n, FIG3_GAMMA, FIG3_B,
                                    np.random.default_rng([seed, 2]))
        return models.sample_pair(
            _heavy_tail_chunglu_spec(w, noise * noise, seed))

    return _sweep(cfg, make)


def run_gaussian(cfg: ExperimentConfig) -> list[ResultRow]:
    """Dense correlated Gaussian pairs; grid values are 1 - correlation."""

    def make(noise, seed):
        spec = models.gaussian_spec(cfg.n, 1.0 - noise,
                                    mu_range=(-3.0, 3.0), seed=seed)
        return models.sample_gaussian_pair(spec)

    return _sweep(cfg, make)


def run_realdata(cfg: ExperimentConfig, parent: models.Graph) -> list[ResultRow]:
    """Pairs of independent edge subsamples of one parent graph; grid
    values are the keep probability s."""
    if parent.n != cfg.n:
        raise ValueError(f"config built for n={cfg.n}, parent has n={parent.n}")

    def make(noise, seed):
        return models.subsample_pair(parent, noise, seed)

    return _sweep(cfg, make)


def run_experiment(cfg: ExperimentConfig,
                   parent: models.Graph | None = None) -> list[ResultRow]:
    """Dispatch on cfg.preset and write any configured outputs."""
    if cfg.preset == "realdata":
        if parent is None:
            raise ValueError("realdata preset needs a parent graph")
        rows = run_realdata(cfg, parent)
    else:
        runner = {"fig1": run_fig1, "fig2": run_fig2, "fig3": run_fig3,
                  "gaussian": run_gaussian}[cfg.preset]
        rows = runner(cfg)
    if cfg.out_csv:
        emit_csv(rows, cfg.out_csv)
    if cfg.out_svg:
        emit_svg(rows, cfg.out_svg)
    return rows


# ---------------------------------------------------------------------------
# emission


def _fmt_param(param) -> str:
    if param is None:
        return ""
    if isinstance(param, (int, np.integer)):
        return str(int(param))
    return repr(float(param))


def emit_csv(rows, path) -> None:
    """Fixed-header CSV; float cells use repr so parsing round-trips."""
    with open(path, "w") as fh:
        fh.write(CSV_HEADER + "\n")
        for r in rows:
            fh.write(",".join((r.preset, r.variant, _fmt_param(r.param),
                               repr(float(r.noise)), str(r.run), str(r.seed),
                               repr(float(r.accuracy)), str(r.ties),
                               str(r.elapsed_ms))) + "\n")


def parse_result_csv(path) -> list[ResultRow]:
    rows = []
    with open(path) as fh:
        header = fh.readline().strip()
        if header != CSV_HEADER:
            raise ValueError(f"unexpected header {header!r}")
        for line in fh:
            p, variant, param, noise, run, seed, acc, ties, ms = \
                line.rstrip("\n").split(",")
            parsed = None if param == "" else (
                int(param) if "." not in param and "e" not in param
                else float(param))
            rows.append(ResultRow(p, variant, parsed, float(noise), int(run),
                                  int(seed), float(acc), int(ties), int(ms)))
    return rows


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
            "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f")


def _mean_series(rows):
    """[(label, [(noise, mean accuracy)])] per (variant, param), points
    sorted by noise, series in first-appearance order."""
    order: list[tuple] = []
    bucket: dict[tuple, dict[float, list[float]]] = {}
    for r in rows:
        key = (r.variant, r.param)
        if key not in bucket:
            bucket[key] = {}
            order.append(key)
        bucket[key].setdefault(r.noise, []).append(r.accuracy)
    out = []
    for key in order:
        pts = sorted((x, math.fsum(v) / len(v)) for x, v in bucket[key].items())
        out.append((_fmt_label(*key), pts))
    return out


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def emit_svg(rows, path) -> None:
    """Standalone SVG 1.1 line chart: mean accuracy vs noise, one polyline
    per (variant, param) series, fixed axes [0,1] on y."""
    series = _mean_series(rows)
    x0, x1, y0, y1 = 65.0, 545.0, 25.0, 420.0
    width, height = 720, 480

    xs = sorted({x for _, pts in series for x, _ in pts})
    xmin, xmax = (xs[0], xs[-1]) if xs else (0.0, 1.0)
    span = xmax - xmin

    def sx(x: float) -> float:
        if span <= 0.0:
            return (x0 + x1) / 2.0
        return x0 + (x - xmin) / span * (x1 - x0)

    def sy(a: float) -> float:
        return y1 - a * (y1 - y0)

    out = []
    out.append('<?xml version="1.0" encoding="UTF-8"?>')
    out.append(f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
               f'width="{width}" height="{height}" '
               f'viewBox="0 0 {width} {height}">')
    out.append(f'<rect x="0" y="0" width="{width}" height="{height}" '
               f'fill="white"/>')
    out.append('<g font-family="sans-serif" font-size="11" fill="#222">')

    # frame and y grid
    out.append(f'<rect x="{x0:.2f}" y="{y0:.2f}" width="{x1 - x0:.2f}" '
               f'height="{y1 - y0:.2f}" fill="none" stroke="#444"/>')
    for j in range(6):
        a = j / 5.0
        yy = sy(a)
        if 0 < j < 5:
            out.append(f'<line x1="{x0:.2f}" y1="{yy:.2f}" x2="{x1:.2f}" '
                       f'y2="{yy:.2f}" stroke="#ddd"/>')
        out.append(f'<line x1="{x0 - 4:.2f}" y1="{yy:.2f}" x2="{x0:.2f}" '
                   f'y2="{yy:.2f}" stroke="#444"/>')
        out.append(f'<text x="{x0 - 8:.2f}" y="{yy + 4:.2f}" '
                   f'text-anchor="end">{a:.1f}</text>')

    # x ticks: every distinct noise when few, else 6 even steps
    ticks = xs if 0 < len(xs) <= 13 else \
        [xmin + span * j / 5.0 for j in range(6)]
    for x in ticks:
        xx = sx(x)
        out.append(f'<line x1="{xx:.2f}" y1="{y1:.2f}" x2="{xx:.2f}" '
                   f'y2="{y1 + 4:.2f}" stroke="#444"/>')
        out.append(f'<text x="{xx:.2f}" y="{y1 + 17:.2f}" '
                   f'text-anchor="middle">{x:.3g}</text>')

    out.append(f'<text x="{(x0 + x1) / 2:.2f}" y="{y1 + 36:.2f}" '
               f'text-anchor="middle" font-size="13">noise</text>')
    ymid = (y0 + y1) / 2.0
    out.append(f'<text x="16" y="{ymid:.2f}" text-anchor="middle" '
               f'font-size="13" transform="rotate(-90 16 {ymid:.2f})">'
               f'mean accuracy</text>')

    for idx, (label, pts) in enumerate(series):
        color = _PALETTE[idx % len(_PALETTE)]
        coords = " ".join(f"{sx(x):.2f},{sy(a):.2f}" for x, a in pts)
        out.append(f'<polyline fill="none" stroke="{color}" '
                   f'stroke-width="1.5" points="{coords}"/>')
        for x, a in pts:
            out.append(f'<circle cx="{sx(x):.2f}" cy="{sy(a):.2f}" r="2.5" '
                       f'fill="{color}"/>')
        ly = 40.0 + 18.0 * idx
        out.append(f'<line x1="555" y1="{ly - 4:.2f}" x2="583" '
                   f'y2="{ly - 4:.2f}" stroke="{color}" stroke-width="1.5"/>')
        out.append(f'<text x="588" y="{ly:.2f}">{_esc(label)}</text>')

    out.append("</g>")
    out.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(out) + "\n")
