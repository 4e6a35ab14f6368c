"""Row-wise argmin matching of a distance matrix.

Strict mode mirrors the recovery guarantee setting: any row whose
minimum is attained twice (exact float equality), or an assignment that
fails to be a bijection, yields an Error outcome rather than a guess.
Lenient mode always returns the smallest-index argmin per row and counts
ties; it is what experiment accuracy curves are computed from.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .distances import DistanceMatrix, distance_cyclic
from .models import Graph, relabel


@dataclass(frozen=True, eq=False)
class MatchResult:
    """Outcome of one matching pass.

    assignment is None exactly when error is set ("tie" or
    "not-a-permutation", strict mode only); witnesses lists the offending
    rows.  In lenient mode tie_count rows had a non-unique minimum and
    tied_rows names them (assignment still total, smallest index wins).
    """

    mode: str
    assignment: np.ndarray | None
    error: str | None = None
    witnesses: tuple[int, ...] = ()
    tie_count: int = 0

    @property
    def ok(self) -> bool:
        return self.assignment is not None


def _row_mins_and_ties(D: np.ndarray):
    mins = D.min(axis=1)
    tie_mask = (D == mins[:, None]).sum(axis=1) > 1
    return mins, tie_mask


def match_strict(d: DistanceMatrix) -> MatchResult:
    """Per-row unique argmin; Error on any tie or on a non-bijective
    assignment.  Both error outcomes are returned, not raised."""
    D = d.values
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise ValueError("distance matrix must be square")
    _, tie_mask = _row_mins_and_ties(D)
    if tie_mask.any():
        rows = tuple(int(i) for i in np.flatnonzero(tie_mask))
        return MatchResult("strict", None, "tie", rows, len(rows))
    assignment = D.argmin(axis=1)
    counts = np.bincount(assignment, minlength=D.shape[0])
    if counts.max(initial=0) > 1:
        bad = counts[assignment] > 1
        rows = tuple(int(i) for i in np.flatnonzero(bad))
        return MatchResult("strict", None, "not-a-permutation", rows, 0)
    return MatchResult("strict", assignment)


def match_lenient(d: DistanceMatrix) -> MatchResult:
    """Smallest-index argmin per row; never errors, ties reported."""
    D = d.values
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise ValueError("distance matrix must be square")
    _, tie_mask = _row_mins_and_ties(D)
    rows = tuple(int(i) for i in np.flatnonzero(tie_mask))
    return MatchResult("lenient", D.argmin(axis=1), None, rows, len(rows))


def accuracy(result: MatchResult, truth) -> float:
    """Fraction of rows mapped to their ground-truth target."""
    if result.assignment is None:
        raise ValueError(f"accuracy undefined: match failed with {result.error}")
    truth = np.asarray(truth, dtype=np.int64)
    if truth.shape != result.assignment.shape:
        raise ValueError("truth length mismatch")
    return float(np.mean(result.assignment == truth))


def oblivious_check(g: Graph, h: Graph, L: int, sigma) -> bool:
    """Relabeling h by sigma must permute each row's argmin SET of the
    cyclic-bin distance accordingly: every minimizer k of D(g,h) row i
    corresponds to minimizer sigma[k] of D(g, sigma(h)) row i, and
    nothing else.  Tie-broken assignments need not commute; the set-level
    identity is what is verified (exact float comparisons)."""
    sigma = np.asarray(sigma, dtype=np.int64)
    D1 = distance_cyclic(g, h, L).values
    D2 = distance_cyclic(g, relabel(h, sigma), L).values
    min1 = D1.min(axis=1)
    min2 = D2.min(axis=1)
    for i in range(g.n):
        set1 = sigma[np.flatnonzero(D1[i] == min1[i])]
        set2 = np.flatnonzero(D2[i] == min2[i])
        if not np.array_equal(np.sort(set1), set2):
            return False
    return True


def dump_match_csv(result: MatchResult, truth, path) -> None:
    """Per-row dump: i, pi_hat_i, truth_i, correct flag, tied flag.
    truth may be None (columns filled with -1 and 0)."""
    if result.assignment is None:
        raise ValueError("cannot dump an errored match")
    tied = set(result.witnesses)
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(["i", "pi_hat_i", "truth_i", "correct", "tied"])
        for i, k in enumerate(result.assignment):
            if truth is None:
                t, c = -1, 0
            else:
                t = int(truth[i])
                c = int(t == int(k))
            out.writerow([i, int(k), t, c, int(i in tied)])
