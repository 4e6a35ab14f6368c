"""Edge-list ingestion and real-network preprocessing.

Reads whitespace edge lists ('#' comments), restricts to a bounded id
range, symmetrizes, and supports the snapshot-alignment recipe: intersect
vertex sets across graphs, keep the k of largest degree, induce.

Graphs produced here carry their original external ids in Graph.ids so
that separately ingested snapshots stay alignable.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

from .models import Graph


@dataclass(frozen=True)
class EdgeList:
    """Raw parse result; duplicates and both directions retained."""

    raw_edges: tuple = field(default_factory=tuple)
    directed: bool = True


def parse_edge_list(stream) -> EdgeList:
    """Parse "u v" lines; '#' lines are comments, blank lines ignored.

    Accepts a file-like object, an iterable of lines, or a single string.
    Malformed lines raise ValueError with their 1-based line number.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    edges = []
    for lineno, line in enumerate(stream, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer id in {line!r}") from None
        if u < 0 or v < 0:
            raise ValueError(f"line {lineno}: negative id in {line!r}")
        edges.append((u, v))
    return EdgeList(tuple(edges))


def symmetrize_and_restrict(e: EdgeList, max_id: int) -> Graph:
    """Keep edges with both endpoints < max_id, drop direction and
    self-loops, deduplicate, and remap the surviving distinct ids to
    0..n-1 by ascending original id (kept in Graph.ids)."""
    if max_id <= 0:
        raise ValueError("max_id must be positive")
    arr = np.asarray(e.raw_edges, dtype=np.int64).reshape(-1, 2)
    arr = arr[(arr[:, 0] < max_id) & (arr[:, 1] < max_id)]
    arr = arr[arr[:, 0] != arr[:, 1]]
    arr = np.unique(np.sort(arr, axis=1), axis=0)
    ids = np.unique(arr)
    remapped = np.searchsorted(ids, arr)
    return Graph(ids.size, remapped, ids=ids)


def common_topk_by_degree(graphs: list[Graph], k: int) -> np.ndarray:
    """Original ids present in every graph, ranked by degree in the FIRST
    graph (ties by ascending id), top k, returned sorted by id."""
    common = None
    for g in graphs:
        gids = g.ids if g.ids is not None else np.arange(g.n)
        common = gids if common is None else np.intersect1d(common, gids)
    if common is None:
        raise ValueError("need at least one graph")
    if k > common.size:
        raise ValueError(f"k={k} exceeds intersection size {common.size}")
    first = graphs[0]
    fids = first.ids if first.ids is not None else np.arange(first.n)
    if np.any(np.diff(fids) <= 0):
        raise ValueError("graph ids must be strictly ascending")
    local = np.searchsorted(fids, common)
    degs = first.degrees[local]
    order = np.lexsort((common, -degs))  # degree desc, id asc
    return np.sort(common[order[:k]])


def vertices_by_id(g: Graph, id_set) -> np.ndarray:
    """Local indices of g whose original id lies in id_set, ascending."""
    gids = g.ids if g.ids is not None else np.arange(g.n)
    return np.flatnonzero(np.isin(gids, np.asarray(list(id_set), dtype=np.int64)))


def induced_subgraph(g: Graph, vertices) -> Graph:
    """Subgraph on the given local vertex indices, remapped to 0..k-1 in
    ascending order of the old index; original ids carried over."""
    keep = np.unique(np.asarray(list(vertices), dtype=np.int64))
    if keep.size and (keep.min() < 0 or keep.max() >= g.n):
        raise ValueError("vertex index out of range")
    mask = np.zeros(g.n, dtype=bool)
    mask[keep] = True
    sel = mask[g.edges[:, 0]] & mask[g.edges[:, 1]]
    remap = np.searchsorted(keep, g.edges[sel])
    old_ids = g.ids if g.ids is not None else np.arange(g.n)
    return Graph(keep.size, remap, ids=old_ids[keep])


# ---------------------------------------------------------------------------
# serialization (round-trips isolated vertices via the header)


def save_graph(g: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(f"# n={g.n} m={g.m}\n")
        for u, v in g.edges:
            fh.write(f"{u} {v}\n")


def load_graph(path) -> Graph:
    with open(path) as fh:
        header = fh.readline()
        if not header.startswith("# n="):
            raise ValueError(f"{path}: missing '# n=<n> m=<m>' header")
        try:
            fields = dict(part.split("=") for part in header[2:].split())
            n, m = int(fields["n"]), int(fields["m"])
        except (ValueError, KeyError) as exc:
            raise ValueError(f"{path}: malformed header {header!r}") from exc
        edges = parse_edge_list(fh).raw_edges
    if len(edges) != m:
        raise ValueError(f"{path}: header claims m={m}, found {len(edges)} edges")
    return Graph(n, np.asarray(edges, dtype=np.int64).reshape(-1, 2))
