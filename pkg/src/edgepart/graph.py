"""Undirected simple graphs with canonical edge identities.

Vertices are dense integers ``0..n-1``.  Edges are stored as ordered pairs
``(u, v)`` with ``u < v``, sorted ascending, so the position of a pair in the
endpoint table doubles as a stable edge id.  Everything downstream (the
partitioners, the runtime, the metrics) keys off those ids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Iterator

import numpy as np

__all__ = [
    "Graph",
    "GraphStats",
    "EdgeListParseError",
    "EmptyGraphError",
    "DisconnectedGraphError",
    "load_edge_list",
    "stats",
    "EXACT_DIAMETER_VERTEX_LIMIT",
]

# All-sources BFS gets expensive past this many vertices; above it stats()
# falls back to a double-sweep lower bound unless exactness is forced.
EXACT_DIAMETER_VERTEX_LIMIT = 50_000


class EdgeListParseError(ValueError):
    """Malformed edge-list input.  ``line_number`` is 1-based."""

    def __init__(self, message: str, line_number: int) -> None:
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class EmptyGraphError(ValueError):
    """No usable edge remains after cleaning an input file."""


class DisconnectedGraphError(ValueError):
    """The operation needs a connected graph and got a disconnected one."""


def _expand_ranges(starts: np.ndarray, counts: np.ndarray) -> np.ndarray:
    """Concatenate the index ranges ``[s, s+c)`` for each (start, count) pair."""
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64)
    shift = np.concatenate(([0], np.cumsum(counts)[:-1]))
    return np.repeat(starts - shift, counts) + np.arange(total, dtype=np.int64)


class Graph:
    """Immutable undirected simple graph.

    Parameters
    ----------
    n:
        Number of vertices.  Vertex ids are exactly ``0..n-1``; isolated
        vertices are allowed in direct constructions (never produced by
        :func:`load_edge_list`, which keeps one connected component).
    endpoints:
        ``(m, 2)`` integer array, each row ``(u, v)`` with ``u < v``, rows
        strictly ascending.  Use :meth:`from_edges` if the input still needs
        normalising.
    """

    def __init__(self, n: int, endpoints: np.ndarray) -> None:
        endpoints = np.asarray(endpoints, dtype=np.int64).reshape(-1, 2)
        n = int(n)
        if n < 1:
            raise ValueError("graph needs at least one vertex")
        m = endpoints.shape[0]
        if m:
            u, v = endpoints[:, 0], endpoints[:, 1]
            if u.min() < 0 or v.max() >= n:
                raise ValueError("endpoint out of range")
            if not (u < v).all():
                raise ValueError("endpoints must satisfy u < v (no self-loops)")
            keys = u * n + v
            if not (np.diff(keys) > 0).all():
                raise ValueError("edges must be sorted ascending and unique")
        self.n = n
        self.m = m
        self.endpoints = endpoints
        self.endpoints.setflags(write=False)

        deg = np.bincount(endpoints.ravel(), minlength=n)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(deg, out=indptr[1:])
        flat_vertex = endpoints.ravel()
        flat_other = endpoints[:, ::-1].ravel()
        flat_edge = np.repeat(np.arange(m, dtype=np.int64), 2)
        order = np.lexsort((flat_edge, flat_vertex))
        self._indptr = indptr
        self._inc_vertex = flat_vertex[order]
        self._inc_edge = flat_edge[order]
        self._inc_nbr = flat_other[order]
        for arr in (self._indptr, self._inc_vertex, self._inc_edge, self._inc_nbr):
            arr.setflags(write=False)

    # -- construction ----------------------------------------------------

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], n: int | None = None) -> "Graph":
        """Build a graph from unordered edge pairs.

        Pairs are reoriented to ``u < v`` and sorted.  Self-loops and
        duplicate edges raise ``ValueError`` (direct constructions are meant
        to be clean; file ingestion goes through :func:`load_edge_list`).
        """
        arr = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if arr.shape[0]:
            if (arr[:, 0] == arr[:, 1]).any():
                raise ValueError("self-loop in edge list")
            lo = arr.min(axis=1)
            hi = arr.max(axis=1)
            arr = np.column_stack([lo, hi])
            order = np.lexsort((arr[:, 1], arr[:, 0]))
            arr = arr[order]
            nmax = int(arr[:, 1].max()) + 1
        else:
            nmax = 1
        if n is None:
            n = nmax
        if arr.shape[0]:
            keys = arr[:, 0] * n + arr[:, 1]
            if (np.diff(keys) == 0).any():
                raise ValueError("duplicate edge in edge list")
        return cls(n, arr)

    # -- basic accessors -------------------------------------------------

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self._indptr)

    def degree(self, v: int) -> int:
        return int(self._indptr[v + 1] - self._indptr[v])

    def incident_edges(self, v: int) -> np.ndarray:
        """Edge ids incident to ``v``, ascending."""
        return self._inc_edge[self._indptr[v] : self._indptr[v + 1]]

    def neighbors(self, v: int) -> np.ndarray:
        """Neighbor of ``v`` along each incident edge, aligned with
        :meth:`incident_edges` (hence ordered by edge id, not neighbor id)."""
        return self._inc_nbr[self._indptr[v] : self._indptr[v + 1]]

    def edge(self, e: int) -> tuple[int, int]:
        u, v = self.endpoints[e]
        return int(u), int(v)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, v in self.endpoints:
            yield int(u), int(v)

    def __repr__(self) -> str:  # pragma: no cover - debugging nicety
        return f"Graph(n={self.n}, m={self.m})"

    # -- traversal -------------------------------------------------------

    def bfs_distances(self, source: int) -> np.ndarray:
        """Hop distance from ``source`` to every vertex; -1 if unreachable."""
        dist = np.full(self.n, -1, dtype=np.int64)
        dist[source] = 0
        frontier = np.array([source], dtype=np.int64)
        d = 0
        while frontier.size:
            starts = self._indptr[frontier]
            counts = self._indptr[frontier + 1] - starts
            nbrs = self._inc_nbr[_expand_ranges(starts, counts)]
            fresh = nbrs[dist[nbrs] < 0]
            if fresh.size == 0:
                break
            frontier = np.unique(fresh)
            d += 1
            dist[frontier] = d
        return dist

    def eccentricity(self, source: int) -> int:
        dist = self.bfs_distances(source)
        if (dist < 0).any():
            raise DisconnectedGraphError("eccentricity undefined on disconnected graph")
        return int(dist.max())

    def connected_component_labels(self) -> np.ndarray:
        """Component label per vertex; labels numbered by discovery from the
        lowest-id unvisited vertex, so label 0 contains vertex 0."""
        labels = np.full(self.n, -1, dtype=np.int64)
        current = 0
        for seed in range(self.n):
            if labels[seed] >= 0:
                continue
            dist = self.bfs_distances(seed)
            labels[dist >= 0] = current
            current += 1
        return labels

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        return bool((self.bfs_distances(0) >= 0).all())

    # -- serialization ---------------------------------------------------

    def to_edge_list(self, target: IO[str] | str | Path) -> None:
        """Write one ``u v`` line per edge, ascending ``(u, v)`` order."""
        if isinstance(target, (str, Path)):
            with open(target, "w") as fh:
                self.to_edge_list(fh)
            return
        for u, v in self.endpoints:
            target.write(f"{u} {v}\n")


# -- ingestion -----------------------------------------------------------


def _parse_pairs(lines: Iterable[str]) -> list[tuple[int, int]]:
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(f"expected two fields, got {len(parts)}", lineno)
        try:
            u = int(parts[0])
            v = int(parts[1])
        except ValueError:
            raise EdgeListParseError(f"non-integer vertex id in {line!r}", lineno) from None
        if u < 0 or v < 0:
            raise EdgeListParseError("negative vertex id", lineno)
        pairs.append((u, v))
    return pairs


def load_edge_list(source: str | Path | IO[str] | Iterable[str]) -> tuple[Graph, np.ndarray]:
    """Read a whitespace edge list ('#' lines are comments) and clean it.

    Cleaning: directed duplicates and repeats collapse to one undirected
    edge, self-loops are dropped, and only the largest connected component
    survives (ties go to the component holding the smallest original id).
    Vertex ids are then remapped to ``0..n-1`` in ascending original order.

    Returns the graph plus an array mapping each new id to its original id.
    """
    if isinstance(source, (str, Path)):
        with open(source) as fh:
            return load_edge_list(fh)
    pairs = _parse_pairs(source)
    raw = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    if raw.shape[0]:
        raw = raw[raw[:, 0] != raw[:, 1]]  # self-loops dropped
    if raw.shape[0] == 0:
        raise EmptyGraphError("no usable edges after cleaning")
    lo = raw.min(axis=1)
    hi = raw.max(axis=1)
    undirected = np.unique(np.column_stack([lo, hi]), axis=0)

    original_ids = np.unique(undirected.ravel())
    remapped = np.searchsorted(original_ids, undirected)
    whole = Graph(original_ids.size, remapped)
    labels = whole.connected_component_labels()
    sizes = np.bincount(labels)
    # smallest original id inside each component; original_ids is ascending,
    # so the component of the lowest vertex index holds the lowest original id
    min_orig = np.full(sizes.size, np.iinfo(np.int64).max, dtype=np.int64)
    np.minimum.at(min_orig, labels, original_ids)
    best = int(np.lexsort((min_orig, -sizes))[0])

    keep_vertex = labels == best
    kept_ids = original_ids[keep_vertex]
    edge_mask = keep_vertex[remapped[:, 0]]
    kept_edges = np.searchsorted(kept_ids, undirected[edge_mask])
    return Graph(kept_ids.size, kept_edges), kept_ids


# -- statistics ----------------------------------------------------------


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    diameter: int
    diameter_exact: bool
    cc_avg: float
    cc_global: float
    triangles: int

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "diameter": self.diameter,
            "diameter_exact": self.diameter_exact,
            "cc_avg": self.cc_avg,
            "cc_global": self.cc_global,
            "triangles": self.triangles,
        }


def _triangle_accumulator(g: Graph) -> tuple[int, np.ndarray]:
    """Total triangle count plus, per vertex, three times the number of
    triangles through it (once per triangle edge: twice as an endpoint, once
    as the common neighbor)."""
    neigh = [set() for _ in range(g.n)]
    for u, v in g.endpoints:
        neigh[u].add(int(v))
        neigh[v].add(int(u))
    acc = np.zeros(g.n, dtype=np.int64)
    total3 = 0  # sum over edges of common-neighbor counts == 3 * triangles
    for u, v in g.endpoints:
        a, b = neigh[u], neigh[v]
        if len(a) > len(b):
            a, b = b, a
        c = 0
        for w in a:
            if w in b:
                c += 1
                acc[w] += 1
        acc[u] += c
        acc[v] += c
        total3 += c
    return total3 // 3, acc


def _double_sweep_lower_bound(g: Graph) -> int:
    start = int(np.argmax(g.degrees))
    d0 = g.bfs_distances(start)
    best = int(d0.max())
    far = int(np.argmax(d0))
    d1 = g.bfs_distances(far)
    best = max(best, int(d1.max()))
    d2 = g.bfs_distances(int(np.argmax(d1)))
    return max(best, int(d2.max()))


def stats(g: Graph, exact_diameter: bool | None = None) -> GraphStats:
    """Structural summary of a connected graph.

    ``exact_diameter=None`` picks exact all-sources BFS when
    ``n <= EXACT_DIAMETER_VERTEX_LIMIT`` and the double-sweep lower bound
    (flagged by ``diameter_exact=False``) otherwise.  Pass True/False to
    force either route.
    """
    if not g.is_connected():
        raise DisconnectedGraphError("stats requires a connected graph")
    if exact_diameter is None:
        exact_diameter = g.n <= EXACT_DIAMETER_VERTEX_LIMIT
    if g.n == 1:
        diameter = 0
    elif exact_diameter:
        diameter = 0
        for v in range(g.n):
            diameter = max(diameter, int(g.bfs_distances(v).max()))
    else:
        diameter = _double_sweep_lower_bound(g)

    triangles, acc = _triangle_accumulator(g)
    deg = g.degrees.astype(np.float64)
    wedges = deg * (deg - 1.0) / 2.0
    with np.errstate(invalid="ignore", divide="ignore"):
        local = np.where(wedges > 0, (acc / 3.0) / wedges, 0.0)
    cc_avg = float(local.mean()) if g.n else 0.0
    wedge_total = float(wedges.sum())
    cc_global = float(3.0 * triangles / wedge_total) if wedge_total > 0 else 0.0
    if math.isnan(cc_avg):
        cc_avg = 0.0
    return GraphStats(
        n=g.n,
        m=g.m,
        diameter=diameter,
        diameter_exact=bool(exact_diameter),
        cc_avg=cc_avg,
        cc_global=cc_global,
        triangles=int(triangles),
    )
