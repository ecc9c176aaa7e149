"""Edge partitionings and the cheap baseline partitioners.

An edge partitioning assigns every edge to exactly one of K parts.  A part's
vertex set is the union of its edges' endpoints, and a vertex living in more
than one part is a frontier vertex (it will be replicated by the runtime and
billed by the communication metric).
"""

from __future__ import annotations

from functools import cached_property
from pathlib import Path
from typing import IO, Iterable

import numpy as np

from .graph import Graph

__all__ = [
    "EdgePartitioning",
    "random_partition",
    "hash_partition",
    "naive_growth",
    "write_partitioning",
    "read_partitioning",
]


class EdgePartitioning:
    """Total assignment of edges to partitions ``0..k-1``."""

    def __init__(self, graph: Graph, assignment: np.ndarray, k: int) -> None:
        assignment = np.asarray(assignment, dtype=np.int64)
        if assignment.shape != (graph.m,):
            raise ValueError("assignment must cover every edge exactly once")
        if k < 1:
            raise ValueError("k must be positive")
        if graph.m and (assignment.min() < 0 or assignment.max() >= k):
            raise ValueError("partition id out of range")
        self.graph = graph
        self.k = int(k)
        self.assignment = assignment.copy()
        self.assignment.setflags(write=False)

    @cached_property
    def sizes(self) -> np.ndarray:
        """Edge count per partition."""
        return np.bincount(self.assignment, minlength=self.k)

    @cached_property
    def _vertex_part_pairs(self) -> tuple[np.ndarray, np.ndarray]:
        # distinct (vertex, partition) memberships, sorted
        g = self.graph
        verts = g.endpoints.ravel()
        parts = np.repeat(self.assignment, 2)
        keys = np.unique(verts * self.k + parts)
        return keys // self.k, keys % self.k

    @cached_property
    def multiplicity(self) -> np.ndarray:
        """Number of partitions each vertex belongs to (0 for isolated)."""
        verts, _ = self._vertex_part_pairs
        return np.bincount(verts, minlength=self.graph.n)

    def vertex_sets(self) -> list[np.ndarray]:
        verts, parts = self._vertex_part_pairs
        order = np.argsort(parts, kind="stable")
        bounds = np.searchsorted(parts[order], np.arange(self.k + 1))
        return [verts[order[bounds[i] : bounds[i + 1]]] for i in range(self.k)]

    def frontier_sets(self) -> list[np.ndarray]:
        """Per partition, its vertices that also appear in another partition."""
        mult = self.multiplicity
        return [vs[mult[vs] >= 2] for vs in self.vertex_sets()]

    def edge_ids(self, pid: int) -> np.ndarray:
        return np.nonzero(self.assignment == pid)[0]


# -- baselines -------------------------------------------------------------


def random_partition(g: Graph, k: int, rng: np.random.Generator) -> EdgePartitioning:
    """Each edge gets an independent uniform partition id."""
    if k < 1:
        raise ValueError("k must be positive")
    return EdgePartitioning(g, rng.integers(0, k, size=g.m), k)


_FNV_OFFSET = np.uint64(14695981039346656037)
_FNV_PRIME = np.uint64(1099511628211)


def _fnv1a_pairs(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """64-bit FNV-1a over the 16-byte message BE(u) || BE(v)."""
    h = np.full(u.shape, _FNV_OFFSET, dtype=np.uint64)
    mask = np.uint64(0xFF)
    for arr in (u.astype(np.uint64), v.astype(np.uint64)):
        for shift in range(56, -1, -8):
            byte = (arr >> np.uint64(shift)) & mask
            h = (h ^ byte) * _FNV_PRIME
    return h


def hash_partition(g: Graph, k: int) -> EdgePartitioning:
    """Deterministic seedless assignment: FNV-1a of the ordered endpoint
    pair, mod k.  Stable across runs and platforms."""
    if k < 1:
        raise ValueError("k must be positive")
    if g.m == 0:
        return EdgePartitioning(g, np.empty(0, dtype=np.int64), k)
    h = _fnv1a_pairs(g.endpoints[:, 0], g.endpoints[:, 1])
    return EdgePartitioning(g, (h % np.uint64(k)).astype(np.int64), k)


def naive_growth(g: Graph, k: int, rng: np.random.Generator,
                 seed_edges: np.ndarray | None = None) -> tuple[EdgePartitioning, int]:
    """Grow k regions outward from k distinct seed edges.

    Every round each partition claims all still-free edges sharing a vertex
    with its current region; simultaneous claims go to the lowest partition
    id.  Returns the partitioning and the number of growth rounds.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if k > g.m:
        raise ValueError("k exceeds edge count")
    if seed_edges is None:
        seed_edges = rng.choice(g.m, size=k, replace=False)
    seed_edges = np.asarray(seed_edges, dtype=np.int64)
    if seed_edges.shape != (k,) or np.unique(seed_edges).size != k:
        raise ValueError("need k distinct seed edges")

    owner = np.full(g.m, -1, dtype=np.int64)
    member = [np.zeros(g.n, dtype=bool) for _ in range(k)]
    new_verts: list[list[int]] = []
    for i, e in enumerate(seed_edges):
        owner[e] = i
        u, v = g.edge(int(e))
        member[i][u] = member[i][v] = True
        new_verts.append([u, v])

    inc_edge = g._inc_edge
    indptr = g._indptr
    rounds = 0
    while True:
        claims: dict[int, int] = {}
        for i in range(k):  # ascending id: first claim wins ties
            for v in new_verts[i]:
                for idx in range(indptr[v], indptr[v + 1]):
                    e = int(inc_edge[idx])
                    if owner[e] < 0 and e not in claims:
                        claims[e] = i
        if not claims:
            break
        rounds += 1
        nxt: list[list[int]] = [[] for _ in range(k)]
        for e, i in claims.items():
            owner[e] = i
            u, v = g.edge(e)
            if not member[i][u]:
                member[i][u] = True
                nxt[i].append(u)
            if not member[i][v]:
                member[i][v] = True
                nxt[i].append(v)
        new_verts = [sorted(lst) for lst in nxt]

    if (owner < 0).any():
        raise RuntimeError("free edges unreachable from every seed (graph disconnected?)")
    return EdgePartitioning(g, owner, k), rounds


# -- file format -------------------------------------------------------------


def write_partitioning(part: EdgePartitioning, target: IO[str] | str | Path) -> None:
    """One ``u v partition_id`` line per edge, in canonical edge order."""
    if isinstance(target, (str, Path)):
        with open(target, "w") as fh:
            write_partitioning(part, fh)
        return
    ends = part.graph.endpoints
    for e in range(part.graph.m):
        target.write(f"{ends[e, 0]} {ends[e, 1]} {part.assignment[e]}\n")


def read_partitioning(g: Graph, source: IO[str] | str | Path | Iterable[str],
                      k: int | None = None) -> EdgePartitioning:
    """Parse a partitioning file back against ``g``.

    Every edge of ``g`` must appear exactly once; unknown edges or gaps are
    errors.  ``k`` defaults to ``max id + 1``.
    """
    if isinstance(source, (str, Path)):
        with open(source) as fh:
            return read_partitioning(g, fh, k)
    keys = g.endpoints[:, 0] * g.n + g.endpoints[:, 1]
    assignment = np.full(g.m, -1, dtype=np.int64)
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'u v partition_id'")
        try:
            a, b, pid = int(parts[0]), int(parts[1]), int(parts[2])
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer field") from None
        u, v = min(a, b), max(a, b)
        if u < 0 or v >= g.n or u == v:
            raise ValueError(f"line {lineno}: edge ({a}, {b}) not in graph")
        e = int(np.searchsorted(keys, u * g.n + v))
        if e >= g.m or keys[e] != u * g.n + v:
            raise ValueError(f"line {lineno}: edge ({a}, {b}) not in graph")
        if assignment[e] >= 0:
            raise ValueError(f"line {lineno}: edge ({a}, {b}) assigned twice")
        if pid < 0:
            raise ValueError(f"line {lineno}: negative partition id")
        assignment[e] = pid
    if (assignment < 0).any():
        missing = int((assignment < 0).sum())
        raise ValueError(f"partitioning incomplete: {missing} edges unassigned")
    if k is None:
        k = int(assignment.max()) + 1
    return EdgePartitioning(g, assignment, k)
