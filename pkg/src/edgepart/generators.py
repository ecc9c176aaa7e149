"""Small deterministic graph builders used by tests, sweeps and docs."""

from __future__ import annotations

import numpy as np

from .graph import Graph

__all__ = [
    "path_graph",
    "cycle_graph",
    "grid_graph",
    "star_graph",
    "complete_graph",
    "watts_strogatz",
    "random_connected_gnm",
    "disjoint_union",
]


def path_graph(n: int) -> Graph:
    if n < 2:
        raise ValueError("path needs at least 2 vertices")
    e = np.column_stack([np.arange(n - 1), np.arange(1, n)])
    return Graph(n, e)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    edges = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    return Graph.from_edges(edges, n=n)


def grid_graph(rows: int, cols: int) -> Graph:
    """rows x cols lattice; vertex (r, c) gets id r*cols + c."""
    if rows < 1 or cols < 1 or rows * cols < 2:
        raise ValueError("grid too small")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph.from_edges(edges, n=rows * cols)


def star_graph(leaves: int) -> Graph:
    """Center 0 joined to ``leaves`` outer vertices."""
    if leaves < 1:
        raise ValueError("star needs at least one leaf")
    return Graph.from_edges([(0, i) for i in range(1, leaves + 1)], n=leaves + 1)


def complete_graph(n: int) -> Graph:
    if n < 2:
        raise ValueError("complete graph needs at least 2 vertices")
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return Graph.from_edges(edges, n=n)


def watts_strogatz(n: int, k: int, beta: float, rng: np.random.Generator,
                   max_tries: int = 50) -> Graph:
    """Small-world ring lattice with ``k`` neighbors per vertex (k even) and
    rewiring probability ``beta``.  Retries until the result is connected."""
    if k % 2 or k < 2 or k >= n:
        raise ValueError("k must be even with 2 <= k < n")
    half = k // 2
    for _ in range(max_tries):
        edges: set[tuple[int, int]] = set()
        for j in range(1, half + 1):
            for i in range(n):
                w = (i + j) % n
                edges.add((min(i, w), max(i, w)))
        for j in range(1, half + 1):
            for i in range(n):
                if rng.random() >= beta:
                    continue
                old = (min(i, (i + j) % n), max(i, (i + j) % n))
                if old not in edges:
                    continue
                # keep endpoint i, move the other end somewhere fresh
                for _attempt in range(50):
                    w = int(rng.integers(n))
                    cand = (min(i, w), max(i, w))
                    if w != i and cand not in edges:
                        edges.remove(old)
                        edges.add(cand)
                        break
        g = Graph.from_edges(sorted(edges), n=n)
        if g.is_connected():
            return g
    raise RuntimeError("could not generate a connected small-world graph")


def random_connected_gnm(n: int, m: int, rng: np.random.Generator) -> Graph:
    """Uniform-ish random connected graph: random spanning tree plus random
    extra edges until ``m`` total.  Connected by construction."""
    if n < 2:
        raise ValueError("need at least 2 vertices")
    if m < n - 1 or m > n * (n - 1) // 2:
        raise ValueError("edge count incompatible with a connected simple graph")
    perm = rng.permutation(n)
    edges: set[tuple[int, int]] = set()
    for i in range(1, n):
        a = int(perm[i])
        b = int(perm[rng.integers(i)])
        edges.add((min(a, b), max(a, b)))
    while len(edges) < m:
        u = int(rng.integers(n))
        v = int(rng.integers(n))
        if u == v:
            continue
        edges.add((min(u, v), max(u, v)))
    return Graph.from_edges(sorted(edges), n=n)


def disjoint_union(graphs: list[Graph]) -> Graph:
    """Relabel and concatenate; component i keeps its internal structure at
    offset sum(n_j for j < i)."""
    if not graphs:
        raise ValueError("empty union")
    offset = 0
    parts = []
    for g in graphs:
        parts.append(g.endpoints + offset)
        offset += g.n
    return Graph(offset, np.vstack(parts))
