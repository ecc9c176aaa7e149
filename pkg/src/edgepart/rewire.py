"""Degree-preserving double-edge-swap rewiring.

Swapping (a,b),(c,d) -> (a,d),(c,b) keeps every degree fixed while shuffling
long-range structure, which is how the diameter sweep builds graph families
that differ (mostly) only in diameter.  Each swap must keep the graph simple
and connected and must not push the triangle count outside the allowed drift
from the original.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .graph import Graph

__all__ = ["RewireResult", "rewire"]

# Attempts allowed per requested swap before giving up on the whole run.
RETRY_CAP = 100


@dataclass(frozen=True)
class RewireResult:
    graph: Graph
    swaps_applied: int
    triangles_before: int
    triangles_after: int


def _triangle_count(adj: list[set[int]], endpoints: list[tuple[int, int]]) -> int:
    total = 0
    for u, v in endpoints:
        a, b = adj[u], adj[v]
        if len(a) > len(b):
            a, b = b, a
        total += sum(1 for w in a if w in b)
    return total // 3


def _connected_between(adj: list[set[int]], src: int, dst: int, n: int) -> bool:
    """Early-exit BFS reachability check."""
    if src == dst:
        return True
    seen = bytearray(n)
    seen[src] = 1
    queue = deque([src])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y == dst:
                return True
            if not seen[y]:
                seen[y] = 1
                queue.append(y)
    return False


def rewire(g: Graph, swap_budget: int, triangle_tolerance: float = 1.0,
           rng: np.random.Generator | None = None) -> RewireResult:
    """Apply up to ``swap_budget`` valid double-edge swaps.

    ``triangle_tolerance`` bounds the relative triangle drift: the running
    count must stay within ``tolerance * max(original, 1)`` of the original.
    Swaps breaking simplicity, connectivity or the triangle budget are
    rejected and retried (fresh random picks), at most ``RETRY_CAP`` tries
    per swap; exhausting the retries ends the run early with however many
    swaps were applied.
    """
    if swap_budget < 0:
        raise ValueError("swap budget must be non-negative")
    if not 0.0 <= triangle_tolerance <= 1.0:
        raise ValueError("triangle tolerance must lie in [0, 1]")
    if rng is None:
        rng = np.random.default_rng()
    if not g.is_connected():
        raise ValueError("rewire requires a connected graph")

    edges: list[tuple[int, int]] = [g.edge(e) for e in range(g.m)]
    adj: list[set[int]] = [set() for _ in range(g.n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)

    tri_orig = _triangle_count(adj, edges)
    tri_budget = triangle_tolerance * max(tri_orig, 1)
    tri_cur = tri_orig

    def common(u: int, v: int) -> int:
        a, b = adj[u], adj[v]
        if len(a) > len(b):
            a, b = b, a
        return sum(1 for w in a if w in b)

    applied = 0
    if g.m >= 2:
        for _ in range(swap_budget):
            done = False
            for _try in range(RETRY_CAP):
                i = int(rng.integers(g.m))
                j = int(rng.integers(g.m))
                if i == j:
                    continue
                a, b = edges[i]
                c, d = edges[j]
                if rng.integers(2):
                    c, d = d, c
                if len({a, b, c, d}) < 4:
                    continue
                if d in adj[a] or b in adj[c]:
                    continue
                # stepwise triangle delta on the evolving structure
                delta = -common(a, b)
                adj[a].discard(b)
                adj[b].discard(a)
                delta -= common(c, d)
                adj[c].discard(d)
                adj[d].discard(c)
                delta += common(a, d)
                adj[a].add(d)
                adj[d].add(a)
                delta += common(c, b)
                adj[c].add(b)
                adj[b].add(c)

                ok = abs(tri_cur + delta - tri_orig) <= tri_budget
                if ok:
                    # removing (a,b) and (c,d) can only cut a-b or c-d apart
                    ok = _connected_between(adj, a, b, g.n) and _connected_between(adj, c, d, g.n)
                if ok:
                    tri_cur += delta
                    edges[i] = (min(a, d), max(a, d))
                    edges[j] = (min(c, b), max(c, b))
                    applied += 1
                    done = True
                    break
                # roll back
                adj[c].discard(b)
                adj[b].discard(c)
                adj[a].discard(d)
                adj[d].discard(a)
                adj[c].add(d)
                adj[d].add(c)
                adj[a].add(b)
                adj[b].add(a)
            if not done:
                break

    out = Graph.from_edges(edges, n=g.n)
    return RewireResult(graph=out, swaps_applied=applied,
                        triangles_before=tri_orig, triangles_after=tri_cur)
