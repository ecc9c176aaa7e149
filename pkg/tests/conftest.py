"""Shared fixtures and independent reference implementations.

The oracles here are deliberately written in plain Python (dict adjacency,
collections.deque, no numpy) so they share no code paths with the package.
"""

from __future__ import annotations

import math
from collections import deque

import numpy as np
import pytest
from hypothesis import strategies as st

from edgepart import Graph, random_connected_gnm


# ---------------------------------------------------------------------------
# reference implementations


def adjacency(edges, n):
    """Dict-of-sorted-lists adjacency from an (u, v) edge iterable."""
    adj = {v: [] for v in range(n)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    for v in adj:
        adj[v].sort()
    return adj


def bfs_oracle(adj, source):
    """Unweighted distances from source; unreachable vertices stay at inf."""
    dist = {v: math.inf for v in adj}
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if dist[w] == math.inf:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist

def eccentricity_oracle(adj, source):
    dist = bfs_oracle(adj, source)
    return max(d for d in dist.values() if d != math.inf)


def diameter_oracle(adj):
    return max(eccentricity_oracle(adj, v) for v in adj)


class UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def component_labels_oracle(edges, n):
    """Map vertex -> component representative (min vertex id in component)."""
    uf = UnionFind(n)
    for u, v in edges:
        uf.union(u, v)
    return {v: uf.find(v) for v in range(n)}


def triangle_count_oracle(edges, n):
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    count = 0
    for u, v in edges:
        count += len(adj[u] & adj[v])
    return count // 3


def rank(values):
    """Average ranks (1-based), ties averaged."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        avg = (i + j) / 2 + 1
        for t in range(i, j + 1):
            ranks[order[t]] = avg
        i = j + 1
    return ranks


def spearman(xs, ys):
    rx, ry = rank(xs), rank(ys)
    mx = sum(rx) / len(rx)
    my = sum(ry) / len(ry)
    num = sum((a - mx) * (b - my) for a, b in zip(rx, ry))
    den = math.sqrt(sum((a - mx) ** 2 for a in rx) * sum((b - my) ** 2 for b in ry))
    return num / den


# ---------------------------------------------------------------------------
# strategies and fixtures


@st.composite
def small_connected_graphs(draw, max_n=40):
    n = draw(st.integers(min_value=2, max_value=max_n))
    extra = draw(st.integers(min_value=0, max_value=3 * n))
    m = min(n - 1 + extra, n * (n - 1) // 2)
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    return random_connected_gnm(n, m, np.random.default_rng(seed))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def graph_edges(g: Graph):
    return [tuple(int(x) for x in row) for row in g.endpoints]
