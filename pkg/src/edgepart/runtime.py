"""Round-synchronous computation over the pieces of an edge partitioning.

Each partition becomes a :class:`PartitionView`: the local subgraph induced
by its edges, with vertices shared with other partitions flagged as
frontier.  A macro-round runs the algorithm's local phase independently in
every view, then reconciles each frontier vertex by merging its replica
states (the merge must be commutative, associative and idempotent) and
writing the merged value back to every replica.  The engine stops at the
first macro-round whose reconciliation changes nothing: local phases are
required to drive their view to an internal fixpoint, so an unchanged view
would recompute to the same states and the whole system is stable.

Views whose replicas were untouched by the previous reconciliation are
skipped in the next local phase; by the fixpoint requirement above this is
a pure optimization and never changes results.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Sequence

import numpy as np

from .graph import Graph
from .partition import EdgePartitioning

__all__ = [
    "PartitionView",
    "AlgorithmSpec",
    "RunReport",
    "NonConvergenceError",
    "build_views",
    "run_views",
    "sssp",
    "connected_components",
    "baseline_sssp_supersteps",
    "dump_states",
]


@dataclass
class PartitionView:
    """Local subgraph owned by one partition.

    ``vertices`` holds the global ids (ascending); everything else is in
    local index space.  ``frontier[i]`` is True when ``vertices[i]`` also
    lives in some other partition.
    """

    pid: int
    vertices: np.ndarray
    edges: np.ndarray
    endpoints_local: np.ndarray
    indptr: np.ndarray
    neighbors: np.ndarray
    frontier: np.ndarray

    @property
    def n_local(self) -> int:
        return int(self.vertices.size)

    @property
    def m_local(self) -> int:
        return int(self.edges.size)

    @cached_property
    def _adjacency_lists(self) -> tuple[list[int], list[int], list[int]]:
        # plain-int copies; the per-round priority-queue loops live on these
        return self.indptr.tolist(), self.neighbors.tolist(), self.vertices.tolist()


@dataclass(frozen=True)
class AlgorithmSpec:
    """Hooks for the round engine.

    ``init(view)`` returns the list of per-local-vertex states.
    ``local_computation(view, states)`` updates states in place to a local
    fixpoint and reports whether anything moved.
    ``aggregation(replica_states)`` merges the states of one frontier vertex.
    """

    init: Callable[[PartitionView], list]
    local_computation: Callable[[PartitionView, list], bool]
    aggregation: Callable[[Sequence[Any]], Any]


@dataclass
class RunReport:
    rounds: int
    converged: bool
    changed_per_round: list[int] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "rounds": self.rounds,
            "converged": self.converged,
            "changed_per_round": list(self.changed_per_round),
        }


class NonConvergenceError(RuntimeError):
    """Round cap hit before reconciliation went quiet."""

    def __init__(self, message: str, states: dict, report: RunReport) -> None:
        super().__init__(message)
        self.states = states
        self.report = report


def build_views(g: Graph, part: EdgePartitioning) -> list[PartitionView]:
    """One view per partition (empty partitions give empty views)."""
    if part.graph is not g:
        # allow equal graphs loaded twice; only the structure matters
        if part.graph.n != g.n or part.graph.m != g.m or \
                not np.array_equal(part.graph.endpoints, g.endpoints):
            raise ValueError("partitioning does not belong to this graph")
    mult = part.multiplicity
    order = np.argsort(part.assignment, kind="stable")
    bounds = np.searchsorted(part.assignment[order], np.arange(part.k + 1))
    views = []
    for i in range(part.k):
        eids = order[bounds[i] : bounds[i + 1]]
        ends = g.endpoints[eids]
        verts = np.unique(ends)
        local = np.searchsorted(verts, ends)
        nv = verts.size
        src = np.concatenate([local[:, 0], local[:, 1]])
        dst = np.concatenate([local[:, 1], local[:, 0]])
        o2 = np.argsort(src, kind="stable")
        indptr = np.searchsorted(src[o2], np.arange(nv + 1))
        views.append(PartitionView(
            pid=i,
            vertices=verts,
            edges=eids,
            endpoints_local=local,
            indptr=indptr,
            neighbors=dst[o2],
            frontier=mult[verts] >= 2,
        ))
    return views


def run_views(views: list[PartitionView], alg: AlgorithmSpec,
              round_cap: int | None = None) -> tuple[dict[int, Any], RunReport]:
    """Drive macro-rounds to quiescence.

    Returns the merged final state per global vertex and a report whose
    ``changed_per_round`` counts replica states rewritten by each round's
    reconciliation (the last entry is 0 when converged).
    """
    states: list[list] = [alg.init(v) if v.n_local else [] for v in views]

    replicas: dict[int, list[tuple[int, int]]] = {}
    for vi, view in enumerate(views):
        for li in np.nonzero(view.frontier)[0]:
            replicas.setdefault(int(view.vertices[li]), []).append((vi, int(li)))
    registry = sorted(replicas.items())

    if round_cap is None:
        top = max((int(v.vertices[-1]) for v in views if v.n_local), default=0)
        round_cap = 2 * (top + 1) + 16

    dirty = [True] * len(views)
    changed_per_round: list[int] = []
    converged = False
    rounds = 0
    for rnd in range(1, round_cap + 1):
        rounds = rnd
        for vi, view in enumerate(views):
            if dirty[vi] and view.n_local:
                alg.local_computation(view, states[vi])
            dirty[vi] = False
        changed = 0
        for gv, locs in registry:
            merged = alg.aggregation([states[vi][li] for vi, li in locs])
            for vi, li in locs:
                if states[vi][li] != merged:
                    states[vi][li] = merged
                    changed += 1
                    dirty[vi] = True
        changed_per_round.append(changed)
        if changed == 0:
            converged = True
            break

    final: dict[int, Any] = {}
    for vi, view in enumerate(views):
        verts = view.vertices.tolist()
        row = states[vi]
        for li, gv in enumerate(verts):
            final[gv] = row[li]
    report = RunReport(rounds=rounds, converged=converged,
                       changed_per_round=changed_per_round)
    if not converged:
        raise NonConvergenceError(
            f"no quiescence within {round_cap} macro-rounds", final, report)
    return final, report


# -- shipped algorithms ------------------------------------------------------


def sssp(views: list[PartitionView], source: int,
         round_cap: int | None = None) -> tuple[dict[int, Any], RunReport]:
    """Unit-weight single-source shortest paths over the views.

    Local phase is Dijkstra seeded with the current replica values (queue
    keyed by distance, global vertex id breaking ties); reconciliation takes
    the minimum over replicas.  Distances are exact for any partitioning of
    a graph containing ``source``.
    """

    def init(view: PartitionView) -> list:
        return [0 if gv == source else math.inf for gv in view.vertices.tolist()]

    def local(view: PartitionView, dist: list) -> bool:
        indptr, nbrs, gids = view._adjacency_lists
        heap = [(dist[i], gids[i], i) for i in range(len(dist))]
        heapq.heapify(heap)
        changed = False
        while heap:
            d, _, i = heapq.heappop(heap)
            if d == math.inf:
                break  # nothing reachable remains
            if d > dist[i]:
                continue  # stale queue entry
            nd = d + 1
            for j in nbrs[indptr[i] : indptr[i + 1]]:
                if dist[j] > nd:
                    dist[j] = nd
                    changed = True
                    heapq.heappush(heap, (nd, gids[j], j))
        return changed

    return run_views(views, AlgorithmSpec(init, local, min), round_cap=round_cap)


def connected_components(views: list[PartitionView], rng: np.random.Generator,
                         round_cap: int | None = None) -> tuple[dict[int, Any], RunReport]:
    """Minimum-label flooding of per-vertex ids.

    Every global vertex draws a random 64-bit key; its id is the pair
    ``(key, vertex)``, which is unique even on key collisions.  The final id
    of each vertex is the minimum initial id in its component, so two
    vertices end with equal ids iff they are connected in the underlying
    graph, regardless of the partitioning.
    """
    top = max((int(v.vertices[-1]) for v in views if v.n_local), default=-1)
    keys = rng.integers(0, np.iinfo(np.int64).max, size=top + 1)

    def init(view: PartitionView) -> list:
        return [(int(keys[gv]), gv) for gv in view.vertices.tolist()]

    def local(view: PartitionView, ids: list) -> bool:
        indptr, nbrs, _gids = view._adjacency_lists
        heap = [(ids[i], i) for i in range(len(ids))]
        heapq.heapify(heap)
        changed = False
        while heap:
            label, i = heapq.heappop(heap)
            if label > ids[i]:
                continue
            for j in nbrs[indptr[i] : indptr[i + 1]]:
                if ids[j] > label:
                    ids[j] = label
                    changed = True
                    heapq.heappush(heap, (label, j))
        return changed

    return run_views(views, AlgorithmSpec(init, local, min), round_cap=round_cap)


def baseline_sssp_supersteps(g: Graph, source: int) -> int:
    """Supersteps a one-hop-per-round vertex-centric SSSP needs on ``g``.

    Counts synchronous relaxation sweeps until no distance changes, which
    equals the eccentricity of ``source`` on a connected graph.  This is the
    R_base denominator of the gain metric.
    """
    dist = np.full(g.n, np.inf)
    dist[source] = 0.0
    u = g.endpoints[:, 0]
    v = g.endpoints[:, 1]
    steps = 0
    while True:
        nd = dist.copy()
        np.minimum.at(nd, u, dist[v] + 1.0)
        np.minimum.at(nd, v, dist[u] + 1.0)
        if not (nd < dist).any():
            return steps
        dist = nd
        steps += 1


def dump_states(states: dict[int, Any], target) -> None:
    """Write ``vertex_id value`` lines sorted by vertex id."""
    for gv in sorted(states):
        val = states[gv]
        if isinstance(val, tuple):
            val = ":".join(str(x) for x in val)
        elif isinstance(val, float) and val.is_integer():
            val = int(val)
        target.write(f"{gv} {val}\n")
