"""Funding-auction edge partitioner (dfep) and its poor/rich variant (dfepc).

Each partition is a bidder with per-vertex and per-edge balances.  A round
has three synchronous steps:

1. propagate -- every vertex spreads its balance equally over the incident
   edges it may bid on (free edges and edges its partition already owns; a
   poor partition may also target rich-owned edges).
2. auction   -- per edge, the partition with the most committed funds wins
   (ties to the lowest id).  A free edge sells for one unit when the best
   bid reaches it; under the poor/rich variant a poor best bidder can also
   buy a rich-owned edge outright for one unit, with no rebate to the
   dispossessed owner.  The winner's remainder is split between the edge's
   endpoints; every losing bid is refunded to the vertices that funded it
   in proportion to their contributions.
3. inject    -- a coordinator tops up every funded vertex; partitions below
   average size get more, capped at INJECTION_CAP units.

Money only leaves a partition when it buys an edge, so per partition
(vertex funds) + (edge funds) + (purchase count) == (injected total) holds
to float tolerance after every step; the tests lean on that invariant.

All per-partition work runs in ascending partition id over vectorized
ascending-id scans, so results are bit-reproducible for a given
(graph, config, seed) triple.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import Graph
from .partition import EdgePartitioning

__all__ = [
    "PLAIN",
    "POOR_RICH",
    "UNOWNED",
    "DfepConfig",
    "FundingState",
    "RoundTrace",
    "RoundLimitError",
    "init_state",
    "propagate",
    "auction",
    "inject",
    "classify_poor_rich",
    "run_dfep",
]

PLAIN = "plain"
POOR_RICH = "poor-rich"
UNOWNED = -1

INJECTION_CAP = 10.0
# Rounds without any ownership change before declaring the run stuck.
STALL_LIMIT = 50


class RoundLimitError(RuntimeError):
    """Raised when the round cap (or the stall detector) fires.

    Carries the partial assignment (UNOWNED entries still -1) and the count
    of unowned edges so callers can inspect how far the run got.
    """

    def __init__(self, message: str, assignment: np.ndarray, rounds: int) -> None:
        super().__init__(message)
        self.assignment = assignment
        self.unowned = int((assignment == UNOWNED).sum())
        self.rounds = rounds


@dataclass(frozen=True)
class DfepConfig:
    k: int
    seed: int = 0
    variant: str = PLAIN
    p: float = 2.0           # poverty divisor: poor iff size < mean/p
    round_cap: int = 1000
    epsilon: float = 1e-9    # slack on the one-unit purchase test

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be positive")
        if self.variant not in (PLAIN, POOR_RICH):
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.p <= 1.0:
            raise ValueError("poverty divisor p must exceed 1")
        if self.round_cap < 1:
            raise ValueError("round cap must be positive")
        if self.epsilon < 0:
            raise ValueError("epsilon must be non-negative")


@dataclass
class RoundTrace:
    round_index: int
    sizes: tuple[int, ...]
    newly_owned: int
    money_in_flight: float


@dataclass
class FundingState:
    """Mutable auction state over one graph.

    ``contrib`` keeps, per partition, the amount each incidence entry
    (vertex, edge) committed during the current round's propagate step; it
    is the funder record the auction refunds from, and is cleared with the
    edge balances at the end of every auction.
    """

    graph: Graph
    k: int
    vertex_funds: np.ndarray          # (k, n) balance per partition per vertex
    edge_funds: np.ndarray            # (k, m) committed bids
    contrib: np.ndarray               # (k, 2m) per-incidence funder amounts
    owner: np.ndarray                 # (m,) partition id or UNOWNED
    seeds: np.ndarray                 # (k,) initially funded vertex per partition
    injected: np.ndarray              # (k,) total units ever handed to partition i
    purchases: np.ndarray             # (k,) edges bought (recaptures included)

    def sizes(self) -> np.ndarray:
        owned = self.owner[self.owner != UNOWNED]
        return np.bincount(owned, minlength=self.k)

    def total_funds(self, pid: int) -> float:
        return float(self.vertex_funds[pid].sum() + self.edge_funds[pid].sum())

    def funders_of(self, edge: int, pid: int) -> dict[int, float]:
        """Vertices that funded ``pid`` on ``edge`` this round, with amounts."""
        g = self.graph
        mask = (g._inc_edge == edge) & (self.contrib[pid] > 0)
        idx = np.nonzero(mask)[0]
        return {int(g._inc_vertex[i]): float(self.contrib[pid][i]) for i in idx}


def init_state(g: Graph, cfg: DfepConfig, rng: np.random.Generator,
               seeds: np.ndarray | None = None) -> FundingState:
    """Sample k distinct seed vertices, each endowed with m/k units."""
    if cfg.k > g.n:
        raise ValueError("k exceeds vertex count")
    if g.m == 0:
        raise ValueError("graph has no edges to partition")
    if seeds is None:
        seeds = rng.choice(g.n, size=cfg.k, replace=False)
    seeds = np.asarray(seeds, dtype=np.int64)
    if seeds.shape != (cfg.k,) or np.unique(seeds).size != cfg.k:
        raise ValueError("need k distinct seed vertices")
    if seeds.min() < 0 or seeds.max() >= g.n:
        raise ValueError("seed vertex out of range")

    state = FundingState(
        graph=g,
        k=cfg.k,
        vertex_funds=np.zeros((cfg.k, g.n)),
        edge_funds=np.zeros((cfg.k, g.m)),
        contrib=np.zeros((cfg.k, 2 * g.m)),
        owner=np.full(g.m, UNOWNED, dtype=np.int64),
        seeds=seeds.copy(),
        injected=np.zeros(cfg.k),
        purchases=np.zeros(cfg.k, dtype=np.int64),
    )
    endowment = g.m / cfg.k
    for i in range(cfg.k):
        state.vertex_funds[i, seeds[i]] = endowment
        state.injected[i] = endowment
    return state


def classify_poor_rich(state: FundingState, p: float) -> np.ndarray:
    """Boolean poor-mask: partition i is poor iff its size < mean size / p.

    With all sizes equal (including the all-zero first round) nobody is
    poor.
    """
    sizes = state.sizes()
    return sizes < sizes.mean() / p


def propagate(state: FundingState, poor: np.ndarray | None = None) -> None:
    """Step 1: spread every positive vertex balance over its eligible
    incident edges, equally.  A vertex with funds but no eligible incident
    edge keeps its balance."""
    g = state.graph
    owner_inc = state.owner[g._inc_edge]
    for i in range(state.k):
        mv = state.vertex_funds[i]
        funded = mv > 0
        if not funded.any():
            continue
        elig = (owner_inc == UNOWNED) | (owner_inc == i)
        if poor is not None and poor[i]:
            owned = owner_inc != UNOWNED
            rich_owned = np.zeros_like(elig)
            rich_owned[owned] = ~poor[owner_inc[owned]]
            elig |= rich_owned
        active = elig & funded[g._inc_vertex]
        if not active.any():
            continue
        cnt = np.bincount(g._inc_vertex[active], minlength=g.n)
        idx = np.nonzero(active)[0]
        share = mv[g._inc_vertex[idx]] / cnt[g._inc_vertex[idx]]
        state.contrib[i][idx] = share
        state.edge_funds[i] += np.bincount(g._inc_edge[idx], weights=share, minlength=g.m)
        mv[funded & (cnt > 0)] = 0.0


def auction(state: FundingState, poor: np.ndarray | None = None,
            epsilon: float = 1e-9) -> int:
    """Step 2: resolve every edge's auction; returns the number of edges
    whose owner changed (fresh buys plus recaptures)."""
    g = state.graph
    m = g.m
    M = state.edge_funds
    best = np.argmax(M, axis=0)                    # ties -> lowest partition id
    best_val = np.take_along_axis(M, best[None, :], axis=0)[0]
    affordable = best_val >= 1.0 - epsilon

    buy = (state.owner == UNOWNED) & affordable
    if poor is not None:
        owned = state.owner != UNOWNED
        rich_owner = np.zeros(m, dtype=bool)
        rich_owner[owned] = ~poor[state.owner[owned]]
        # ownership moves only rich -> poor, and only on an outright win
        buy |= owned & rich_owner & poor[best] & affordable

    bought = np.nonzero(buy)[0]
    changed = int(bought.size)
    if changed:
        winners = best[bought]
        state.owner[bought] = winners
        M[winners, bought] -= 1.0
        state.purchases += np.bincount(winners, minlength=state.k)

    ends = g.endpoints
    for i in range(state.k):
        me = M[i]
        has = me > 0
        mine = has & (state.owner == i)
        if mine.any():
            half = me[mine] * 0.5
            np.add.at(state.vertex_funds[i], ends[mine, 0], half)
            np.add.at(state.vertex_funds[i], ends[mine, 1], half)
        # losing bids go back to whoever funded them, share for share
        lost_inc = (state.owner[g._inc_edge] != i) & (state.contrib[i] > 0)
        if lost_inc.any():
            idx = np.nonzero(lost_inc)[0]
            state.vertex_funds[i] += np.bincount(
                g._inc_vertex[idx], weights=state.contrib[i][idx], minlength=g.n
            )
        me[:] = 0.0
        state.contrib[i][:] = 0.0
    return changed


def inject(state: FundingState) -> None:
    """Step 3: coordinator funding.  Partition i's funded vertices each gain
    min(INJECTION_CAP, avg_size / size_i) units (the cap itself when the
    partition owns nothing).  A partition that owns no edge and has no
    funded vertex gets its original seed re-funded instead, so it can
    re-enter the game."""
    sizes = state.sizes()
    avg = sizes.sum() / state.k
    for i in range(state.k):
        if sizes[i] == 0:
            funding = INJECTION_CAP
        else:
            funding = min(INJECTION_CAP, avg / sizes[i])
        if funding <= 0:
            continue
        funded = state.vertex_funds[i] > 0
        count = int(funded.sum())
        if count:
            state.vertex_funds[i][funded] += funding
            state.injected[i] += funding * count
        elif sizes[i] == 0:
            state.vertex_funds[i][state.seeds[i]] += funding
            state.injected[i] += funding


def run_dfep(g: Graph, cfg: DfepConfig,
             seeds: np.ndarray | None = None) -> tuple[EdgePartitioning, list[RoundTrace]]:
    """Run rounds until every edge is owned.

    Raises :class:`RoundLimitError` when ``cfg.round_cap`` rounds pass with
    edges still free, or when ownership stops changing for ``STALL_LIMIT``
    consecutive rounds.
    """
    if not g.is_connected():
        raise ValueError("partitioner requires a connected graph")
    rng = np.random.default_rng(cfg.seed)
    state = init_state(g, cfg, rng, seeds=seeds)
    trace: list[RoundTrace] = []
    poor_rich = cfg.variant == POOR_RICH
    stall = 0
    for rnd in range(1, cfg.round_cap + 1):
        poor = classify_poor_rich(state, cfg.p) if poor_rich else None
        owned_before = int((state.owner != UNOWNED).sum())
        propagate(state, poor)
        changed = auction(state, poor, epsilon=cfg.epsilon)
        inject(state)
        owned_after = int((state.owner != UNOWNED).sum())
        newly = owned_after - owned_before
        trace.append(RoundTrace(
            round_index=rnd,
            sizes=tuple(int(s) for s in state.sizes()),
            newly_owned=newly,
            money_in_flight=float(state.vertex_funds.sum() + state.edge_funds.sum()),
        ))
        if owned_after == g.m:
            return EdgePartitioning(g, state.owner.copy(), cfg.k), trace
        stall = 0 if changed else stall + 1
        if stall >= STALL_LIMIT:
            raise RoundLimitError(
                f"no ownership change for {STALL_LIMIT} rounds "
                f"({g.m - owned_after} edges still free)",
                state.owner.copy(), rnd)
    raise RoundLimitError(
        f"round cap {cfg.round_cap} reached with "
        f"{g.m - int((state.owner != UNOWNED).sum())} edges still free",
        state.owner.copy(), cfg.round_cap)
