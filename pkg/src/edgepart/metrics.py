"""Partition quality metrics.

balance        normalized sizes |E_i| / (m/k) and their root-mean-square
               deviation from 1 (nstdev)
communication  total frontier replication, sum over partitions of |F_i|
connectedness  fraction of partitions whose edge set induces a disconnected
               (or empty) subgraph
gain           1 - R/R_base where R is the macro-rounds the view runtime
               needs for SSSP and R_base the supersteps of the one-hop
               baseline (the source's eccentricity)
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

import numpy as np

from .partition import EdgePartitioning
from .runtime import baseline_sssp_supersteps, build_views, sssp

__all__ = [
    "GainResult",
    "MetricsReport",
    "normalized_sizes",
    "balance",
    "communication_cost",
    "partition_component_counts",
    "connectedness",
    "gain",
    "compute_report",
    "METRICS_CSV_COLUMNS",
]


def normalized_sizes(part: EdgePartitioning) -> np.ndarray:
    ideal = part.graph.m / part.k
    return part.sizes / ideal


def balance(part: EdgePartitioning) -> tuple[float, float]:
    """(max normalized size, nstdev).  nstdev is the RMS deviation of the
    normalized sizes from 1; a perfect split scores 0."""
    norm = normalized_sizes(part)
    nstdev = float(np.sqrt(np.mean((norm - 1.0) ** 2)))
    return float(norm.max()), nstdev


def communication_cost(part: EdgePartitioning) -> int:
    """Sum of frontier set sizes, equivalently the total multiplicity of
    vertices living in at least two partitions."""
    mult = part.multiplicity
    return int(mult[mult >= 2].sum())


def partition_component_counts(part: EdgePartitioning) -> list[int]:
    """Connected components of each partition's induced subgraph (0 for an
    empty partition)."""
    counts = []
    for view in build_views(part.graph, part):
        nv = view.n_local
        if nv == 0:
            counts.append(0)
            continue
        indptr = view.indptr
        nbrs = view.neighbors
        seen = np.zeros(nv, dtype=bool)
        comps = 0
        for s in range(nv):
            if seen[s]:
                continue
            comps += 1
            seen[s] = True
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in nbrs[indptr[x] : indptr[x + 1]]:
                    if not seen[y]:
                        seen[y] = True
                        queue.append(int(y))
        counts.append(comps)
    return counts


def connectedness(part: EdgePartitioning) -> float:
    """Fraction of partitions that are not a single connected piece; empty
    partitions count as disconnected."""
    counts = partition_component_counts(part)
    bad = sum(1 for c in counts if c != 1)
    return bad / part.k


@dataclass(frozen=True)
class GainResult:
    gain: float
    sssp_rounds: int
    baseline_supersteps: int


def gain(part: EdgePartitioning, source: int,
         views=None) -> GainResult:
    """Round savings of the view runtime against the one-hop baseline for
    SSSP from ``source``.  1 means free, 0 means no better than the
    baseline; sloppy partitionings can go negative."""
    g = part.graph
    if views is None:
        views = build_views(g, part)
    _, report = sssp(views, source)
    base = baseline_sssp_supersteps(g, source)
    if base == 0:
        raise ValueError("gain undefined: source has eccentricity 0")
    return GainResult(gain=1.0 - report.rounds / base,
                      sssp_rounds=report.rounds,
                      baseline_supersteps=base)


@dataclass
class MetricsReport:
    k: int
    normalized_sizes: tuple[float, ...]
    max_normalized_size: float
    nstdev: float
    messages: int
    disconnected_fraction: float
    rounds: int | None = None          # partitioner rounds, if known
    gain: float | None = None          # mean over the sampled sources
    sssp_rounds: float | None = None
    baseline_supersteps: float | None = None
    gain_sources: tuple[int, ...] | None = None

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "normalized_sizes": list(self.normalized_sizes),
            "max_normalized_size": self.max_normalized_size,
            "nstdev": self.nstdev,
            "messages": self.messages,
            "disconnected_fraction": self.disconnected_fraction,
            "rounds": self.rounds,
            "gain": self.gain,
            "sssp_rounds": self.sssp_rounds,
            "baseline_supersteps": self.baseline_supersteps,
            "gain_sources": list(self.gain_sources) if self.gain_sources is not None else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


METRICS_CSV_COLUMNS = (
    "k",
    "max_normalized_size",
    "nstdev",
    "messages",
    "disconnected_fraction",
    "rounds",
    "gain",
    "sssp_rounds",
    "baseline_supersteps",
    "normalized_sizes",
)


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def metrics_csv_lines(report: MetricsReport) -> list[str]:
    """Header comment, column row and the single data row."""
    row = [
        report.k,
        report.max_normalized_size,
        report.nstdev,
        report.messages,
        report.disconnected_fraction,
        report.rounds,
        report.gain,
        report.sssp_rounds,
        report.baseline_supersteps,
        " ".join(repr(x) for x in report.normalized_sizes),
    ]
    return [
        "# edgepart-metrics v1",
        ",".join(METRICS_CSV_COLUMNS),
        ",".join(_csv_cell(x) for x in row),
    ]


def compute_report(part: EdgePartitioning, rounds: int | None = None,
                   gain_sources=None) -> MetricsReport:
    """Assemble the full report; gain is averaged over ``gain_sources``
    (skip gain entirely by passing None or an empty sequence)."""
    max_norm, nstdev = balance(part)
    report = MetricsReport(
        k=part.k,
        normalized_sizes=tuple(float(x) for x in normalized_sizes(part)),
        max_normalized_size=max_norm,
        nstdev=nstdev,
        messages=communication_cost(part),
        disconnected_fraction=connectedness(part),
        rounds=rounds,
    )
    sources = list(gain_sources) if gain_sources is not None else []
    if sources:
        views = build_views(part.graph, part)
        results = [gain(part, s, views=views) for s in sources]
        report.gain = float(np.mean([r.gain for r in results]))
        report.sssp_rounds = float(np.mean([r.sssp_rounds for r in results]))
        report.baseline_supersteps = float(np.mean([r.baseline_supersteps for r in results]))
        report.gain_sources = tuple(int(s) for s in sources)
    return report
