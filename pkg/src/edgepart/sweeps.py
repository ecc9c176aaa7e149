"""Batch experiments: K sweeps and diameter sweeps.

A sweep runs the chosen partitioner over a grid of (k, sample) cells, scores
every result with the metrics module, and emits one row per cell.  Sample i
always uses seed ``seed_base + i`` independent of k, so runs are resumable
and two sweeps sharing a sample index see identical randomness.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import dfep
from .graph import Graph, stats
from .metrics import compute_report
from .partition import EdgePartitioning, hash_partition, naive_growth, random_partition
from .rewire import rewire

__all__ = [
    "SweepConfig",
    "SweepRow",
    "run_partitioner",
    "k_sweep",
    "diameter_sweep",
    "K_SWEEP_COLUMNS",
    "DIAMETER_SWEEP_COLUMNS",
    "sweep_csv_lines",
]

ALGORITHMS = ("dfep", "dfepc", "random", "hash", "naive")


@dataclass(frozen=True)
class SweepConfig:
    algorithm: str = "dfep"
    k_values: tuple[int, ...] = (2, 4, 8, 16, 32)
    samples: int = 100
    seed_base: int = 0
    sources: int = 10          # SSSP sources averaged into the gain column
    variant: str = dfep.PLAIN  # dfep only; "dfepc" forces poor-rich
    p: float = 2.0
    round_cap: int = 1000
    jobs: int = 1
    dataset: str = ""

    def __post_init__(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.samples < 1:
            raise ValueError("samples must be positive")
        if self.sources < 0:
            raise ValueError("sources must be non-negative")
        if self.jobs < 1:
            raise ValueError("jobs must be positive")
        if not self.k_values:
            raise ValueError("need at least one k")


@dataclass
class SweepRow:
    dataset: str
    algorithm: str
    k: int
    sample: int
    seed: int
    rounds: int
    max_normalized_size: float
    nstdev: float
    messages: int
    disconnected_fraction: float
    gain: float | None
    sssp_rounds: float | None
    baseline_supersteps: float | None
    swap_budget: int | None = None
    swaps_applied: int | None = None
    diameter: int | None = None
    diameter_exact: bool | None = None


def run_partitioner(g: Graph, algorithm: str, k: int, seed: int,
                    variant: str = dfep.PLAIN, p: float = 2.0,
                    round_cap: int = 1000) -> tuple[EdgePartitioning, int]:
    """Dispatch one partitioner run; returns (partitioning, rounds used)."""
    if algorithm == "dfepc":
        algorithm, variant = "dfep", dfep.POOR_RICH
    if algorithm == "dfep":
        cfg = dfep.DfepConfig(k=k, seed=seed, variant=variant, p=p, round_cap=round_cap)
        part, trace = dfep.run_dfep(g, cfg)
        return part, len(trace)
    rng = np.random.default_rng(seed)
    if algorithm == "random":
        return random_partition(g, k, rng), 0
    if algorithm == "hash":
        return hash_partition(g, k), 0
    if algorithm == "naive":
        return naive_growth(g, k, rng)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def _gain_sources(g: Graph, seed: int, count: int) -> list[int]:
    if count == 0:
        return []
    rng = np.random.default_rng(np.random.SeedSequence([seed, 0x5EED]))
    picked = rng.choice(g.n, size=min(count, g.n), replace=False)
    return sorted(int(x) for x in picked)


def _one_cell(args) -> SweepRow:
    g, cfg, k, sample, extra = args
    seed = cfg.seed_base + sample
    part, rounds = run_partitioner(g, cfg.algorithm, k, seed,
                                   variant=cfg.variant, p=cfg.p,
                                   round_cap=cfg.round_cap)
    report = compute_report(part, rounds=rounds,
                            gain_sources=_gain_sources(g, seed, cfg.sources))
    row = SweepRow(
        dataset=cfg.dataset,
        algorithm=cfg.algorithm,
        k=k,
        sample=sample,
        seed=seed,
        rounds=rounds,
        max_normalized_size=report.max_normalized_size,
        nstdev=report.nstdev,
        messages=report.messages,
        disconnected_fraction=report.disconnected_fraction,
        gain=report.gain,
        sssp_rounds=report.sssp_rounds,
        baseline_supersteps=report.baseline_supersteps,
    )
    if extra is not None:
        row.swap_budget, row.swaps_applied, row.diameter, row.diameter_exact = extra
    return row


def _run_cells(cells: list, jobs: int) -> list[SweepRow]:
    if jobs <= 1 or len(cells) <= 1:
        return [_one_cell(c) for c in cells]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_one_cell, cells, chunksize=1))


def k_sweep(g: Graph, cfg: SweepConfig) -> list[SweepRow]:
    """Rows ordered by (k, sample)."""
    cells = [(g, cfg, k, s, None) for k in cfg.k_values for s in range(cfg.samples)]
    return _run_cells(cells, cfg.jobs)


def diameter_sweep(g: Graph, swap_budgets: Sequence[int], cfg: SweepConfig,
                   triangle_tolerance: float = 1.0, rewire_seed: int = 0,
                   exact_diameter: bool | None = None) -> list[SweepRow]:
    """Build one rewired family member per swap budget, then sweep each.

    Rows ordered by (budget position, k, sample).  Every member is rewired
    from the original graph, not from the previous member, so budgets are
    absolute.
    """
    rows: list[SweepRow] = []
    for budget in swap_budgets:
        if budget < 0:
            raise ValueError("swap budget must be non-negative")
        rng = np.random.default_rng(np.random.SeedSequence([rewire_seed, budget]))
        result = rewire(g, budget, triangle_tolerance, rng)
        member = result.graph
        st = stats(member, exact_diameter=exact_diameter)
        extra = (int(budget), result.swaps_applied, st.diameter, st.diameter_exact)
        cells = [(member, cfg, k, s, extra) for k in cfg.k_values for s in range(cfg.samples)]
        rows.extend(_run_cells(cells, cfg.jobs))
    return rows


K_SWEEP_COLUMNS = (
    "dataset", "algorithm", "k", "sample", "seed", "rounds",
    "max_normalized_size", "nstdev", "messages", "disconnected_fraction",
    "gain", "sssp_rounds", "baseline_supersteps",
)

DIAMETER_SWEEP_COLUMNS = K_SWEEP_COLUMNS + (
    "swap_budget", "swaps_applied", "diameter", "diameter_exact",
)


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def sweep_csv_lines(rows: list[SweepRow], columns: tuple[str, ...],
                    schema: str) -> list[str]:
    lines = [f"# edgepart-{schema} v1", ",".join(columns)]
    for row in rows:
        lines.append(",".join(_cell(getattr(row, c)) for c in columns))
    return lines
