import dataclasses

import numpy as np
import pytest

from edgepart import SweepConfig, diameter_sweep, grid_graph, k_sweep, run_partitioner
from edgepart.dfep import POOR_RICH
from edgepart.sweeps import (
    DIAMETER_SWEEP_COLUMNS,
    K_SWEEP_COLUMNS,
    _gain_sources,
    sweep_csv_lines,
)


def small_cfg(**kw):
    base = dict(algorithm="dfep", k_values=(2, 3), samples=2, seed_base=0,
                sources=1, dataset="grid")
    base.update(kw)
    return SweepConfig(**base)


def test_config_validation():
    with pytest.raises(ValueError):
        SweepConfig(algorithm="bogus")
    with pytest.raises(ValueError):
        SweepConfig(samples=0)
    with pytest.raises(ValueError):
        SweepConfig(sources=-1)
    with pytest.raises(ValueError):
        SweepConfig(k_values=())
    with pytest.raises(ValueError):
        SweepConfig(jobs=0)


def test_run_partitioner_dispatch():
    g = grid_graph(4, 4)
    for alg in ("dfep", "dfepc", "random", "hash", "naive"):
        part, rounds = run_partitioner(g, alg, 3, seed=1)
        assert int(part.sizes.sum()) == g.m
        assert rounds >= (1 if alg in ("dfep", "dfepc", "naive") else 0)
    with pytest.raises(ValueError):
        run_partitioner(g, "bogus", 2, seed=0)


def test_dfepc_shorthand_forces_poor_rich():
    g = grid_graph(5, 5)
    a, _ = run_partitioner(g, "dfepc", 4, seed=3)
    b, _ = run_partitioner(g, "dfep", 4, seed=3, variant=POOR_RICH)
    assert np.array_equal(a.assignment, b.assignment)


def test_rows_ordered_by_k_then_sample_with_offset_seeds():
    g = grid_graph(5, 5)
    rows = k_sweep(g, small_cfg(seed_base=100))
    assert [(r.k, r.sample) for r in rows] == [(2, 0), (2, 1), (3, 0), (3, 1)]
    assert [r.seed for r in rows] == [100, 101, 100, 101]
    assert all(r.dataset == "grid" and r.algorithm == "dfep" for r in rows)
    assert all(r.rounds >= 1 for r in rows)


def test_same_sample_shares_randomness_across_k():
    g = grid_graph(5, 5)
    rows = k_sweep(g, small_cfg(algorithm="random", k_values=(2, 4), samples=2))
    by_cell = {(r.k, r.sample): r for r in rows}
    # same seed within a sample; gain sources drawn identically as well
    assert by_cell[(2, 0)].seed == by_cell[(4, 0)].seed
    assert _gain_sources(g, 0, 3) == _gain_sources(g, 0, 3)


def test_zero_sources_skips_gain_columns():
    g = grid_graph(4, 4)
    rows = k_sweep(g, small_cfg(sources=0))
    assert all(r.gain is None and r.sssp_rounds is None for r in rows)


def test_parallel_rows_match_serial_rows():
    g = grid_graph(5, 5)
    serial = k_sweep(g, small_cfg())
    parallel = k_sweep(g, small_cfg(jobs=2))
    assert [dataclasses.asdict(r) for r in serial] == \
        [dataclasses.asdict(r) for r in parallel]


def test_diameter_sweep_budget_zero_reproduces_base_graph():
    g = grid_graph(6, 6)
    rows = diameter_sweep(g, [0], small_cfg(k_values=(2,), samples=2))
    assert len(rows) == 2
    for r in rows:
        assert r.swap_budget == 0
        assert r.swaps_applied == 0
        assert r.diameter == 10
        assert r.diameter_exact is True


def test_diameter_sweep_orders_rows_by_budget():
    g = grid_graph(6, 6)
    rows = diameter_sweep(g, [0, 40], small_cfg(k_values=(2,), samples=1, sources=0))
    assert [r.swap_budget for r in rows] == [0, 40]
    assert rows[1].swaps_applied == 40
    assert rows[1].diameter <= 10


def test_diameter_sweep_rejects_negative_budget():
    with pytest.raises(ValueError):
        diameter_sweep(grid_graph(4, 4), [-1], small_cfg())


def test_csv_lines_for_both_schemas():
    g = grid_graph(5, 5)
    k_lines = sweep_csv_lines(k_sweep(g, small_cfg()), K_SWEEP_COLUMNS, "sweep-k")
    assert k_lines[0] == "# edgepart-sweep-k v1"
    assert k_lines[1].split(",")[:3] == ["dataset", "algorithm", "k"]
    assert len(k_lines) == 2 + 4

    d_rows = diameter_sweep(g, [0], small_cfg(k_values=(2,), samples=1, sources=0))
    d_lines = sweep_csv_lines(d_rows, DIAMETER_SWEEP_COLUMNS, "sweep-diameter")
    assert d_lines[0] == "# edgepart-sweep-diameter v1"
    cells = dict(zip(DIAMETER_SWEEP_COLUMNS, d_lines[2].split(",")))
    assert cells["swap_budget"] == "0"
    assert cells["gain"] == ""  # sources=0 leaves gain empty
    assert cells["diameter"] == "8"
