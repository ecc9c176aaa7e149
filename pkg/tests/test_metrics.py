import json

import numpy as np
import pytest

from edgepart import (
    EdgePartitioning,
    Graph,
    balance,
    communication_cost,
    compute_report,
    connectedness,
    cycle_graph,
    gain,
    grid_graph,
    normalized_sizes,
    path_graph,
    random_partition,
    star_graph,
)
from edgepart.metrics import (
    METRICS_CSV_COLUMNS,
    metrics_csv_lines,
    partition_component_counts,
)


def one_part(g):
    return EdgePartitioning(g, np.zeros(g.m, dtype=int), 1)


# -- balance ---------------------------------------------------------------


def test_normalized_sizes_three_to_one():
    g = path_graph(5)  # 4 edges
    part = EdgePartitioning(g, np.array([0, 0, 0, 1]), 2)
    assert list(normalized_sizes(part)) == [1.5, 0.5]
    max_norm, nstdev = balance(part)
    assert max_norm == 1.5
    assert abs(nstdev - 0.5) < 1e-12


def test_perfect_split_scores_zero():
    g = path_graph(5)
    part = EdgePartitioning(g, np.array([0, 0, 1, 1]), 2)
    assert balance(part) == (1.0, 0.0)


def test_single_partition_is_perfectly_balanced():
    assert balance(one_part(grid_graph(3, 3))) == (1.0, 0.0)


def test_relabeling_partitions_does_not_change_balance():
    g = grid_graph(5, 5)
    part = random_partition(g, 4, np.random.default_rng(0))
    swapped = EdgePartitioning(g, (part.assignment + 1) % 4, 4)
    assert balance(part)[1] == pytest.approx(balance(swapped)[1], abs=1e-15)


# -- communication -----------------------------------------------------------


def test_single_partition_sends_nothing():
    assert communication_cost(one_part(grid_graph(4, 4))) == 0


def test_triangle_cut_three_ways_replicates_every_vertex():
    part = EdgePartitioning(cycle_graph(3), np.array([0, 1, 2]), 3)
    assert communication_cost(part) == 6


def test_one_shared_vertex_costs_its_multiplicity():
    g = path_graph(4)
    part = EdgePartitioning(g, np.array([0, 0, 1]), 2)
    assert communication_cost(part) == 2


def test_messages_sum_frontier_sets():
    g = grid_graph(6, 6)
    part = random_partition(g, 5, np.random.default_rng(3))
    assert communication_cost(part) == sum(len(f) for f in part.frontier_sets())


# -- connectedness ------------------------------------------------------------


def test_contiguous_partitions_are_fully_connected():
    g = path_graph(9)
    part = EdgePartitioning(g, np.repeat([0, 1], 4), 2)
    assert partition_component_counts(part) == [1, 1]
    assert connectedness(part) == 0.0


def test_interleaved_partitions_are_fully_disconnected():
    g = path_graph(5)
    part = EdgePartitioning(g, np.array([0, 1, 0, 1]), 2)
    assert partition_component_counts(part) == [2, 2]
    assert connectedness(part) == 1.0


def test_empty_partition_counts_as_disconnected():
    g = path_graph(3)
    part = EdgePartitioning(g, np.array([0, 0]), 3)
    assert partition_component_counts(part) == [1, 0, 0]
    assert connectedness(part) == pytest.approx(2.0 / 3.0)


# -- gain -----------------------------------------------------------------------


def test_single_view_gain_is_one_minus_inverse_eccentricity():
    g = path_graph(10)
    res = gain(one_part(g), 0)
    assert res.baseline_supersteps == 9
    assert res.sssp_rounds == 1
    assert res.gain == pytest.approx(1.0 - 1.0 / 9.0)


def test_gain_is_zero_when_views_buy_nothing():
    # one view per edge on a path degenerates to the one-hop baseline
    g = path_graph(6)
    part = EdgePartitioning(g, np.arange(g.m), g.m)
    res = gain(part, 0)
    assert res.sssp_rounds == res.baseline_supersteps == 5
    assert res.gain == 0.0


def test_gain_on_star_center_cannot_improve():
    res = gain(one_part(star_graph(6)), 0)
    assert res.baseline_supersteps == 1
    assert res.gain == 0.0


def test_gain_rejects_isolated_source():
    g = Graph(3, np.array([[0, 1]]))
    with pytest.raises(ValueError, match="eccentricity 0"):
        gain(one_part(g), 2)


# -- report assembly -----------------------------------------------------------


def test_report_without_sources_skips_gain():
    part = one_part(grid_graph(3, 3))
    report = compute_report(part)
    assert report.gain is None
    assert report.sssp_rounds is None
    assert report.gain_sources is None
    assert report.k == 1
    assert report.messages == 0
    assert report.disconnected_fraction == 0.0


def test_report_averages_gain_over_sources():
    g = path_graph(12)
    part = EdgePartitioning(g, np.repeat([0, 1], [6, 5]), 2)
    report = compute_report(part, rounds=7, gain_sources=[0, 11])
    singles = [gain(part, 0), gain(part, 11)]
    assert report.gain == pytest.approx(np.mean([r.gain for r in singles]))
    assert report.sssp_rounds == pytest.approx(np.mean([r.sssp_rounds for r in singles]))
    assert report.baseline_supersteps == pytest.approx(
        np.mean([r.baseline_supersteps for r in singles]))
    assert report.gain_sources == (0, 11)
    assert report.rounds == 7


def test_report_json_round_trips():
    part = one_part(path_graph(4))
    d = json.loads(compute_report(part, gain_sources=[0]).to_json())
    assert d["k"] == 1
    assert d["normalized_sizes"] == [1.0]
    assert d["messages"] == 0
    assert d["gain_sources"] == [0]
    assert set(d) == {"k", "normalized_sizes", "max_normalized_size", "nstdev",
                      "messages", "disconnected_fraction", "rounds", "gain",
                      "sssp_rounds", "baseline_supersteps", "gain_sources"}


def test_csv_lines_shape_and_float_fidelity():
    g = path_graph(5)
    part = EdgePartitioning(g, np.array([0, 0, 0, 1]), 2)
    lines = metrics_csv_lines(compute_report(part, rounds=3, gain_sources=[0]))
    assert lines[0] == "# edgepart-metrics v1"
    assert lines[1] == ",".join(METRICS_CSV_COLUMNS)
    cells = dict(zip(METRICS_CSV_COLUMNS, lines[2].split(",")))
    assert cells["k"] == "2"
    assert float(cells["nstdev"]) == 0.5
    assert cells["rounds"] == "3"
    assert cells["normalized_sizes"] == "1.5 0.5"


def test_csv_empty_cells_for_skipped_gain():
    part = one_part(path_graph(3))
    lines = metrics_csv_lines(compute_report(part))
    cells = dict(zip(METRICS_CSV_COLUMNS, lines[2].split(",")))
    assert cells["gain"] == "" and cells["rounds"] == ""
