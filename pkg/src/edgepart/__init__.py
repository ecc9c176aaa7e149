"""edgepart: edge partitioning toolkit.

Graph ingestion and statistics, a funding-auction edge partitioner with a
poor/rich rebalancing variant, cheap baseline partitioners, a
round-synchronous runtime over the partition views (SSSP, connected
components), partition quality metrics, and sweep experiments.
"""

from .dfep import (PLAIN, POOR_RICH, DfepConfig, FundingState, RoundLimitError,
                   RoundTrace, run_dfep)
from .generators import (complete_graph, cycle_graph, disjoint_union, grid_graph,
                         path_graph, random_connected_gnm, star_graph,
                         watts_strogatz)
from .graph import (DisconnectedGraphError, EdgeListParseError, EmptyGraphError,
                    Graph, GraphStats, load_edge_list, stats)
from .metrics import (GainResult, MetricsReport, balance, communication_cost,
                      compute_report, connectedness, gain, normalized_sizes)
from .partition import (EdgePartitioning, hash_partition, naive_growth,
                        random_partition, read_partitioning, write_partitioning)
from .rewire import RewireResult, rewire
from .runtime import (AlgorithmSpec, NonConvergenceError, PartitionView,
                      RunReport, baseline_sssp_supersteps, build_views,
                      connected_components, run_views, sssp)
from .sweeps import SweepConfig, SweepRow, diameter_sweep, k_sweep, run_partitioner

__version__ = "0.1.0"
