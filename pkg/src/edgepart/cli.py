"""Command-line front end.

Subcommands: stats, partition, metrics, run, sweep-k, sweep-diameter,
rewire.  Exit codes: 0 success, 1 usage error, 2 data error, 3 the
partitioner or runtime failed to converge.  Every command is deterministic
for a fixed seed: rerunning with identical flags reproduces output files
byte for byte.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import dfep
from .graph import load_edge_list, stats
from .metrics import compute_report, metrics_csv_lines
from .partition import read_partitioning, write_partitioning
from .rewire import rewire
from .runtime import (NonConvergenceError, build_views, connected_components,
                      dump_states, sssp)
from .sweeps import (DIAMETER_SWEEP_COLUMNS, K_SWEEP_COLUMNS, SweepConfig,
                     SweepRow, diameter_sweep, k_sweep, run_partitioner,
                     sweep_csv_lines)

__all__ = ["main", "console_main", "build_parser"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage by default; this tool reserves 2 for
    # data errors, so usage problems must exit 1 instead
    def error(self, message):
        raise _UsageError(message)


def _comma_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated int list: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="edgepart", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, output_required=False):
        p.add_argument("--input", required=True, help="edge-list file")
        p.add_argument("--output", required=output_required,
                       help="output path" + ("" if output_required else " (default stdout)"))

    p = sub.add_parser("stats", help="structural summary as JSON")
    add_common(p)
    p.add_argument("--exact-diameter", action="store_true",
                   help="force all-sources BFS regardless of graph size")

    p = sub.add_parser("partition", help="partition the edges")
    add_common(p, output_required=True)
    p.add_argument("--algorithm", required=True,
                   choices=["dfep", "dfepc", "random", "hash", "naive"])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--variant", choices=[dfep.PLAIN, dfep.POOR_RICH], default=dfep.PLAIN,
                   help="dfep funding variant (dfepc implies poor-rich)")
    p.add_argument("--p", type=float, default=2.0, help="poverty divisor")
    p.add_argument("--round-cap", type=int, default=1000)

    p = sub.add_parser("metrics", help="score a partitioning")
    add_common(p)
    p.add_argument("--partitioning", required=True, help="file from 'partition'")
    p.add_argument("--sources", type=int, default=10,
                   help="SSSP sources averaged into the gain column (0 skips gain)")
    p.add_argument("--seed", type=int, default=0, help="source sampling seed")
    p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("run", help="run sssp or cc over the partition views")
    add_common(p, output_required=True)
    p.add_argument("--partitioning", required=True)
    p.add_argument("--algorithm", required=True, choices=["sssp", "cc"])
    p.add_argument("--source", type=int, help="source vertex (sssp)")
    p.add_argument("--seed", type=int, default=0, help="component id seed (cc)")

    p = sub.add_parser("sweep-k", help="partition quality across k values")
    add_common(p)
    p.add_argument("--algorithm", default="dfep",
                   choices=["dfep", "dfepc", "random", "hash", "naive"])
    p.add_argument("--k", type=_comma_ints, default=[2, 4, 8, 16, 32],
                   help="comma-separated k values")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0, help="seed base; sample i uses seed+i")
    p.add_argument("--sources", type=int, default=10)
    p.add_argument("--variant", choices=[dfep.PLAIN, dfep.POOR_RICH], default=dfep.PLAIN)
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--round-cap", type=int, default=1000)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("sweep-diameter", help="quality across a rewired diameter family")
    add_common(p)
    p.add_argument("--swap-budgets", type=_comma_ints, required=True)
    p.add_argument("--triangle-tolerance", type=float, default=1.0)
    p.add_argument("--algorithm", default="dfep",
                   choices=["dfep", "dfepc", "random", "hash", "naive"])
    p.add_argument("--k", type=_comma_ints, default=[20])
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sources", type=int, default=10)
    p.add_argument("--variant", choices=[dfep.PLAIN, dfep.POOR_RICH], default=dfep.PLAIN)
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--round-cap", type=int, default=1000)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--exact-diameter", action="store_true")

    p = sub.add_parser("rewire", help="degree-preserving double-edge swaps")
    add_common(p, output_required=True)
    p.add_argument("--swaps", type=int, required=True)
    p.add_argument("--triangle-tolerance", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)

    return parser


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def _load(path: str):
    g, _orig = load_edge_list(path)
    return g


def _sidecar(path: str) -> dict | None:
    side = Path(path + ".json")
    if side.exists():
        return json.loads(side.read_text())
    return None


def _cmd_stats(args) -> int:
    g = _load(args.input)
    st = stats(g, exact_diameter=True if args.exact_diameter else None)
    _emit(json.dumps(st.to_json_dict()) + "\n", args.output)
    return 0


def _cmd_partition(args) -> int:
    g = _load(args.input)
    part, rounds = run_partitioner(g, args.algorithm, args.k, args.seed,
                                   variant=args.variant, p=args.p,
                                   round_cap=args.round_cap)
    write_partitioning(part, args.output)
    if args.algorithm == "dfepc":
        variant = dfep.POOR_RICH
    elif args.algorithm == "dfep":
        variant = args.variant
    else:
        variant = None
    sidecar = {
        "K": part.k,
        "seed": None if args.algorithm == "hash" else args.seed,
        "variant": variant,
        "rounds": rounds,
        "sizes": [int(s) for s in part.sizes],
    }
    Path(args.output + ".json").write_text(json.dumps(sidecar) + "\n")
    return 0


def _cmd_metrics(args) -> int:
    g = _load(args.input)
    side = _sidecar(args.partitioning)
    part = read_partitioning(g, args.partitioning,
                             k=side["K"] if side else None)
    rounds = side.get("rounds") if side else None
    sources = []
    if args.sources > 0:
        rng = np.random.default_rng(args.seed)
        sources = sorted(int(x) for x in
                         rng.choice(g.n, size=min(args.sources, g.n), replace=False))
    report = compute_report(part, rounds=rounds, gain_sources=sources)
    if args.format == "json":
        _emit(report.to_json() + "\n", args.output)
    else:
        _emit("\n".join(metrics_csv_lines(report)) + "\n", args.output)
    return 0


def _cmd_run(args) -> int:
    g = _load(args.input)
    side = _sidecar(args.partitioning)
    part = read_partitioning(g, args.partitioning,
                             k=side["K"] if side else None)
    views = build_views(g, part)
    if args.algorithm == "sssp":
        if args.source is None:
            raise _UsageError("run --algorithm sssp requires --source")
        if not 0 <= args.source < g.n:
            raise ValueError(f"source {args.source} out of range")
        states, report = sssp(views, args.source)
    else:
        states, report = connected_components(views, np.random.default_rng(args.seed))
    with open(args.output, "w") as fh:
        dump_states(states, fh)
    Path(args.output + ".json").write_text(json.dumps(report.to_json_dict()) + "\n")
    return 0


def _rows_out(rows: list[SweepRow], columns, schema: str, args) -> None:
    if args.format == "json":
        payload = [{c: getattr(r, c) for c in columns} for r in rows]
        _emit(json.dumps(payload) + "\n", args.output)
    else:
        _emit("\n".join(sweep_csv_lines(rows, columns, schema)) + "\n", args.output)


def _sweep_config(args, dataset: str) -> SweepConfig:
    return SweepConfig(
        algorithm=args.algorithm,
        k_values=tuple(args.k),
        samples=args.samples,
        seed_base=args.seed,
        sources=args.sources,
        variant=args.variant,
        p=args.p,
        round_cap=args.round_cap,
        jobs=args.jobs,
        dataset=dataset,
    )


def _cmd_sweep_k(args) -> int:
    g = _load(args.input)
    rows = k_sweep(g, _sweep_config(args, Path(args.input).name))
    _rows_out(rows, K_SWEEP_COLUMNS, "sweep-k", args)
    return 0


def _cmd_sweep_diameter(args) -> int:
    g = _load(args.input)
    rows = diameter_sweep(
        g, args.swap_budgets, _sweep_config(args, Path(args.input).name),
        triangle_tolerance=args.triangle_tolerance, rewire_seed=args.seed,
        exact_diameter=True if args.exact_diameter else None)
    _rows_out(rows, DIAMETER_SWEEP_COLUMNS, "sweep-diameter", args)
    return 0


def _cmd_rewire(args) -> int:
    g = _load(args.input)
    result = rewire(g, args.swaps, args.triangle_tolerance,
                    np.random.default_rng(args.seed))
    result.graph.to_edge_list(args.output)
    summary = {
        "swaps_applied": result.swaps_applied,
        "triangles_before": result.triangles_before,
        "triangles_after": result.triangles_after,
    }
    sys.stdout.write(json.dumps(summary) + "\n")
    return 0


_HANDLERS = {
    "stats": _cmd_stats,
    "partition": _cmd_partition,
    "metrics": _cmd_metrics,
    "run": _cmd_run,
    "sweep-k": _cmd_sweep_k,
    "sweep-diameter": _cmd_sweep_diameter,
    "rewire": _cmd_rewire,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        return _HANDLERS[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (dfep.RoundLimitError, NonConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:  # pragma: no cover - thin wrapper
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
