"""Command-line surface.

Subcommands: ``cluster`` (multi-seed benchmark runs), ``eval`` (score two
label files), ``synth`` (generate a planted synthetic dataset),
``bench-time`` (timing sweep over sampling rates), and ``trace`` (export
plot-ready objective traces).

Exit codes: 0 success, 2 configuration error, 3 data error, 4 when
``--strict`` is set and any run hit its iteration caps.
"""

from __future__ import annotations

import argparse
import sys

from .bench import BenchConfig, cmd_bench_time, cmd_cluster, cmd_trace_plot
from .cluster import VARIANTS, ConfigError
from .evaluation import ari, ca, format_mean_std
from .report import read_label_file
from .schema import DataError, SchemaError
from .synth import SyntheticSpec, write_synthetic

__all__ = ["main", "build_parser"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harr",
        description="Mixed-data clustering benchmark: reconstruction-based "
        "weight-learning variants plus classical baselines.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    cluster = sub.add_parser("cluster", help="run variants over seeded repeats")
    cluster.add_argument("--data", required=True, help="headerless CSV data file")
    cluster.add_argument("--schema", required=True, help="schema file")
    cluster.add_argument("--labels", help="ground-truth labels, one per line")
    cluster.add_argument("--k", type=int, required=True, help="cluster count")
    cluster.add_argument(
        "--variant",
        action="append",
        choices=VARIANTS,
        help="variant to run (repeatable; default HARR-V and HARR-M)",
    )
    cluster.add_argument("--runs", type=int, default=20)
    cluster.add_argument("--seed", type=int, default=0, help="base seed")
    cluster.add_argument("--bins", type=int, help="discretization bin override")
    cluster.add_argument("--inner-cap", type=int, default=100)
    cluster.add_argument("--outer-cap", type=int, default=50)
    cluster.add_argument("--out", default="harr-out", help="output directory")
    cluster.add_argument("--workers", type=int, default=1)
    cluster.add_argument(
        "--strict",
        action="store_true",
        help="exit 4 when any run hits its iteration caps",
    )

    evaluate = sub.add_parser("eval", help="score a predicted labeling")
    evaluate.add_argument("--labels", required=True, help="ground-truth label file")
    evaluate.add_argument("--pred", required=True, help="predicted label file")

    synth = sub.add_parser("synth", help="generate a planted synthetic dataset")
    synth.add_argument("--n", type=int, default=100_000)
    synth.add_argument("--k-true", type=int, default=5)
    synth.add_argument("--d-u", type=int, default=0)
    synth.add_argument("--d-n", type=int, default=5)
    synth.add_argument("--d-o", type=int, default=0)
    synth.add_argument("--values", type=int, default=5)
    synth.add_argument("--separation", type=float, default=0.8)
    synth.add_argument("--seed", type=int, default=0)
    synth.add_argument("--out", default="harr-synth", help="output directory")

    bench = sub.add_parser("bench-time", help="timing sweep over sampling rates")
    bench.add_argument("--data", required=True)
    bench.add_argument("--schema", required=True)
    bench.add_argument("--k", type=int, required=True)
    bench.add_argument(
        "--variant", action="append", choices=VARIANTS, help="repeatable"
    )
    bench.add_argument(
        "--phi",
        action="append",
        type=float,
        help="sampling rate in (0, 1] (repeatable; default "
        "0.001 0.2 0.4 0.6 0.8 1.0)",
    )
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--repeats", type=int, default=3)
    bench.add_argument("--bins", type=int)
    bench.add_argument("--inner-cap", type=int, default=100)
    bench.add_argument("--outer-cap", type=int, default=50)
    bench.add_argument("--out", default="harr-out")

    trace = sub.add_parser("trace", help="export plot-ready objective traces")
    trace.add_argument(
        "--report", action="append", required=True, help="report file (repeatable)"
    )
    trace.add_argument("--out", required=True, help="output trace file")

    return parser


def _do_cluster(args: argparse.Namespace) -> int:
    cfg = BenchConfig(
        data=args.data,
        schema=args.schema,
        labels=args.labels,
        variants=tuple(args.variant) if args.variant else ("HARR-V", "HARR-M"),
        k=args.k,
        runs=args.runs,
        base_seed=args.seed,
        bins=args.bins,
        inner_cap=args.inner_cap,
        outer_cap=args.outer_cap,
        out_dir=args.out,
        workers=args.workers,
    )
    reports = cmd_cluster(cfg)
    capped = False
    for report in reports:
        if report.ari_mean is not None:
            scores = (
                f"ari {format_mean_std(report.ari_mean, report.ari_std)}  "
                f"ca {format_mean_std(report.ca_mean, report.ca_std)}"
            )
        else:
            scores = "no ground truth"
        n_capped = sum(not r.converged for r in report.run_reports)
        capped = capped or n_capped > 0
        note = f"  ({n_capped} run(s) hit caps)" if n_capped else ""
        print(f"{report.variant:<8} runs={report.runs}  {scores}{note}")
    print(f"reports written to {cfg.out_dir}")
    if args.strict and capped:
        return 4
    return 0


def _do_eval(args: argparse.Namespace) -> int:
    truth = read_label_file(args.labels)
    pred = read_label_file(args.pred)
    print(f"ARI: {ari(truth, pred):.6f}")
    print(f"CA: {ca(truth, pred):.6f}")
    return 0


def _do_synth(args: argparse.Namespace) -> int:
    spec = SyntheticSpec(
        n=args.n,
        k_true=args.k_true,
        d_u=args.d_u,
        d_n=args.d_n,
        d_o=args.d_o,
        values=args.values,
        separation=args.separation,
        seed=args.seed,
    )
    paths = write_synthetic(spec, args.out)
    for kind, path in paths.items():
        print(f"{kind}: {path}")
    return 0


def _do_bench_time(args: argparse.Namespace) -> int:
    cfg = BenchConfig(
        data=args.data,
        schema=args.schema,
        variants=tuple(args.variant) if args.variant else ("HARR-V", "HARR-M"),
        k=args.k,
        base_seed=args.seed,
        bins=args.bins,
        inner_cap=args.inner_cap,
        outer_cap=args.outer_cap,
        out_dir=args.out,
        phis=tuple(args.phi) if args.phi else (0.001, 0.2, 0.4, 0.6, 0.8, 1.0),
        repeats=args.repeats,
    )
    rows = cmd_bench_time(cfg)
    for phi, n_sub, variant, seconds in rows:
        print(f"phi={phi:g} n={n_sub} {variant}: {seconds:.6f}s")
    print(f"tables written to {cfg.out_dir}")
    return 0


def _do_trace(args: argparse.Namespace) -> int:
    path = cmd_trace_plot(args.report, args.out)
    print(f"trace written to {path}")
    return 0


_HANDLERS = {
    "cluster": _do_cluster,
    "eval": _do_eval,
    "synth": _do_synth,
    "bench-time": _do_bench_time,
    "trace": _do_trace,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except (SchemaError, DataError, OSError, ValueError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
