"""Command-line interface: single experiments, table suites, and rank tests."""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from .algorithms import DEFAULT_BUDGET
from .harness import RunConfig, export, mix_seed, read_summary_evaluations, run_batch
from .stats import mann_whitney_u

TABLE1_METRICS = ("hv", "igd", "oneobj", "oneobj10", "oneobj50")
TABLE1_ALGOS = ("two-rate", "log-normal", "var-ctrl")
SUITE_PROBLEMS = ("oneminmax", "lotz", "cocz")


def _add_run_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, default=100, help="problem dimension")
    p.add_argument("--lambda", dest="lam", type=int, default=10, help="offspring per generation")
    p.add_argument("--runs", type=int, default=100, help="independent runs")
    p.add_argument("--seed", type=int, required=True, help="base seed")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="evaluation budget per run")
    p.add_argument("--stride", type=int, default=50, help="generations between trajectory rows")
    p.add_argument("--workers", type=int, default=1, help="parallel worker processes")
    p.add_argument("--out", type=Path, required=True, help="output directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gsemo")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run one algorithm/problem cell")
    run_p.add_argument("--problem", required=True, choices=SUITE_PROBLEMS)
    run_p.add_argument(
        "--algo",
        required=True,
        choices=("static", "two-rate", "log-normal", "var-ctrl", "agsemo"),
    )
    run_p.add_argument("--metric", default=None, choices=TABLE1_METRICS)
    run_p.add_argument("--first-hits", action="store_true", help="log per-vector first-hit times")
    _add_run_args(run_p)

    suite_p = sub.add_parser("suite", help="run every cell of a paper table")
    suite_p.add_argument("table", choices=("table1", "table2"))
    _add_run_args(suite_p)

    stats_p = sub.add_parser("stats", help="Mann-Whitney U test on two summary files")
    stats_p.add_argument("summary_a", type=Path)
    stats_p.add_argument("summary_b", type=Path)
    stats_p.add_argument("--method", default="auto", choices=("auto", "exact", "normal"))
    return parser


def _run_cell(cfg: RunConfig, out_dir: Path, workers: int) -> dict:
    result = run_batch(cfg, workers=workers)
    export(result, out_dir)
    label = f"{cfg.problem} {cfg.algorithm}" + (f" {cfg.metric}" if cfg.metric else "")
    if result.summary is None:
        print(f"{label}: no run completed within budget ({cfg.budget} evaluations)")
        return {"mean": "", "variance": "", "count": 0}
    s = result.summary
    flag = "" if result.all_completed else f" [{len(result.incomplete_run_ids)} incomplete]"
    print(f"{label}: mean={s.mean:.1f} variance={s.variance:.4g} runs={s.count}{flag}")
    return {"mean": s.mean, "variance": s.variance, "count": s.count}


def _suite_cells(table: str) -> list[tuple[str, str, str | None]]:
    cells: list[tuple[str, str, str | None]] = []
    for problem in SUITE_PROBLEMS:
        if table == "table1":
            cells.append((problem, "static", None))
            for algo in TABLE1_ALGOS:
                for metric in TABLE1_METRICS:
                    cells.append((problem, algo, metric))
        else:
            cells.append((problem, "agsemo", None))
    return cells


def cmd_run(args) -> int:
    cfg = RunConfig(
        problem=args.problem,
        n=args.n,
        algorithm=args.algo,
        metric=args.metric,
        lam=args.lam,
        runs=args.runs,
        base_seed=args.seed,
        budget=args.budget,
        trajectory_stride=args.stride,
        capture_first_hits=args.first_hits,
    )
    _run_cell(cfg, args.out, args.workers)
    return 0


def cmd_suite(args) -> int:
    cells = _suite_cells(args.table)
    rows = []
    for idx, (problem, algo, metric) in enumerate(cells):
        cfg = RunConfig(
            problem=problem,
            n=args.n,
            algorithm=algo,
            metric=metric,
            lam=args.lam,
            runs=args.runs,
            base_seed=mix_seed(args.seed, idx),
            budget=args.budget,
            trajectory_stride=args.stride,
        )
        cell_dir = args.out / "__".join(filter(None, (problem, algo, metric)))
        cell = _run_cell(cfg, cell_dir, args.workers)
        rows.append(
            {"problem": problem, "algorithm": algo, "metric": metric or "", **cell}
        )
    table_path = args.out / f"{args.table}_means.csv"
    with table_path.open("w", newline="") as fh:
        w = csv.DictWriter(
            fh,
            fieldnames=["problem", "algorithm", "metric", "mean", "variance", "count"],
            lineterminator="\n",
        )
        w.writeheader()
        w.writerows(rows)
    print(f"wrote {table_path}")
    return 0


def cmd_stats(args) -> int:
    a = read_summary_evaluations(args.summary_a)
    b = read_summary_evaluations(args.summary_b)
    u, p = mann_whitney_u(a, b, method=args.method)
    print(f"U={u} p={p}")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return cmd_run(args)
    if args.command == "suite":
        return cmd_suite(args)
    return cmd_stats(args)


if __name__ == "__main__":
    sys.exit(main())
