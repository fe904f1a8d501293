"""Batch execution, seed derivation, and file export.

Per-run seeds are derived from the base seed with the splitmix64 finalizer,
so any runtime reproduces the same per-run streams; the generator driving
each run is numpy's default PCG64. Batches are therefore invariant under the
degree of parallelism: every run owns its own generator, and records are
sorted by run id before export.
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from ._version import __version__
from .algorithms import DEFAULT_BUDGET, GenerationReport, make_algorithm
from .core import ObjectiveVector
from .indicators import parse_metric
from .problems import make_problem
from .stats import VARIANCE_DIVISOR, SampleSummary, summarize

_MASK64 = (1 << 64) - 1


def mix_seed(base_seed: int, index: int) -> int:
    """splitmix64 finalizer over (base_seed, index); documented constants."""
    z = (base_seed + (index + 1) * 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class RunConfig:
    problem: str
    n: int
    algorithm: str
    metric: str | None = None
    lam: int = 10
    runs: int = 100
    base_seed: int = 0
    budget: int = DEFAULT_BUDGET
    trajectory_stride: int = 50
    capture_first_hits: bool = False

    def __post_init__(self) -> None:
        if self.runs < 1 or self.lam < 1 or self.budget < 1:
            raise ValueError("runs, lam, and budget must all be >= 1")
        if self.trajectory_stride < 1:
            raise ValueError("trajectory_stride must be >= 1")
        make_problem(self.problem, self.n)  # validates problem token and n
        if self.metric is not None:
            parse_metric(self.metric)

    def estimator_params(self, seed: int) -> dict:
        params = dict(
            lam=self.lam,
            budget=self.budget,
            seed=seed,
            trajectory_stride=self.trajectory_stride,
            capture_first_hits=self.capture_first_hits,
        )
        if self.metric is not None:
            params["metric"] = self.metric
        return params


@dataclass
class RunRecord:
    run_id: int
    seed: int
    completed: bool
    evaluations_to_front: int
    evaluations: int
    trajectory: list[GenerationReport]
    first_hits: dict[ObjectiveVector, int] | None


@dataclass
class BatchResult:
    config: RunConfig
    records: list[RunRecord]
    summary: SampleSummary | None  # over completed runs only; None if none completed
    incomplete_run_ids: list[int] = field(default_factory=list)

    @property
    def all_completed(self) -> bool:
        return not self.incomplete_run_ids


def _execute_run(cfg: RunConfig, run_id: int) -> RunRecord:
    seed = mix_seed(cfg.base_seed, run_id)
    problem = make_problem(cfg.problem, cfg.n)
    algo = make_algorithm(cfg.algorithm, **cfg.estimator_params(seed))
    algo.fit(problem)
    return RunRecord(
        run_id=run_id,
        seed=seed,
        completed=algo.completed_,
        evaluations_to_front=algo.evaluations_to_front_,
        evaluations=algo.evaluations_,
        trajectory=algo.trajectory_,
        first_hits=algo.first_hits_,
    )


def run_batch(cfg: RunConfig, workers: int = 1) -> BatchResult:
    """Execute cfg.runs seed-isolated runs; results are worker-count invariant."""
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if workers == 1:
        records = [_execute_run(cfg, i) for i in range(cfg.runs)]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_execute_run, [cfg] * cfg.runs, range(cfg.runs)))
    records.sort(key=lambda r: r.run_id)
    completed = [r.evaluations_to_front for r in records if r.completed]
    return BatchResult(
        config=cfg,
        records=records,
        summary=summarize(completed) if completed else None,
        incomplete_run_ids=[r.run_id for r in records if not r.completed],
    )


def first_hit_grid(
    records: list[RunRecord],
) -> dict[ObjectiveVector, tuple[int, float]]:
    """Per objective vector: (number of runs that hit it, mean first-hit evals).

    Runs that never produced a vector are excluded from that vector's mean;
    the hit count is reported alongside so the coverage stays visible.
    """
    sums: dict[ObjectiveVector, int] = {}
    counts: dict[ObjectiveVector, int] = {}
    for rec in records:
        if rec.first_hits is None:
            raise ValueError(
                f"run {rec.run_id} has no first-hit log; enable capture_first_hits"
            )
        for y, t in rec.first_hits.items():
            sums[y] = sums.get(y, 0) + t
            counts[y] = counts.get(y, 0) + 1
    return {y: (counts[y], sums[y] / counts[y]) for y in sums}


def export(result: BatchResult, out_dir) -> dict[str, Path]:
    """Write summary/trajectory/first-hit CSVs plus a metadata echo file."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    cfg = result.config
    paths: dict[str, Path] = {}

    summary_path = out / "summary.csv"
    with summary_path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(
            [
                "run_id",
                "seed",
                "problem",
                "n",
                "algorithm",
                "metric",
                "lambda",
                "completed",
                "evaluations_to_front",
            ]
        )
        for r in result.records:
            w.writerow(
                [
                    r.run_id,
                    r.seed,
                    cfg.problem,
                    cfg.n,
                    cfg.algorithm,
                    cfg.metric or "",
                    cfg.lam,
                    "true" if r.completed else "false",
                    r.evaluations_to_front,
                ]
            )
    paths["summary"] = summary_path

    traj_path = out / "trajectory.csv"
    with traj_path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(
            [
                "run_id",
                "generation",
                "evaluations",
                "mutation_rate",
                "archive_size",
                "hv",
                "igd",
            ]
        )
        for r in result.records:
            for rep in r.trajectory:
                w.writerow(
                    [
                        r.run_id,
                        rep.generation,
                        rep.evaluations_used,
                        repr(rep.global_param),
                        rep.archive_size,
                        repr(rep.hv),
                        repr(rep.igd),
                    ]
                )
    paths["trajectory"] = traj_path

    if cfg.capture_first_hits:
        grid = first_hit_grid(result.records)
        fh_path = out / "first_hits.csv"
        with fh_path.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["y1", "y2", "hit_count", "mean_first_hit_evaluations"])
            for y in sorted(grid):
                count, mean = grid[y]
                w.writerow([y[0], y[1], count, repr(mean)])
        paths["first_hits"] = fh_path

    meta_path = out / "metadata.json"
    meta = {
        "config": asdict(cfg),
        "version": __version__,
        "rng": "numpy PCG64 (numpy.random.default_rng)",
        "seed_derivation": "splitmix64(base_seed, run_id)",
        "variance_divisor": VARIANCE_DIVISOR,
        "completed_runs": len(result.records) - len(result.incomplete_run_ids),
        "incomplete_run_ids": result.incomplete_run_ids,
        "summary": asdict(result.summary) if result.summary else None,
    }
    meta_path.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    paths["metadata"] = meta_path
    return paths


def read_summary_evaluations(path) -> list[float]:
    """Completed runs' evaluations-to-front from an exported summary.csv."""
    values: list[float] = []
    with Path(path).open(newline="") as fh:
        for row in csv.DictReader(fh):
            if row["completed"] == "true":
                values.append(float(row["evaluations_to_front"]))
    return values
