"""Experiment harness: single compilations and parameter sweeps, emitting CSV/JSON.

Every run is keyed by (seed, cell identifiers, run index) through a seed
sequence, so re-running the same manifest reproduces byte-identical output
regardless of the worker count.
"""

from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .ansatz import EnsembleSpec, make_problem
from .gradients import cost_gradient, qwc_gradient
from .optimize import TrainingConfig, TrainingRecord, compile_circuit

_COST_IDS = {"qwc": 0, "hst": 1, "let": 2}


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def default_k(n: int) -> int:
    return math.ceil(n / 2)


@dataclass
class ExperimentConfig:
    """One experiment manifest; unset fields fall back to per-experiment defaults."""

    experiment: str  # compile | sweep_k | sweep_states | barren_plateau
    seed: int = 0
    out: str = "results"
    jobs: int = 1
    n: int | None = None
    n_range: list[int] | None = None
    entanglement: str = "linear"
    k: int | None = None
    k_range: list[int] | None = None
    ensemble_size: int | None = None
    ensemble_sizes: list[int] | None = None
    runs: int | None = None
    cost_kinds: list[str] = field(default_factory=lambda: ["qwc"])
    max_steps: int = 1000
    early_stop: bool = False
    success_threshold: float = 1e-3
    lr: float | None = None

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)


def _run_seed(seed: int, *key: int) -> list[int]:
    return [int(seed)] + [int(v) for v in key]


def _one_training_run(
    config: ExperimentConfig,
    n: int,
    k: int,
    size: int,
    cost_kind: str,
    run_index: int,
) -> TrainingRecord:
    cell = _run_seed(config.seed, n, k, size, _COST_IDS[cost_kind], run_index)
    rng = np.random.default_rng(cell)
    problem_seed = int(rng.integers(0, 2**31 - 1))
    ensemble_seed = int(rng.integers(0, 2**31 - 1))
    problem = make_problem(
        n, config.entanglement, k, EnsembleSpec(n, size, "fixed", ensemble_seed), problem_seed
    )
    training = TrainingConfig(
        cost_kind=cost_kind,
        max_steps=config.max_steps,
        success_threshold=config.success_threshold,
        early_stop=config.early_stop,
        lr=config.lr,
    )
    return compile_circuit(problem, training)


def _map_runs(fn, tasks, jobs: int):
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, tasks))
    return [fn(t) for t in tasks]


def _write_csv(path: str, header: list[str], rows: list[list[str]]) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _compile_task(args):
    config, n, k, size, cost_kind, run_index = args
    return _one_training_run(config, n, k, size, cost_kind, run_index)


def run_compile(config: ExperimentConfig) -> list[str]:
    """Train `runs` seeds per cost kind; write per-run history CSVs + summary JSON."""
    n = config.n if config.n is not None else 3
    k = config.k if config.k is not None else default_k(n)
    size = config.ensemble_size if config.ensemble_size is not None else 8
    runs = config.runs if config.runs is not None else 10

    written = []
    summary: dict = {"experiment": "compile", "n": n, "k": k, "ensemble_size": size, "costs": {}}
    for cost_kind in config.cost_kinds:
        tasks = [(config, n, k, size, cost_kind, r) for r in range(runs)]
        records = _map_runs(_compile_task, tasks, config.jobs)
        run_summaries = []
        for r, record in enumerate(records):
            path = os.path.join(config.out, f"history_{cost_kind}_run{r:03d}.csv")
            rows = [
                [str(step), _fmt(c), _fmt(g1), _fmt(g2)]
                for step, (c, g1, g2) in enumerate(
                    zip(record.costs, record.grad_l1, record.grad_l2)
                )
            ]
            _write_csv(path, ["step", "cost", "grad_l1", "grad_l2"], rows)
            written.append(path)
            entry = record.summary_dict()
            entry["run"] = r
            run_summaries.append(entry)
        successes = sum(1 for e in run_summaries if e["success"])
        summary["costs"][cost_kind] = {
            "runs": runs,
            "success_rate": successes / runs,
            "records": run_summaries,
        }
    path = os.path.join(config.out, "summary.json")
    os.makedirs(config.out, exist_ok=True)
    with open(path, "w") as fh:
        json.dump(summary, fh, indent=2, allow_nan=False, default=_json_inf)
    written.append(path)
    return written


def _json_inf(value):
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    raise TypeError(f"not JSON serializable: {value!r}")


def run_sweep_k(config: ExperimentConfig) -> list[str]:
    """Success rate per locality k (default 1..n) at fixed n."""
    n = config.n if config.n is not None else 4
    ks = config.k_range if config.k_range is not None else list(range(1, n + 1))
    size = config.ensemble_size if config.ensemble_size is not None else 8
    runs = config.runs if config.runs is not None else 30
    cost_kind = config.cost_kinds[0]

    rows = []
    for k in ks:
        tasks = [(config, n, k, size, cost_kind, r) for r in range(runs)]
        records = _map_runs(_compile_task, tasks, config.jobs)
        rate = sum(1 for rec in records if rec.success) / runs
        rows.append([str(n), config.entanglement, str(k), _fmt(rate), str(runs)])
    path = os.path.join(config.out, "sweep_k.csv")
    _write_csv(path, ["n", "entanglement", "k", "success_rate", "runs"], rows)
    return [path]


def run_sweep_states(config: ExperimentConfig) -> list[str]:
    """Success rate vs. ensemble size |A| (default 2..16) for each n (default 3..8)."""
    ns = config.n_range if config.n_range is not None else list(range(3, 9))
    if config.n is not None:
        ns = [config.n]
    sizes = (
        config.ensemble_sizes if config.ensemble_sizes is not None else list(range(2, 17))
    )
    runs = config.runs if config.runs is not None else 10
    cost_kind = config.cost_kinds[0]

    rows = []
    for n in ns:
        k = config.k if config.k is not None else default_k(n)
        for size in sizes:
            tasks = [(config, n, k, size, cost_kind, r) for r in range(runs)]
            records = _map_runs(_compile_task, tasks, config.jobs)
            rate = sum(1 for rec in records if rec.success) / runs
            rows.append([str(n), str(size), _fmt(rate), str(runs)])
    path = os.path.join(config.out, "sweep_states.csv")
    _write_csv(path, ["n", "num_states", "success_rate", "runs"], rows)
    return [path]


def _barren_task(args):
    config, n, k, size, cost_kind, run_index = args
    cell = _run_seed(config.seed, n, k, size, _COST_IDS[cost_kind], run_index)
    rng = np.random.default_rng(cell)
    problem_seed = int(rng.integers(0, 2**31 - 1))
    ensemble_seed = int(rng.integers(0, 2**31 - 1))
    problem = make_problem(
        n, config.entanglement, k, EnsembleSpec(n, size, "fixed", ensemble_seed), problem_seed
    )
    if cost_kind == "qwc":
        report = qwc_gradient(problem, problem.initial_params)
    else:
        report = cost_gradient(problem, problem.initial_params, cost_kind)
    return report.l1_norm, report.l2_norm


def run_barren_plateau(config: ExperimentConfig) -> list[str]:
    """Mean step-1 gradient norms per (n, cost kind) over fresh random problems."""
    ns = config.n_range if config.n_range is not None else list(range(3, 9))
    if config.n is not None:
        ns = [config.n]
    size = config.ensemble_size if config.ensemble_size is not None else 8
    runs = config.runs if config.runs is not None else 100

    rows = []
    for n in ns:
        k = config.k if config.k is not None else default_k(n)
        for cost_kind in config.cost_kinds:
            tasks = [(config, n, k, size, cost_kind, r) for r in range(runs)]
            norms = _map_runs(_barren_task, tasks, config.jobs)
            mean_l1 = float(np.mean([a for a, _ in norms]))
            mean_l2 = float(np.mean([b for _, b in norms]))
            rows.append([str(n), cost_kind, _fmt(mean_l1), _fmt(mean_l2), str(runs)])
    path = os.path.join(config.out, "barren_plateau.csv")
    _write_csv(path, ["n", "cost_kind", "mean_l1", "mean_l2", "runs"], rows)
    return [path]


RUNNERS = {
    "compile": run_compile,
    "sweep_k": run_sweep_k,
    "sweep_states": run_sweep_states,
    "barren_plateau": run_barren_plateau,
}


def run_experiment(config: ExperimentConfig) -> list[str]:
    if config.experiment not in RUNNERS:
        raise ValueError(f"unknown experiment {config.experiment!r}")
    return RUNNERS[config.experiment](config)
