"""Run matrix execution and result persistence."""

from __future__ import annotations

import csv
import functools
import os
from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from ..algorithms import run_algorithm
from ..core import Population, StateError
from ..dominance import non_dominated_sort
from ..indicators import igd_plus, igdx
from ..problems import get_problem, sample_reference_sets
from .config import ExperimentConfig
from .tables import ComparisonTable, build_comparison

RESULT_COLUMNS = ("problem", "algorithm", "run", "seed", "igdx", "igd_plus", "evaluations")


@dataclass
class RunResult:
    problem: str
    algorithm: str
    run_index: int
    seed: int
    igdx: float
    igd_plus: float
    evaluations_used: int
    final_population: Optional[Population] = None


@functools.lru_cache(maxsize=32)
def reference_sets(problem: str, size: int) -> tuple[np.ndarray, np.ndarray]:
    """Cached (Pareto set, Pareto front) samples; read-only."""
    ps, pf = sample_reference_sets(get_problem(problem), size)
    ps.setflags(write=False)
    pf.setflags(write=False)
    return ps, pf


def execute_run(cfg: ExperimentConfig, problem: str, algorithm: str, run_index: int) -> RunResult:
    spec = get_problem(problem)
    seed = cfg.seed_for(run_index)
    result = run_algorithm(spec, cfg.algorithm_config(algorithm), seed)
    ps, pf = reference_sets(spec.name, cfg.reference_set_size)
    pop = result.population
    return RunResult(spec.name, algorithm, run_index, seed, igdx(pop.X, ps), igd_plus(pop.F, pf),
                     result.evaluations_used, pop)


def _execute(args) -> RunResult:
    return execute_run(*args)


def run_matrix(cfg: ExperimentConfig, jobs: Optional[int] = None,
               executor: Optional[Executor] = None) -> list[RunResult]:
    """All runs of the matrix, sorted by (problem, algorithm, run) in config order.

    Runs go to ``executor`` when one is given, else to a fresh process pool
    of ``jobs`` workers (in-process when that is 1).
    """
    tasks = [(cfg, p, a, r) for p in cfg.problems for a in cfg.algorithms for r in range(cfg.runs)]
    jobs = cfg.jobs() if jobs is None else jobs
    if executor is not None:
        results = list(executor.map(_execute, tasks))
    elif jobs <= 1 or len(tasks) <= 1:
        results = [_execute(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as pool:
            results = list(pool.map(_execute, tasks, chunksize=1))
    p_order = {p: i for i, p in enumerate(cfg.problems)}
    a_order = {a: i for i, a in enumerate(cfg.algorithms)}
    results.sort(key=lambda r: (p_order[r.problem], a_order[r.algorithm], r.run_index))
    return results


# --- persistence -------------------------------------------------------------------

def write_results_csv(path: Path, results: Iterable[RunResult]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(RESULT_COLUMNS)
        for r in results:
            w.writerow([r.problem, r.algorithm, r.run_index, r.seed,
                        format(r.igdx, ".17g"), format(r.igd_plus, ".17g"), r.evaluations_used])


def read_results_csv(path: Path) -> list[RunResult]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or tuple(reader.fieldnames) != RESULT_COLUMNS:
            raise ValueError(f"{path}: expected header {','.join(RESULT_COLUMNS)}")
        return [RunResult(row["problem"], row["algorithm"], int(row["run"]), int(row["seed"]),
                          float(row["igdx"]), float(row["igd_plus"]), int(row["evaluations"]))
                for row in reader]


def dump_population(result, path: Path) -> Path:
    """Write the non-dominated members of a run's final population.

    Accepts a RunResult or a Population.  Header is x1..xD,f1..fM and every
    value carries 17 significant digits so a parse recovers it exactly.
    """
    pop = result.final_population if isinstance(result, RunResult) else result
    if pop is None or not pop.evaluated:
        raise StateError("dump_population needs an evaluated population")
    first = non_dominated_sort(pop).fronts[0] if len(pop) else np.empty(0, dtype=np.int64)
    D, M = pop.X.shape[1], pop.F.shape[1]
    path = Path(path)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([f"x{i + 1}" for i in range(D)] + [f"f{i + 1}" for i in range(M)])
        for i in first:
            w.writerow([format(v, ".17g") for v in np.concatenate([pop.X[i], pop.F[i]])])
    return path


def median_run(results: list[RunResult]) -> RunResult:
    """Run with the median IGD+ (lower median for even counts, ties by run index)."""
    ordered = sorted(results, key=lambda r: (r.igd_plus, r.run_index))
    return ordered[(len(ordered) - 1) // 2]


def population_filename(r: RunResult) -> str:
    return f"{r.problem}__{r.algorithm}__run{r.run_index:03d}.csv"


def run_experiment(cfg: ExperimentConfig, jobs: Optional[int] = None) -> ComparisonTable:
    """Execute the matrix and write results.csv, population dumps and tables.md.

    Outputs under ``cfg.output_directory``:
    results.csv, config.ini, populations/*.csv, median/*.csv and tables.md.
    Tables need at least two runs per cell; a one-run matrix still writes
    every CSV and returns a table of means without spreads.
    """
    out = cfg.output_directory
    (out / "populations").mkdir(parents=True, exist_ok=True)
    (out / "median").mkdir(parents=True, exist_ok=True)
    if not os.access(out, os.W_OK):
        raise PermissionError(f"output directory {out} is not writable")

    results = run_matrix(cfg, jobs)
    write_results_csv(out / "results.csv", results)
    (out / "config.ini").write_text(cfg.to_ini())
    for r in results:
        dump_population(r, out / "populations" / population_filename(r))
    for p in cfg.problems:
        for a in cfg.algorithms:
            cell = [r for r in results if r.problem == p and r.algorithm == a]
            dump_population(median_run(cell), out / "median" / f"{p}__{a}.csv")

    table = build_comparison(results, cfg.problems, cfg.algorithms, min_runs=1)
    (out / "tables.md").write_text(table.render())
    return table
