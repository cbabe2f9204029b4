"""Command line entry point.

Exit codes: 0 success, 2 configuration error, 3 I/O error, 4 incomplete data.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from ..core import ConfigError, IncompleteDataError
from ..problems import export_reference_sets
from .config import load_config
from .experiment import execute_run, read_results_csv, run_experiment
from .tables import render_tables

EXIT_OK, EXIT_CONFIG, EXIT_IO, EXIT_INCOMPLETE = 0, 2, 3, 4


def _jobs(value: str):
    return "auto" if value == "auto" else int(value)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="INI file with an [experiment] section")
    p.add_argument("--problems", help="comma-separated problem names")
    p.add_argument("--algorithms", help="comma-separated algorithm names")
    p.add_argument("--runs", type=int)
    p.add_argument("--pop", type=int, dest="population_size")
    p.add_argument("--evals", type=int, dest="max_evaluations")
    p.add_argument("--seed", type=int, dest="base_seed")
    p.add_argument("--refsize", type=int, dest="reference_set_size")
    p.add_argument("--out", type=Path, dest="output_directory")
    p.add_argument("--jobs", type=_jobs, dest="parallelism", help="worker processes or 'auto'")


def build_parser() -> argparse.ArgumentParser:
    # argparse usage errors exit with 2, the same code as a config error
    parser = argparse.ArgumentParser(prog="nichingmoea", description="Niching NSGA-II / SPEA2 benchmark harness")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (("run", "run the full experiment matrix"),
                       ("single", "one run; prints IGDX, IGD+ and evaluations"),
                       ("table", "re-render tables from OUT/results.csv"),
                       ("dump-refsets", "export Pareto set and front reference samples")):
        _common(sub.add_parser(name, help=text))
    return parser


def _config(args):
    overrides = {k: getattr(args, k) for k in ("problems", "algorithms", "runs", "population_size",
                                                "max_evaluations", "base_seed", "reference_set_size",
                                                "output_directory", "parallelism")}
    return load_config(args.config, **overrides)


def _cmd_run(args) -> int:
    cfg = _config(args)
    start = time.perf_counter()
    table = run_experiment(cfg)
    print(table.render(), end="")
    print(f"wrote {cfg.output_directory} in {time.perf_counter() - start:.1f} s", file=sys.stderr)
    return EXIT_OK


def _cmd_single(args) -> int:
    cfg = _config(args)
    r = execute_run(cfg, cfg.problems[0], cfg.algorithms[0], 0)
    print(f"problem={r.problem} algorithm={r.algorithm} seed={r.seed}")
    print(f"igdx={r.igdx:.17g}")
    print(f"igd_plus={r.igd_plus:.17g}")
    print(f"evaluations={r.evaluations_used}")
    return EXIT_OK


def _cmd_table(args) -> int:
    cfg = _config(args)
    path = cfg.output_directory / "results.csv"
    try:
        results = read_results_csv(path)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    # only restrict to explicit selections; otherwise render whatever the file holds
    problems = cfg.problems if args.problems or args.config else None
    algorithms = cfg.algorithms if args.algorithms or args.config else None
    text = render_tables(results, problems, algorithms)
    (cfg.output_directory / "tables.md").write_text(text)
    print(text, end="")
    return EXIT_OK


def _cmd_dump_refsets(args) -> int:
    cfg = _config(args)
    for path in export_reference_sets(cfg.problems, cfg.reference_set_size, cfg.output_directory):
        print(path)
    return EXIT_OK


COMMANDS = {"run": _cmd_run, "single": _cmd_single, "table": _cmd_table, "dump-refsets": _cmd_dump_refsets}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, LookupError) as exc:
        if isinstance(exc, IncompleteDataError):
            print(f"incomplete data: {exc}", file=sys.stderr)
            return EXIT_INCOMPLETE
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
