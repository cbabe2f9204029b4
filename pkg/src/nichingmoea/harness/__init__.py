from .config import ExperimentConfig, load_config
from .experiment import (RunResult, dump_population, execute_run, median_run, read_results_csv,
                         reference_sets, run_experiment, run_matrix, write_results_csv)
from .tables import ComparisonTable, build_comparison, format_value, render_tables

__all__ = [
    "ExperimentConfig", "load_config", "RunResult", "dump_population", "execute_run", "median_run",
    "read_results_csv", "reference_sets", "run_experiment", "run_matrix", "write_results_csv",
    "ComparisonTable", "build_comparison", "format_value", "render_tables",
]
