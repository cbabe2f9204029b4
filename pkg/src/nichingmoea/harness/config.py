"""Experiment configuration: defaults follow the 31-run, N=100, 50k-evaluation protocol."""

from __future__ import annotations

import configparser
import dataclasses
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from ..algorithms import ALGORITHMS, AlgorithmConfig, VariationConfig
from ..core import ConfigError
from ..problems import PROBLEM_NAMES, get_problem

SECTION = "experiment"
VARIATION_SECTION = "variation"


def _split_names(value) -> tuple[str, ...]:
    if isinstance(value, str):
        value = value.replace(";", ",").split(",")
    return tuple(v.strip() for v in value if v and v.strip())


@dataclass(frozen=True)
class ExperimentConfig:
    problems: tuple[str, ...] = PROBLEM_NAMES
    algorithms: tuple[str, ...] = ALGORITHMS
    runs: int = 31
    population_size: int = 100
    max_evaluations: int = 50_000
    base_seed: int = 0
    reference_set_size: int = 10_000
    output_directory: Path = Path("results")
    parallelism: Union[int, str] = "auto"
    niche_k: Union[int, str] = "auto"
    variation: VariationConfig = field(default_factory=VariationConfig)

    def __post_init__(self):
        problems = []
        for name in _split_names(self.problems):
            try:
                problems.append(get_problem(name).name)
            except LookupError as exc:
                raise ConfigError(str(exc)) from None
        algorithms = _split_names(self.algorithms)
        for name in algorithms:
            if name not in ALGORITHMS:
                raise ConfigError(f"unknown algorithm {name!r}; known: {', '.join(ALGORITHMS)}")
        if not problems or not algorithms:
            raise ConfigError("need at least one problem and one algorithm")
        object.__setattr__(self, "problems", tuple(problems))
        object.__setattr__(self, "algorithms", algorithms)
        object.__setattr__(self, "output_directory", Path(self.output_directory))
        if self.runs < 1:
            raise ConfigError("runs must be >= 1")
        if self.reference_set_size < 1:
            raise ConfigError("reference_set_size must be positive")
        if self.parallelism != "auto" and (not isinstance(self.parallelism, int) or self.parallelism < 1):
            raise ConfigError("parallelism must be 'auto' or a positive integer")
        # surfaces invalid population/budget/niche settings early
        for name in algorithms:
            self.algorithm_config(name)

    def algorithm_config(self, name: str) -> AlgorithmConfig:
        return AlgorithmConfig(name, self.population_size, self.max_evaluations, self.niche_k, self.variation)

    def jobs(self) -> int:
        if self.parallelism == "auto":
            return os.cpu_count() or 1
        return int(self.parallelism)

    def seed_for(self, run_index: int) -> int:
        return self.base_seed + run_index

    def replace(self, **changes) -> "ExperimentConfig":
        return dataclasses.replace(self, **{k: v for k, v in changes.items() if v is not None})

    def to_ini(self) -> str:
        v = self.variation
        pm = "auto" if v.mutation_probability_per_variable is None else repr(v.mutation_probability_per_variable)
        lines = [
            f"[{SECTION}]",
            f"problems = {', '.join(self.problems)}",
            f"algorithms = {', '.join(self.algorithms)}",
            f"runs = {self.runs}",
            f"population_size = {self.population_size}",
            f"max_evaluations = {self.max_evaluations}",
            f"base_seed = {self.base_seed}",
            f"reference_set_size = {self.reference_set_size}",
            f"niche_k = {self.niche_k}",
            "",
            f"[{VARIATION_SECTION}]",
            f"crossover_probability = {v.crossover_probability!r}",
            f"crossover_distribution_index = {v.crossover_distribution_index!r}",
            f"mutation_probability_per_variable = {pm}",
            f"mutation_distribution_index = {v.mutation_distribution_index!r}",
            "",
        ]
        return "\n".join(lines)


def _int_or_auto(value: str) -> Union[int, str]:
    value = value.strip()
    if value.lower() == "auto":
        return "auto"
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"expected an integer or 'auto', got {value!r}") from None


def load_config(path: Optional[Path] = None, **overrides) -> ExperimentConfig:
    """Read an INI-style ``key = value`` file, then apply non-None overrides."""
    values: dict = {}
    variation: dict = {}
    if path is not None:
        parser = configparser.ConfigParser()
        try:
            with open(path) as fh:
                parser.read_file(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        except configparser.Error as exc:
            raise ConfigError(f"malformed config {path}: {exc}") from None
        if parser.has_section(SECTION):
            sec = parser[SECTION]
            try:
                for key in ("problems", "algorithms"):
                    if key in sec:
                        values[key] = _split_names(sec[key])
                for key in ("runs", "population_size", "max_evaluations", "base_seed", "reference_set_size"):
                    if key in sec:
                        values[key] = sec.getint(key)
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
            for key in ("parallelism", "niche_k"):
                if key in sec:
                    values[key] = _int_or_auto(sec[key])
            if "output_directory" in sec:
                values["output_directory"] = Path(sec["output_directory"])
            unknown = set(sec) - {f.name for f in dataclasses.fields(ExperimentConfig)}
            if unknown:
                raise ConfigError(f"unknown keys in [{SECTION}]: {', '.join(sorted(unknown))}")
        if parser.has_section(VARIATION_SECTION):
            sec = parser[VARIATION_SECTION]
            for key, raw in sec.items():
                if key not in {f.name for f in dataclasses.fields(VariationConfig)}:
                    raise ConfigError(f"unknown key in [{VARIATION_SECTION}]: {key}")
                try:
                    variation[key] = None if raw.strip().lower() == "auto" else float(raw)
                except ValueError:
                    raise ConfigError(f"{key} must be a number") from None
    if variation:
        values["variation"] = VariationConfig(**variation)
    values.update({k: v for k, v in overrides.items() if v is not None})
    return ExperimentConfig(**values)
