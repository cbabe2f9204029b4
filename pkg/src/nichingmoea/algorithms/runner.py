"""Generational loop shared by NSGA-II, SPEA2 and their niching variants."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from ..core import ConfigError, Population, RandomStream
from ..problems import ProblemSpec
from .selection import nsga2_select, spea2_select
from .variation import (VariationConfig, nsga2_prefers, polynomial_mutation_batch, sbx_batch,
                        spea2_prefers, tournament_pairs)

ALGORITHMS = ("nsga2", "niching_nsga2", "spea2", "niching_spea2")
BASELINE_OF = {"niching_nsga2": "nsga2", "niching_spea2": "spea2"}
DISPLAY_NAMES = {
    "nsga2": "NSGA-II",
    "niching_nsga2": "Niching-NSGA-II",
    "spea2": "SPEA2",
    "niching_spea2": "Niching-SPEA2",
}


@dataclass(frozen=True)
class AlgorithmConfig:
    name: str
    population_size: int = 100
    max_evaluations: int = 50_000
    niche_k: Union[int, str] = "auto"
    variation: VariationConfig = field(default_factory=VariationConfig)

    def __post_init__(self):
        if self.name not in ALGORITHMS:
            raise ConfigError(f"unknown algorithm {self.name!r}; known: {', '.join(ALGORITHMS)}")
        if int(self.population_size) != self.population_size or self.population_size < 4:
            raise ConfigError("population_size must be an integer >= 4")
        if self.max_evaluations < self.population_size:
            raise ConfigError("max_evaluations must be at least population_size")
        if self.niche_k != "auto" and (not isinstance(self.niche_k, (int, np.integer)) or self.niche_k < 1):
            raise ConfigError(f"niche_k must be 'auto' or a positive integer, got {self.niche_k!r}")

    @property
    def niching(self) -> bool:
        return self.name.startswith("niching_")

    @property
    def family(self) -> str:
        return "spea2" if self.name.endswith("spea2") else "nsga2"

    def resolved_niche_k(self) -> Optional[int]:
        """floor(sqrt(N)) for "auto"; None for the non-niching algorithms."""
        if not self.niching:
            return None
        if self.niche_k == "auto":
            return max(1, math.isqrt(self.population_size))
        return int(self.niche_k)


@dataclass
class AlgorithmResult:
    population: Population
    evaluations_used: int
    seed: int
    generations: int
    history: list[Population] = field(default_factory=list)


def _select(cfg: AlgorithmConfig, X, F, N, k):
    if cfg.family == "nsga2":
        idx, ranks, crowd = nsga2_select(X, F, N, k)
        return Population(X[idx], F[idx], rank=ranks[idx], diversity=crowd[idx])
    idx, fitness, density = spea2_select(X, F, N, k)
    return Population(X[idx], F[idx], diversity=density[idx], fitness=fitness[idx])


def _mating(cfg: AlgorithmConfig, pop: Population, count: int, rng: RandomStream) -> np.ndarray:
    a, b = tournament_pairs(len(pop), count, rng)
    if cfg.family == "nsga2":
        b_wins = nsga2_prefers(pop.rank, pop.diversity, a, b)
    else:
        b_wins = spea2_prefers(pop.fitness, a, b)
    return np.where(b_wins, b, a)


def run_algorithm(problem: ProblemSpec, cfg: AlgorithmConfig, seed: int,
                  record_history: bool = False) -> AlgorithmResult:
    """Run one seeded optimization until the evaluation budget is spent.

    Each generation creates ``population_size`` offspring by binary
    tournament, SBX and polynomial mutation, then selects survivors from
    parents plus offspring.  The returned population is the archive for the
    SPEA2 variants.
    """
    rng = RandomStream(seed)
    N = cfg.population_size
    k = cfg.resolved_niche_k()
    lower, upper = problem.lower, problem.upper

    X = rng.uniform(lower, upper, size=(N, problem.D))
    F = problem.evaluate_batch(X)
    evaluations = N
    pop = _select(cfg, X, F, N, k)
    history = [pop] if record_history else []
    generations = 0
    pairs = (N + 1) // 2

    while evaluations < cfg.max_evaluations:
        parents = _mating(cfg, pop, 2 * pairs, rng)
        c1, c2 = sbx_batch(pop.X[parents[:pairs]], pop.X[parents[pairs:]], cfg.variation, lower, upper, rng)
        children = np.empty((2 * pairs, problem.D))
        children[0::2] = c1
        children[1::2] = c2
        children = polynomial_mutation_batch(children[:N], cfg.variation, lower, upper, rng)
        Fc = problem.evaluate_batch(children)
        evaluations += N
        pop = _select(cfg, np.vstack([pop.X, children]), np.vstack([pop.F, Fc]), N, k)
        generations += 1
        if record_history:
            history.append(pop)

    return AlgorithmResult(pop, evaluations, int(seed), generations, history)
