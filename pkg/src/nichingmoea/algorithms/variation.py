"""Mating selection and real-coded variation (SBX + polynomial mutation).

The batch functions draw a fixed number of random values per call regardless
of which branches fire, so a run consumes its stream identically whatever the
population looks like.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..core import ConfigError, DimensionError, Individual, RandomStream, StateError, clamp_to_bounds

_EPS = 1.0e-14


@dataclass(frozen=True)
class VariationConfig:
    crossover_probability: float = 1.0
    crossover_distribution_index: float = 20.0
    # None means 1/D
    mutation_probability_per_variable: float | None = None
    mutation_distribution_index: float = 20.0

    def __post_init__(self):
        if not 0.0 <= self.crossover_probability <= 1.0:
            raise ConfigError("crossover_probability must lie in [0, 1]")
        pm = self.mutation_probability_per_variable
        if pm is not None and not 0.0 <= pm <= 1.0:
            raise ConfigError("mutation_probability_per_variable must lie in [0, 1]")
        if self.crossover_distribution_index <= 0 or self.mutation_distribution_index <= 0:
            raise ConfigError("distribution indices must be positive")

    def mutation_probability(self, D: int) -> float:
        p = self.mutation_probability_per_variable
        return 1.0 / D if p is None else p


# --- mating selection ---------------------------------------------------------

def tournament_pairs(n: int, count: int, rng: RandomStream) -> tuple[np.ndarray, np.ndarray]:
    """``count`` pairs of distinct indices in [0, n), each drawn uniformly."""
    first = rng.integers(0, n, size=count)
    second = rng.integers(0, n - 1, size=count)
    second = second + (second >= first)
    return first, second


def nsga2_prefers(rank: np.ndarray, crowding: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """True where ``b`` strictly beats ``a``: lower rank, then larger crowding."""
    return (rank[b] < rank[a]) | ((rank[b] == rank[a]) & (crowding[b] > crowding[a]))


def spea2_prefers(fitness: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return fitness[b] < fitness[a]


def binary_tournament(pop, rng: RandomStream, compare: Callable[[Individual, Individual], bool] | str = "nsga2") -> Individual:
    """Pick one member by a binary tournament; the first drawn wins ties.

    ``compare(a, b)`` returns True when ``b`` is strictly preferred over
    ``a``.  The strings ``"nsga2"`` (rank, then diversity) and ``"spea2"``
    (fitness) select the standard orderings.
    """
    n = len(pop)
    if n < 2:
        raise StateError("tournament needs at least two members")
    a, b = (int(v[0]) for v in tournament_pairs(n, 1, rng))
    ia, ib = pop[a], pop[b]
    if compare == "nsga2":
        if ia.rank is None or ib.rank is None or ia.diversity is None or ib.diversity is None:
            raise StateError("NSGA-II tournament needs rank and diversity")
        wins = ib.rank < ia.rank or (ib.rank == ia.rank and ib.diversity > ia.diversity)
    elif compare == "spea2":
        if ia.fitness is None or ib.fitness is None:
            raise StateError("SPEA2 tournament needs fitness")
        wins = ib.fitness < ia.fitness
    else:
        wins = bool(compare(ia, ib))
    return ib if wins else ia


# --- SBX ----------------------------------------------------------------------

def _sbx_spread(beta, rand, eta):
    alpha = 2.0 - beta ** -(eta + 1.0)
    with np.errstate(invalid="ignore", divide="ignore"):
        low = (rand * alpha) ** (1.0 / (eta + 1.0))
        high = (1.0 / (2.0 - rand * alpha)) ** (1.0 / (eta + 1.0))
    return np.where(rand <= 1.0 / alpha, low, high)


def sbx_batch(P1, P2, cfg: VariationConfig, lower, upper, rng: RandomStream) -> tuple[np.ndarray, np.ndarray]:
    """Bounded simulated binary crossover on paired rows of P1 and P2."""
    P1 = np.atleast_2d(np.asarray(P1, dtype=float))
    P2 = np.atleast_2d(np.asarray(P2, dtype=float))
    if P1.shape != P2.shape:
        raise DimensionError(f"parent shapes differ: {P1.shape} vs {P2.shape}")
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    if lower.shape[-1] != P1.shape[1]:
        raise DimensionError("bounds do not match decision dimension")
    n, D = P1.shape
    r_pair = rng.random(n)
    r_var = rng.random((n, D))
    r_spread = rng.random((n, D))
    r_swap = rng.random((n, D))

    eta = cfg.crossover_distribution_index
    active = (r_pair < cfg.crossover_probability)[:, None] & (r_var < 0.5) & (np.abs(P1 - P2) > _EPS)
    y1 = np.minimum(P1, P2)
    y2 = np.maximum(P1, P2)
    span = np.where(active, y2 - y1, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        beta_low = 1.0 + 2.0 * (y1 - lower) / span
        beta_high = 1.0 + 2.0 * (upper - y2) / span
    c1 = 0.5 * ((y1 + y2) - _sbx_spread(beta_low, r_spread, eta) * span)
    c2 = 0.5 * ((y1 + y2) + _sbx_spread(beta_high, r_spread, eta) * span)
    c1 = clamp_to_bounds(c1, lower, upper)
    c2 = clamp_to_bounds(c2, lower, upper)
    swap = r_swap < 0.5
    child1 = np.where(active, np.where(swap, c2, c1), P1)
    child2 = np.where(active, np.where(swap, c1, c2), P2)
    return child1, child2


def sbx_crossover(a: Individual, b: Individual, cfg: VariationConfig, bounds, rng: RandomStream) -> tuple[Individual, Individual]:
    lower, upper = bounds
    c1, c2 = sbx_batch(a.decision[None, :], b.decision[None, :], cfg, lower, upper, rng)
    return Individual(c1[0]), Individual(c2[0])


# --- polynomial mutation ------------------------------------------------------

def polynomial_mutation_batch(X, cfg: VariationConfig, lower, upper, rng: RandomStream) -> np.ndarray:
    X = np.atleast_2d(np.asarray(X, dtype=float))
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    if lower.shape[-1] != X.shape[1]:
        raise DimensionError("bounds do not match decision dimension")
    n, D = X.shape
    r_mut = rng.random((n, D))
    r_dir = rng.random((n, D))

    eta = cfg.mutation_distribution_index
    width = upper - lower
    d1 = (X - lower) / width
    d2 = (upper - X) / width
    power = 1.0 / (eta + 1.0)
    low_val = 2.0 * r_dir + (1.0 - 2.0 * r_dir) * (1.0 - d1) ** (eta + 1.0)
    high_val = 2.0 * (1.0 - r_dir) + 2.0 * (r_dir - 0.5) * (1.0 - d2) ** (eta + 1.0)
    with np.errstate(invalid="ignore"):
        deltaq = np.where(r_dir <= 0.5, low_val ** power - 1.0, 1.0 - high_val ** power)
    mutate = r_mut < cfg.mutation_probability(D)
    Y = np.where(mutate, X + deltaq * width, X)
    return clamp_to_bounds(Y, lower, upper)


def polynomial_mutation(x: Individual, cfg: VariationConfig, bounds, rng: RandomStream) -> Individual:
    lower, upper = bounds
    return Individual(polynomial_mutation_batch(x.decision[None, :], cfg, lower, upper, rng)[0])
