"""Shared data types: individuals, populations, bounds handling and seeded randomness."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np


class DimensionError(ValueError):
    """Vectors that should share a length do not."""


class StateError(RuntimeError):
    """An object is missing data required by the operation (e.g. unevaluated)."""


class DomainError(ValueError):
    """An argument lies outside the domain the operation accepts."""


class ConfigError(ValueError):
    """Invalid algorithm or experiment configuration."""


class IncompleteDataError(LookupError):
    """Result set lacks entries needed for aggregation."""

    def __init__(self, message: str, missing: Sequence[tuple[str, str]] = ()):
        super().__init__(message)
        self.missing = list(missing)


def _frozen(a: Optional[np.ndarray], dtype=float) -> Optional[np.ndarray]:
    if a is None:
        return None
    arr = np.array(a, dtype=dtype, copy=True)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class Individual:
    """One candidate solution.

    ``objectives`` is ``None`` until the individual is evaluated; the score
    fields are ``None`` until a selection step assigns them.
    """

    decision: np.ndarray
    objectives: Optional[np.ndarray] = None
    rank: Optional[int] = None
    diversity: Optional[float] = None
    fitness: Optional[float] = None

    @property
    def evaluated(self) -> bool:
        return self.objectives is not None


@dataclass(frozen=True, eq=False)
class Population:
    """An ordered, immutable set of individuals stored column-wise.

    ``X`` has shape (n, D); ``F`` has shape (n, M) or is ``None`` for an
    unevaluated population.  ``rank``, ``diversity`` and ``fitness`` are
    per-member arrays or ``None`` when unset.
    """

    X: np.ndarray
    F: Optional[np.ndarray] = None
    rank: Optional[np.ndarray] = None
    diversity: Optional[np.ndarray] = None
    fitness: Optional[np.ndarray] = None
    capacity: Optional[int] = None

    def __post_init__(self):
        X = np.atleast_2d(np.asarray(self.X, dtype=float))
        object.__setattr__(self, "X", _frozen(X))
        n = X.shape[0]
        if self.F is not None:
            F = np.atleast_2d(np.asarray(self.F, dtype=float))
            if F.shape[0] != n:
                raise DimensionError(f"{n} decision rows but {F.shape[0]} objective rows")
            object.__setattr__(self, "F", _frozen(F))
        for name, dtype in (("rank", np.int64), ("diversity", float), ("fitness", float)):
            value = getattr(self, name)
            if value is not None:
                if len(value) != n:
                    raise DimensionError(f"{name} has {len(value)} entries for {n} members")
                object.__setattr__(self, name, _frozen(value, dtype))
        if self.capacity is None:
            object.__setattr__(self, "capacity", n)
        elif n > self.capacity:
            raise DomainError(f"{n} members exceed capacity {self.capacity}")

    @classmethod
    def from_individuals(cls, members: Sequence[Individual], capacity: Optional[int] = None) -> "Population":
        if not members:
            raise DomainError("population needs at least one member")
        X = np.array([m.decision for m in members], dtype=float)
        F = None
        if all(m.evaluated for m in members):
            F = np.array([m.objectives for m in members], dtype=float)
        elif any(m.evaluated for m in members):
            raise StateError("population mixes evaluated and unevaluated members")

        def column(name, dtype):
            values = [getattr(m, name) for m in members]
            if any(v is None for v in values):
                return None
            return np.array(values, dtype=dtype)

        return cls(X, F, column("rank", np.int64), column("diversity", float),
                   column("fitness", float), capacity=capacity)

    def __len__(self) -> int:
        return self.X.shape[0]

    def __getitem__(self, i: int) -> Individual:
        def pick(a, cast):
            return None if a is None else cast(a[i])

        return Individual(
            decision=self.X[i],
            objectives=None if self.F is None else self.F[i],
            rank=pick(self.rank, int),
            diversity=pick(self.diversity, float),
            fitness=pick(self.fitness, float),
        )

    def __iter__(self):
        return (self[i] for i in range(len(self)))

    @property
    def evaluated(self) -> bool:
        return self.F is not None

    def subset(self, indices) -> "Population":
        idx = np.asarray(indices, dtype=np.int64)

        def take(a):
            return None if a is None else a[idx]

        return Population(self.X[idx], take(self.F), take(self.rank),
                          take(self.diversity), take(self.fitness))

    def replace(self, **changes) -> "Population":
        """Rebuild with some fields swapped; scores not mentioned are kept."""
        return dataclasses.replace(self, **changes)


def objectives_of(pop) -> np.ndarray:
    """Objective matrix of a Population or array-like, raising StateError if unevaluated."""
    if isinstance(pop, Population):
        if pop.F is None:
            raise StateError("population has not been evaluated")
        return pop.F
    F = np.asarray(pop, dtype=float)
    if F.ndim == 1:
        F = F[:, None]
    return F


def decisions_of(pop) -> np.ndarray:
    if isinstance(pop, Population):
        return pop.X
    X = np.asarray(pop, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    return X


class RandomStream:
    """Seeded PCG64 stream; one per run, never shared.

    Equal seeds give identical draws on every platform numpy supports, since
    PCG64 and the SeedSequence seeding are fully specified.
    """

    def __init__(self, seed: int):
        self.seed = int(seed)
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    def random(self, size=None):
        return self._gen.random(size)

    def integers(self, low, high=None, size=None):
        return self._gen.integers(low, high, size=size)

    def uniform(self, low, high, size=None):
        return self._gen.uniform(low, high, size)

    def raw_uint64(self, size: int) -> np.ndarray:
        return self._gen.bit_generator.random_raw(size)

    def __repr__(self):
        return f"RandomStream(seed={self.seed})"


def clamp_to_bounds(decision, lower, upper) -> np.ndarray:
    x = np.asarray(decision, dtype=float)
    lo = np.asarray(lower, dtype=float)
    hi = np.asarray(upper, dtype=float)
    if x.shape[-1] != lo.shape[-1] or lo.shape != hi.shape:
        raise DimensionError(f"lengths differ: {x.shape[-1]}, {lo.shape[-1]}, {hi.shape[-1]}")
    return np.minimum(hi, np.maximum(lo, x))


def euclidean_distance(a, b) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise DimensionError(f"lengths differ: {a.shape} vs {b.shape}")
    # math.dist scales before squaring, so tiny and huge gaps stay exact
    return math.dist(a.ravel().tolist(), b.ravel().tolist())
