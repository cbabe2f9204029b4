"""Pareto dominance, non-dominated sorting and SPEA2 strength/raw fitness (minimization)."""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .core import DimensionError, objectives_of


def dominates(a, b) -> bool:
    """True iff ``a`` is no worse than ``b`` everywhere and strictly better somewhere."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise DimensionError(f"objective vectors differ in length: {a.shape} vs {b.shape}")
    return bool(np.all(a <= b) and np.any(a < b))


@numba.njit(cache=True)
def _dom(F, i, j):
    # 1 if i dominates j, -1 if j dominates i, 0 otherwise
    better = False
    worse = False
    for m in range(F.shape[1]):
        if F[i, m] < F[j, m]:
            better = True
        elif F[i, m] > F[j, m]:
            worse = True
        if better and worse:
            return 0
    if better and not worse:
        return 1
    if worse and not better:
        return -1
    return 0


@numba.njit(cache=True)
def _nds_ranks(F):
    n = F.shape[0]
    count = np.zeros(n, np.int64)
    dominated = np.zeros((n, n), np.int64)
    n_dominated = np.zeros(n, np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            d = _dom(F, i, j)
            if d == 1:
                dominated[i, n_dominated[i]] = j
                n_dominated[i] += 1
                count[j] += 1
            elif d == -1:
                dominated[j, n_dominated[j]] = i
                n_dominated[j] += 1
                count[i] += 1
    rank = np.full(n, -1, np.int64)
    current = np.empty(n, np.int64)
    nxt = np.empty(n, np.int64)
    size = 0
    for i in range(n):
        if count[i] == 0:
            rank[i] = 0
            current[size] = i
            size += 1
    r = 0
    while size > 0:
        nsize = 0
        for a in range(size):
            p = current[a]
            for b in range(n_dominated[p]):
                q = dominated[p, b]
                count[q] -= 1
                if count[q] == 0:
                    rank[q] = r + 1
                    nxt[nsize] = q
                    nsize += 1
        r += 1
        for a in range(nsize):
            current[a] = nxt[a]
        size = nsize
    return rank


@numba.njit(cache=True)
def _strength_raw(F):
    n = F.shape[0]
    strength = np.zeros(n, np.int64)
    dom = np.zeros((n, n), np.bool_)
    for i in range(n):
        for j in range(i + 1, n):
            d = _dom(F, i, j)
            if d == 1:
                dom[i, j] = True
                strength[i] += 1
            elif d == -1:
                dom[j, i] = True
                strength[j] += 1
    raw = np.zeros(n, np.float64)
    for i in range(n):
        for j in range(n):
            if dom[j, i]:
                raw[i] += strength[j]
    return strength, raw


@dataclass(frozen=True)
class FrontPartition:
    """Fronts as ascending index arrays, plus the front index of every member."""

    fronts: list[np.ndarray]
    ranks: np.ndarray

    def __len__(self):
        return len(self.fronts)

    def __iter__(self):
        return iter(self.fronts)

    def __getitem__(self, i):
        return self.fronts[i]


def fronts_from_ranks(ranks: np.ndarray) -> list[np.ndarray]:
    n_fronts = int(ranks.max()) + 1 if len(ranks) else 0
    return [np.flatnonzero(ranks == r) for r in range(n_fronts)]


def non_dominated_sort(pop) -> FrontPartition:
    """Partition a population (or objective matrix) into Pareto fronts.

    Uses the O(M N^2) fast non-dominated sort.  Members with equal objective
    vectors never dominate each other and share a front.
    """
    F = np.ascontiguousarray(objectives_of(pop), dtype=np.float64)
    ranks = _nds_ranks(F)
    return FrontPartition(fronts_from_ranks(ranks), ranks)


def spea2_strength_and_raw(pop) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(strength, raw)``.

    strength[i] counts the members i dominates; raw[i] sums the strengths of
    the members dominating i, so it is 0 exactly on the first front.
    """
    F = np.ascontiguousarray(objectives_of(pop), dtype=np.float64)
    return _strength_raw(F)
