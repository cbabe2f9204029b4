"""Diversity estimators and their decision-space niching restriction.

Both estimators exist in a plain form (scored against the whole set) and a
niched form, where each solution is scored only against the ``k`` solutions
nearest to it in decision space.  The niched form with ``k = |S| - 1`` runs
the very same kernels on the very same rows as the plain form, so the two
agree bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numba
import numpy as np

from .core import DomainError, StateError, decisions_of, objectives_of


class Orientation(str, Enum):
    LARGER_IS_BETTER = "larger_is_better"
    SMALLER_IS_BETTER = "smaller_is_better"


@dataclass(frozen=True)
class DiversityEstimator:
    kind: str
    orientation: Orientation

    def __post_init__(self):
        expected = _ORIENTATIONS.get(self.kind)
        if expected is None:
            raise DomainError(f"unknown estimator {self.kind!r}")
        if self.orientation != expected:
            raise DomainError(f"{self.kind} must be {expected.value}")

    def better(self, a: float, b: float) -> bool:
        if self.orientation is Orientation.LARGER_IS_BETTER:
            return a > b
        return a < b


_ORIENTATIONS = {
    "crowding_distance": Orientation.LARGER_IS_BETTER,
    "spea2_density": Orientation.SMALLER_IS_BETTER,
}

CROWDING_DISTANCE = DiversityEstimator("crowding_distance", Orientation.LARGER_IS_BETTER)
SPEA2_DENSITY = DiversityEstimator("spea2_density", Orientation.SMALLER_IS_BETTER)


@dataclass(frozen=True)
class NicheConfig:
    """Niche = the ``k`` nearest solutions in decision space (Euclidean, raw units)."""

    k: int

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise DomainError(f"niche size must be a positive integer, got {self.k!r}")

    def check(self, n: int) -> None:
        if self.k > n - 1:
            raise DomainError(f"niche size {self.k} needs at least {self.k + 1} solutions, got {n}")


def density_neighbor_order(n: int) -> int:
    """SPEA2's k: floor(sqrt(n)), kept within [1, n - 1]."""
    return max(1, min(math.isqrt(n), n - 1))


# --- kernels -----------------------------------------------------------------

@numba.njit(cache=True)
def _dist(A, i, B, j):
    s = 0.0
    for d in range(A.shape[1]):
        diff = A[i, d] - B[j, d]
        s += diff * diff
    return math.sqrt(s)


@numba.njit(cache=True)
def _crowding(F):
    n, M = F.shape
    out = np.zeros(n)
    if n <= 2:
        out[:] = np.inf
        return out
    for m in range(M):
        order = np.argsort(F[:, m], kind="mergesort")
        out[order[0]] = np.inf
        out[order[n - 1]] = np.inf
        for p in range(1, n - 1):
            out[order[p]] += F[order[p + 1], m] - F[order[p - 1], m]
    for i in range(n):
        out[i] = out[i] / M
    return out


@numba.njit(cache=True)
def _sigma_one(F, members, pos, k):
    # distance from members[pos] to its k-th nearest other member, objective space
    c = members.shape[0]
    d = np.empty(c - 1)
    t = 0
    for a in range(c):
        if a != pos:
            d[t] = _dist(F, members[pos], F, members[a])
            t += 1
    return np.partition(d, k - 1)[k - 1]


@numba.njit(cache=True)
def _sigma_all(F, k):
    n = F.shape[0]
    members = np.arange(n)
    out = np.empty(n)
    for i in range(n):
        out[i] = _sigma_one(F, members, i, k)
    return out


@numba.njit(cache=True)
def _neighbor_order(X):
    # row i: all j != i sorted by decision distance, ties by smaller index
    n = X.shape[0]
    order = np.empty((n, n - 1), np.int64)
    d = np.empty(n - 1)
    idx = np.empty(n - 1, np.int64)
    for i in range(n):
        t = 0
        for j in range(n):
            if j != i:
                d[t] = _dist(X, i, X, j)
                idx[t] = j
                t += 1
        o = np.argsort(d, kind="mergesort")
        for t in range(n - 1):
            order[i, t] = idx[o[t]]
    return order


@numba.njit(cache=True)
def _niches(X, k):
    # row i: i plus its k nearest (ties -> smaller index), ascending by population index;
    # same set as the first k entries of _neighbor_order without sorting whole rows
    n = X.shape[0]
    out = np.empty((n, k + 1), np.int64)
    d = np.empty(n)
    for i in range(n):
        for j in range(n):
            d[j] = _dist(X, i, X, j)
        d[i] = np.inf
        kth = np.partition(d, k - 1)[k - 1] if k < n - 1 else np.inf
        below = 0
        for j in range(n):
            if j != i and d[j] < kth:
                below += 1
        t = 0
        ties = k - below
        for j in range(n):
            if j == i:
                out[i, t] = i
                t += 1
            elif d[j] < kth:
                out[i, t] = j
                t += 1
            elif d[j] == kth and ties > 0:
                out[i, t] = j
                t += 1
                ties -= 1
    return out


@numba.njit(cache=True)
def _niched_crowding(X, F, k):
    n = F.shape[0]
    niches = _niches(X, k)
    out = np.empty(n)
    for i in range(n):
        members = niches[i]
        cd = _crowding(F[members])
        for p in range(k + 1):
            if members[p] == i:
                out[i] = cd[p]
    return out


@numba.njit(cache=True)
def _niched_sigma(X, F, k, inner_k):
    n = F.shape[0]
    niches = _niches(X, k)
    out = np.empty(n)
    for i in range(n):
        members = niches[i]
        for p in range(k + 1):
            if members[p] == i:
                out[i] = _sigma_one(F, members, p, inner_k)
    return out


# --- public operations ---------------------------------------------------------

def _contiguous(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def crowding_distance(pop) -> np.ndarray:
    """NSGA-II crowding distance without normalization.

    Best and worst members of every objective score +inf; any other member
    scores the mean over objectives of the gap between its two sorted
    neighbours.  Equal objective values keep population order when sorted.
    """
    F = objectives_of(pop)
    if F.shape[0] == 0:
        raise DomainError("crowding distance of an empty population")
    return _crowding(_contiguous(F))


def spea2_sigma_k(pop, k: int) -> np.ndarray:
    """Objective-space distance from each member to its k-th nearest other member."""
    F = objectives_of(pop)
    n = F.shape[0]
    if not 1 <= k <= n - 1:
        raise DomainError(f"k={k} outside [1, {n - 1}]")
    return _sigma_all(_contiguous(F), int(k))


def spea2_density(sigma_k) -> np.ndarray:
    sigma = np.asarray(sigma_k, dtype=float)
    if np.any(sigma < 0) or np.any(np.isnan(sigma)):
        raise DomainError("sigma_k must be non-negative")
    return 1.0 / (sigma + 2.0)


def decision_space_knn(pop, i: int, k: int) -> np.ndarray:
    """Indices of the k members closest to member i in decision space.

    Returned in order of increasing distance; equal distances go to the
    smaller index first.
    """
    X = decisions_of(pop)
    n = X.shape[0]
    if not 1 <= k <= n - 1:
        raise DomainError(f"k={k} outside [1, {n - 1}]")
    if not 0 <= i < n:
        raise IndexError(i)
    d = np.sqrt(np.sum((X - X[i]) ** 2, axis=1))
    others = np.delete(np.arange(n), i)
    order = np.argsort(d[others], kind="stable")
    return others[order[:k]]


def diversity(pop, estimator: DiversityEstimator) -> np.ndarray:
    """Plain (un-niched) estimator over the whole set."""
    F = objectives_of(pop)
    if estimator.kind == "crowding_distance":
        return crowding_distance(F)
    n = F.shape[0]
    if n < 2:
        raise DomainError("density needs at least two solutions")
    return spea2_density(spea2_sigma_k(F, density_neighbor_order(n)))


def niched_diversity(pop, estimator: DiversityEstimator, niche: NicheConfig) -> np.ndarray:
    """Score every member within its own decision-space niche.

    Member i is scored against the sub-population made of itself and its
    ``niche.k`` nearest neighbours in decision space.  For SPEA2 density the
    objective-space neighbour order inside the niche is floor(sqrt(k + 1)).
    """
    X = decisions_of(pop)
    F = objectives_of(pop)
    n = F.shape[0]
    if X.shape[0] != n:
        raise StateError("decision and objective rows differ")
    niche.check(n)
    return niched_scores(X, F, estimator, int(niche.k))


def niched_scores(X: np.ndarray, F: np.ndarray, estimator: DiversityEstimator, k: int) -> np.ndarray:
    """Array-level core of :func:`niched_diversity`; ``k`` must be in [1, n - 1]."""
    X = _contiguous(X)
    F = _contiguous(F)
    if estimator.kind == "crowding_distance":
        return _niched_crowding(X, F, k)
    inner = max(1, min(math.isqrt(k + 1), k))
    return spea2_density(_niched_sigma(X, F, k, inner))
