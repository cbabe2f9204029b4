"""Environmental selection for NSGA-II, SPEA2 and their niching variants.

A niche size larger than the set being scored is clamped to ``|S| - 1`` (the
whole set), so a ``k`` at least as large as the merged population makes the
niching variants behave exactly like the originals.  Every tie-break favours
the member with the smaller index in the merged population, and survivors
keep their merged-population order.
"""

from __future__ import annotations

from typing import Optional

import numba
import numpy as np

from ..core import DomainError, Population, decisions_of, objectives_of
from ..diversity import (CROWDING_DISTANCE, SPEA2_DENSITY, NicheConfig, _dist, _neighbor_order,
                         diversity, niched_scores)
from ..dominance import _nds_ranks, _strength_raw, fronts_from_ranks

_WHOLE_SET = -1


def _scores(X, F, estimator, k: Optional[int]) -> np.ndarray:
    n = F.shape[0]
    if k is None or n < 2:
        return diversity(F, estimator)
    return niched_scores(X, F, estimator, min(k, n - 1))


# --- NSGA-II ---------------------------------------------------------------------

def nsga2_select(X: np.ndarray, F: np.ndarray, N: int, k: Optional[int] = None):
    """Indices of the N survivors plus per-member ranks and crowding values.

    Crowding (niched when ``k`` is given) is computed inside each admitted
    front; members of fronts never reached keep NaN.
    """
    n = F.shape[0]
    if n < N:
        raise DomainError(f"cannot select {N} survivors from {n}")
    ranks = _nds_ranks(np.ascontiguousarray(F, dtype=np.float64))
    crowd = np.full(n, np.nan)
    chosen: list[np.ndarray] = []
    filled = 0
    for front in fronts_from_ranks(ranks):
        if filled == N:
            break
        cd = _scores(X[front], F[front], CROWDING_DISTANCE, k)
        crowd[front] = cd
        if filled + len(front) <= N:
            chosen.append(front)
            filled += len(front)
        else:
            best = np.argsort(-cd, kind="stable")[: N - filled]
            chosen.append(front[best])
            filled = N
    survivors = np.sort(np.concatenate(chosen))
    return survivors, ranks, crowd


def nsga2_environmental_selection(merged: Population, N: int, niche: Optional[NicheConfig] = None) -> Population:
    F = objectives_of(merged)
    X = decisions_of(merged)
    survivors, ranks, crowd = nsga2_select(X, F, N, None if niche is None else niche.k)
    return Population(X[survivors], F[survivors], rank=ranks[survivors], diversity=crowd[survivors])


# --- SPEA2 -----------------------------------------------------------------------

@numba.njit(cache=True)
def _lex_le(A, i, B, j, length):
    for t in range(length):
        if A[i, t] < B[j, t]:
            return True
        if A[i, t] > B[j, t]:
            return False
    return True


@numba.njit(cache=True)
def _pick_removal(keys, active, length):
    # lexicographically smallest key; on ties the later index is removed
    best = -1
    for i in range(active.shape[0]):
        if active[i]:
            if best < 0 or _lex_le(keys, i, keys, best, length):
                best = i
    return best


@numba.njit(cache=True)
def _truncate(X, F, target, k):
    n = F.shape[0]
    dobj = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            dobj[i, j] = _dist(F, i, F, j)
    active = np.ones(n, np.bool_)
    nact = n
    niching = k != -1 and k < n - 1
    order = _neighbor_order(X) if niching else np.empty((0, 0), np.int64)
    keys = np.empty((n, max(n - 1, 1)))
    lengths_ready = False

    while nact > target:
        if k == -1 or k >= nact - 1:
            # whole set: sorted distances to every other member, updated in place
            width = nact - 1
            if not lengths_ready:
                for i in range(n):
                    if active[i]:
                        t = 0
                        for j in range(n):
                            if active[j] and j != i:
                                keys[i, t] = dobj[i, j]
                                t += 1
                        keys[i, :width].sort()
                lengths_ready = True
            r = _pick_removal(keys, active, width)
            active[r] = False
            nact -= 1
            for i in range(n):
                if active[i]:
                    v = dobj[i, r]
                    lo = 0
                    hi = width
                    while lo < hi:
                        mid = (lo + hi) // 2
                        if keys[i, mid] < v:
                            lo = mid + 1
                        else:
                            hi = mid
                    for t in range(lo, width - 1):
                        keys[i, t] = keys[i, t + 1]
        else:
            # niche: the k nearest active members in decision space
            for i in range(n):
                if active[i]:
                    t = 0
                    p = 0
                    while t < k:
                        j = order[i, p]
                        if active[j]:
                            keys[i, t] = dobj[i, j]
                            t += 1
                        p += 1
                    keys[i, :k].sort()
            r = _pick_removal(keys, active, k)
            active[r] = False
            nact -= 1
    return active


def spea2_select(X: np.ndarray, F: np.ndarray, N: int, k: Optional[int] = None):
    """Indices of the N archive members plus the fitness of every merged member."""
    n = F.shape[0]
    if n < N:
        raise DomainError(f"cannot select {N} survivors from {n}")
    F = np.ascontiguousarray(F, dtype=np.float64)
    X = np.ascontiguousarray(X, dtype=np.float64)
    _, raw = _strength_raw(F)
    density = _scores(X, F, SPEA2_DENSITY, k)
    fitness = raw + density
    front = np.flatnonzero(raw == 0)
    if len(front) < N:
        survivors = np.sort(np.argsort(fitness, kind="stable")[:N])
    elif len(front) == N:
        survivors = front
    else:
        keep = _truncate(X[front], F[front], N, _WHOLE_SET if k is None else int(k))
        survivors = front[keep]
    return survivors, fitness, density


def spea2_environmental_selection(merged: Population, N: int, niche: Optional[NicheConfig] = None) -> Population:
    F = objectives_of(merged)
    X = decisions_of(merged)
    survivors, fitness, density = spea2_select(X, F, N, None if niche is None else niche.k)
    return Population(X[survivors], F[survivors], diversity=density[survivors], fitness=fitness[survivors])
