"""IGD+ (objective space), IGDX (decision space) and multi-modality diagnostics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import DimensionError, DomainError, decisions_of, objectives_of
from .problems import ProblemSpec, sample_subsets

_CHUNK = 2048


@dataclass(frozen=True)
class IndicatorResult:
    name: str
    value: float
    reference_size: int


def _check(solutions, reference):
    A = np.atleast_2d(np.asarray(solutions, dtype=float))
    R = np.atleast_2d(np.asarray(reference, dtype=float))
    if A.size == 0 or R.size == 0:
        raise DomainError("indicator needs non-empty solution and reference sets")
    if A.shape[1] != R.shape[1]:
        raise DimensionError(f"dimension mismatch: {A.shape[1]} vs {R.shape[1]}")
    return A, R


def _mean_nearest(A, R, plus: bool) -> float:
    total = 0.0
    for start in range(0, len(R), _CHUNK):
        r = R[start:start + _CHUNK]
        diff = A[None, :, :] - r[:, None, :]
        if plus:
            diff = np.maximum(diff, 0.0)
        d = np.sqrt(np.sum(diff * diff, axis=2))
        total += d.min(axis=1).sum()
    return total / len(R)


def igd_plus(solutions, reference) -> float:
    """Mean over reference points of the dominance-clamped distance to the nearest solution."""
    A, R = _check(solutions, reference)
    return _mean_nearest(A, R, plus=True)


def igdx(solutions, reference) -> float:
    """Mean over reference decision vectors of the distance to the nearest solution."""
    A, R = _check(solutions, reference)
    return _mean_nearest(A, R, plus=False)


def equivalent_pairs(solutions, delta: float) -> int:
    """Unordered pairs whose objective vectors lie within ``delta`` of each other."""
    if delta <= 0:
        raise DomainError("delta must be positive")
    F = objectives_of(solutions)
    d = np.sqrt(np.sum((F[:, None, :] - F[None, :, :]) ** 2, axis=2))
    iu = np.triu_indices(len(F), k=1)
    return int(np.count_nonzero(d[iu] <= delta))


def default_coverage_radius(points: np.ndarray) -> float:
    """5% of the bounding-box diagonal of one subset's reference points."""
    return 0.05 * float(np.linalg.norm(points.max(axis=0) - points.min(axis=0)))


def subset_coverage(solutions, spec: ProblemSpec, radius: Optional[float] = None,
                    reference_size: int = 10_000) -> int:
    """Number of equivalent Pareto subsets with a solution near one of their reference points.

    With ``radius=None`` each subset uses :func:`default_coverage_radius`.
    """
    X = decisions_of(solutions)
    covered = 0
    for ps, _ in sample_subsets(spec, max(reference_size, spec.equivalent_subset_count)):
        r = default_coverage_radius(ps) if radius is None else radius
        d = np.sqrt(np.sum((X[:, None, :] - ps[None, :, :]) ** 2, axis=2))
        if np.any(d <= r):
            covered += 1
    return covered
