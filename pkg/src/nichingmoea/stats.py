"""Summary statistics and the two-sided Wilcoxon rank-sum test used for +/-/~ verdicts."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.stats import norm, rankdata

from .core import DomainError

SIGNIFICANCE = 0.05
MIN_SAMPLE = 10
# both samples at most this size: exact null distribution instead of the normal tail
EXACT_LIMIT = 20


class Symbol(str, Enum):
    PLUS = "plus"
    MINUS = "minus"
    APPROX = "approx"

    @property
    def glyph(self) -> str:
        return {"plus": "+", "minus": "-", "approx": "≈"}[self.value]


@dataclass(frozen=True)
class ComparisonVerdict:
    """``PLUS`` means the first sample is significantly better (smaller)."""

    symbol: Symbol
    p_value: float


def mean_std(values) -> tuple[float, float]:
    v = np.asarray(values, dtype=float)
    if v.size < 2:
        raise DomainError("mean/std needs at least two values")
    return float(v.mean()), float(v.std(ddof=1))


def _exact_p_value(ranks: np.ndarray, n1: int) -> float:
    # counts subsets of size n1 by rank sum; doubled ranks keep tied (x.5) ranks integral
    r = np.rint(2 * ranks).astype(np.int64)
    top = int(r.sum())
    ways = np.zeros((n1 + 1, top + 1), dtype=np.float64)
    ways[0, 0] = 1.0
    for x in r:
        ways[1:, x:] += ways[:-1, : top + 1 - x]
    dist = ways[n1]
    sums = np.arange(top + 1)
    centre = n1 * (len(r) + 1)
    observed = abs(int(r[:n1].sum()) - centre)
    extreme = np.abs(sums - centre) >= observed
    return float(min(1.0, dist[extreme].sum() / dist.sum()))


def rank_sum_p_value(a, b, method: str = "auto") -> float:
    """Two-sided rank-sum p-value with average ranks for ties.

    ``method="normal"`` uses the tie- and continuity-corrected normal
    approximation; ``"exact"`` enumerates the permutation distribution of the
    rank sum; ``"auto"`` is exact when both samples have at most
    ``EXACT_LIMIT`` values.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    n1, n2 = len(a), len(b)
    ranks = rankdata(np.concatenate([a, b]))
    if method == "auto":
        method = "exact" if max(n1, n2) <= EXACT_LIMIT else "normal"
    if method == "exact":
        return _exact_p_value(ranks, n1)
    if method != "normal":
        raise ValueError(f"unknown method {method!r}")
    n = n1 + n2
    w = ranks[:n1].sum()
    mu = n1 * (n + 1) / 2.0
    _, counts = np.unique(ranks, return_counts=True)
    ties = float(np.sum(counts**3 - counts))
    var = n1 * n2 / 12.0 * ((n + 1) - ties / (n * (n - 1)))
    if var <= 0:
        return 1.0
    z = max(abs(w - mu) - 0.5, 0.0) / math.sqrt(var)
    return float(min(1.0, 2.0 * norm.sf(z)))


def wilcoxon_rank_sum(a, b, alpha: float = SIGNIFICANCE) -> ComparisonVerdict:
    """Compare indicator samples where smaller is better.

    Direction comes from the medians (mean ranks if the medians tie).
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if len(a) < MIN_SAMPLE or len(b) < MIN_SAMPLE:
        raise DomainError(f"rank-sum test needs at least {MIN_SAMPLE} values per sample")
    p = rank_sum_p_value(a, b)
    if p >= alpha:
        return ComparisonVerdict(Symbol.APPROX, p)
    ma, mb = np.median(a), np.median(b)
    if ma == mb:
        ranks = rankdata(np.concatenate([a, b]))
        ma, mb = ranks[: len(a)].mean(), ranks[len(a):].mean()
    if ma < mb:
        return ComparisonVerdict(Symbol.PLUS, p)
    if ma > mb:
        return ComparisonVerdict(Symbol.MINUS, p)
    return ComparisonVerdict(Symbol.APPROX, p)
