"""Multi-modal benchmark problems: SYM-PART (simple), Omni-test and MMF1-MMF8.

Every problem knows its equivalent Pareto subsets as parameterized curves
``t -> x`` (decision space) and ``t -> f`` (objective space), which gives
deterministic reference sets for IGDX and IGD+.
"""

from __future__ import annotations

import csv
import itertools
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .core import DomainError

PI = np.pi
SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class ParetoSubset:
    """One equivalent Pareto subset, parameterized over a union of t-intervals."""

    decision: Callable[[np.ndarray], np.ndarray]
    objective: Callable[[np.ndarray], np.ndarray]
    intervals: tuple[tuple[float, float], ...] = ((0.0, 1.0),)
    # isolated parameter values whose image is not Pareto optimal
    exclude: tuple[float, ...] = ()

    def parameters(self, count: int) -> np.ndarray:
        """``count`` evenly spaced cell midpoints along the subset."""
        lengths = np.array([hi - lo for lo, hi in self.intervals])
        total = lengths.sum()
        s = (np.arange(count) + 0.5) / count * total
        t = np.empty(count)
        offset = 0.0
        for (lo, hi), length in zip(self.intervals, lengths):
            mask = (s >= offset) & (s < offset + length)
            t[mask] = lo + (s[mask] - offset)
            offset += length
        for bad in self.exclude:
            hit = np.abs(t - bad) < 1e-12
            t[hit] = bad - 1e-6
        return t

    def sample(self, count: int) -> tuple[np.ndarray, np.ndarray]:
        t = self.parameters(count)
        return self.decision(t), self.objective(t)


@dataclass(frozen=True)
class ProblemSpec:
    name: str
    D: int
    M: int
    lower: np.ndarray
    upper: np.ndarray
    evaluate_batch: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    subsets: tuple[ParetoSubset, ...] = field(repr=False)

    @property
    def equivalent_subset_count(self) -> int:
        return len(self.subsets)

    def evaluate(self, x) -> np.ndarray:
        """Objectives of one decision vector (D,) or a batch (n, D)."""
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.D:
            raise DomainError(f"{self.name} expects {self.D} variables, got {x.shape[-1]}")
        if x.ndim == 1:
            return self.evaluate_batch(x[None, :])[0]
        return self.evaluate_batch(x)

    def pareto_set_sample(self, n: int) -> np.ndarray:
        return sample_reference_sets(self, n)[0]

    def pareto_front_sample(self, n: int) -> np.ndarray:
        return sample_reference_sets(self, n)[1]


def _stack(*cols):
    return np.column_stack([np.broadcast_to(c, np.shape(cols[0])) for c in cols])


# --- SYM-PART (simple variant) -----------------------------------------------

SYM_A, SYM_B, SYM_C = 1.0, 10.0, 8.0


def _sym_part(X):
    x1, x2 = X[:, 0], X[:, 1]
    t1_hat = np.sign(x1) * np.ceil((np.abs(x1) - SYM_A - SYM_C / 2) / (2 * SYM_A + SYM_C))
    t2_hat = np.sign(x2) * np.ceil((np.abs(x2) - SYM_B / 2) / SYM_B)
    t1 = np.sign(t1_hat) * np.minimum(np.abs(t1_hat), 1.0)
    t2 = np.sign(t2_hat) * np.minimum(np.abs(t2_hat), 1.0)
    p1 = x1 - t1 * (SYM_C + 2 * SYM_A)
    p2 = x2 - t2 * SYM_B
    return np.column_stack([(p1 + SYM_A) ** 2 + p2**2, (p1 - SYM_A) ** 2 + p2**2])


def _sym_part_subsets():
    out = []
    for row in (1, 0, -1):
        for col in (-1, 0, 1):
            cx, cy = col * (SYM_C + 2 * SYM_A), row * SYM_B

            def dec(t, cx=cx, cy=cy):
                p = SYM_A * (2 * t - 1)
                return _stack(cx + p, cy + 0 * t)

            def obj(t):
                p = SYM_A * (2 * t - 1)
                return _stack((p + SYM_A) ** 2, (p - SYM_A) ** 2)

            out.append(ParetoSubset(dec, obj))
    return tuple(out)


# --- Omni-test ---------------------------------------------------------------

def _omni(X):
    return np.column_stack([np.sin(PI * X).sum(axis=1), np.cos(PI * X).sum(axis=1)])


def _omni_subsets(D):
    out = []
    for cell in itertools.product(range(3), repeat=D):
        base = np.array([2.0 * m + 1.0 for m in cell])

        def dec(t, base=base):
            return base[None, :] + 0.5 * t[:, None]

        def obj(t, D=D):
            u = 0.5 * t
            return _stack(-D * np.sin(PI * u), -D * np.cos(PI * u))

        out.append(ParetoSubset(dec, obj))
    return tuple(out)


# --- MMF family --------------------------------------------------------------

def _wave(t):
    return np.sin(6 * PI * t + PI)


def _mmf_penalty(y):
    return 4 * y**2 - 2 * np.cos(20 * y * PI / SQRT2) + 2


def _mmf1(X):
    t = np.abs(X[:, 0] - 2)
    return np.column_stack([t, 1 - np.sqrt(t) + 2 * (X[:, 1] - _wave(t)) ** 2])


def _mmf2(X):
    x1, x2 = X[:, 0], X[:, 1]
    shift = np.where(x2 <= 1, 0.0, 1.0)
    return np.column_stack([x1, 1 - np.sqrt(x1) + 2 * _mmf_penalty(x2 - shift - np.sqrt(x1))])


def _mmf3(X):
    x1, x2 = X[:, 0], X[:, 1]
    lower = (x2 <= 0.5) | ((x2 < 1) & (x1 > 0.25))
    shift = np.where(lower, 0.0, 0.5)
    return np.column_stack([x1, 1 - np.sqrt(x1) + 2 * _mmf_penalty(x2 - shift - np.sqrt(x1))])


def _mmf4(X):
    x1, x2 = X[:, 0], X[:, 1]
    shift = np.where(x2 < 1, 0.0, 1.0)
    return np.column_stack([np.abs(x1), 1 - x1**2 + 2 * (x2 - shift - np.sin(PI * np.abs(x1))) ** 2])


def _mmf5(X):
    t = np.abs(X[:, 0] - 2)
    x2 = X[:, 1]
    shift = np.where(x2 <= 1, 0.0, 2.0)
    return np.column_stack([t, 1 - np.sqrt(t) + 2 * (x2 - shift - _wave(t)) ** 2])


def _mmf6(X):
    t = np.abs(X[:, 0] - 2)
    x2 = X[:, 1]
    shift = np.where(x2 <= 1, 0.0, 1.0)
    return np.column_stack([t, 1 - np.sqrt(t) + 2 * (x2 - shift - _wave(t)) ** 2])


def _mmf7_curve(t):
    return (0.3 * t**2 * np.cos(24 * PI * t + 4 * PI / SQRT2) + 0.6 * t) * _wave(t)


def _mmf7(X):
    t = np.abs(X[:, 0] - 2)
    return np.column_stack([t, 1 - np.sqrt(t) + (X[:, 1] - _mmf7_curve(t)) ** 2])


def _mmf8(X):
    u = np.abs(X[:, 0])
    x2 = X[:, 1]
    s = np.sin(u)
    shift = np.where(x2 <= 4, 0.0, 4.0)
    return np.column_stack([s, np.sqrt(1 - s**2) + 2 * (x2 - shift - s - u) ** 2])


def _sqrt_front(t):
    return _stack(t, 1 - np.sqrt(t))


def _around_two(curve, shifts=(0.0,), intervals=((0.0, 1.0),), exclude=()):
    """Subsets mirrored about x1 = 2: x1 = 2 -/+ t, x2 = curve(t) + shift."""
    out = []
    for shift in shifts:
        for sign in (-1.0, 1.0):
            def dec(t, sign=sign, shift=shift):
                return _stack(2 + sign * t, curve(t) + shift)

            out.append(ParetoSubset(dec, _sqrt_front, intervals, exclude))
    return tuple(out)


def _mmf2_subsets(shift_b):
    out = []
    for shift in (0.0, shift_b):
        def dec(t, shift=shift):
            return _stack(t, np.sqrt(t) + shift)

        out.append(ParetoSubset(dec, _sqrt_front))
    return tuple(out)


def _mmf4_subsets():
    out = []
    for shift, exclude in ((0.0, (0.5,)), (1.0, ())):
        for sign in (-1.0, 1.0):
            def dec(t, sign=sign, shift=shift):
                return _stack(sign * t, np.sin(PI * t) + shift)

            out.append(ParetoSubset(dec, lambda t: _stack(t, 1 - t**2), exclude=exclude))
    return tuple(out)


def _mmf6_subsets():
    # upper copy is optimal only where the wave is positive
    upper = ((1 / 6, 1 / 3), (1 / 2, 2 / 3), (5 / 6, 1.0))
    return _around_two(_wave) + _around_two(_wave, shifts=(1.0,), intervals=upper)


def _mmf8_subsets():
    out = []
    for shift in (0.0, 4.0):
        for sign in (-1.0, 1.0):
            def dec(t, sign=sign, shift=shift):
                u = PI * t
                return _stack(sign * u, np.sin(u) + u + shift)

            def obj(t):
                s = np.sin(PI * t)
                return _stack(s, np.sqrt(1 - s**2))

            out.append(ParetoSubset(dec, obj))
    return tuple(out)


def _spec(name, lower, upper, fn, subsets):
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    lower.flags.writeable = False
    upper.flags.writeable = False
    return ProblemSpec(name, len(lower), 2, lower, upper, fn, subsets)


def _build_registry() -> dict[str, ProblemSpec]:
    omni_d = 3
    problems = [
        _spec("omni_test", [0.0] * omni_d, [6.0] * omni_d, _omni, _omni_subsets(omni_d)),
        _spec("sym_part", [-20.0, -20.0], [20.0, 20.0], _sym_part, _sym_part_subsets()),
        _spec("mmf1", [1.0, -1.0], [3.0, 1.0], _mmf1, _around_two(_wave)),
        _spec("mmf2", [0.0, 0.0], [1.0, 2.0], _mmf2, _mmf2_subsets(1.0)),
        _spec("mmf3", [0.0, 0.0], [1.0, 1.5], _mmf3, _mmf2_subsets(0.5)),
        _spec("mmf4", [-1.0, 0.0], [1.0, 2.0], _mmf4, _mmf4_subsets()),
        _spec("mmf5", [1.0, -1.0], [3.0, 3.0], _mmf5,
              _around_two(_wave, shifts=(0.0, 2.0), exclude=(1 / 12, 5 / 12, 9 / 12))),
        _spec("mmf6", [1.0, -1.0], [3.0, 2.0], _mmf6, _mmf6_subsets()),
        _spec("mmf7", [1.0, -1.0], [3.0, 1.0], _mmf7, _around_two(_mmf7_curve)),
        _spec("mmf8", [-PI, 0.0], [PI, 9.0], _mmf8, _mmf8_subsets()),
    ]
    return {p.name: p for p in problems}


REGISTRY: dict[str, ProblemSpec] = _build_registry()
PROBLEM_NAMES: tuple[str, ...] = tuple(REGISTRY)

_ALIASES = {"sympart": "sym_part", "sym-part": "sym_part", "omni-test": "omni_test", "omnitest": "omni_test"}


def get_problem(name: str) -> ProblemSpec:
    key = name.strip().lower()
    key = _ALIASES.get(key, key)
    try:
        return REGISTRY[key]
    except KeyError:
        raise LookupError(f"unknown problem {name!r}; known: {', '.join(PROBLEM_NAMES)}") from None


def _split(n: int, parts: int) -> list[int]:
    base, extra = divmod(n, parts)
    return [base + (1 if i < extra else 0) for i in range(parts)]


def sample_subsets(spec: ProblemSpec, n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Per-subset (decision, objective) reference points, n in total."""
    if n < spec.equivalent_subset_count:
        raise DomainError(f"{spec.name} needs at least {spec.equivalent_subset_count} reference points")
    return [s.sample(c) for s, c in zip(spec.subsets, _split(n, spec.equivalent_subset_count))]


def sample_reference_sets(spec: ProblemSpec, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Evenly spread Pareto set and front samples; deterministic."""
    parts = sample_subsets(spec, n)
    return np.vstack([p[0] for p in parts]), np.vstack([p[1] for p in parts])


def write_points_csv(path: Path, points: np.ndarray, prefix: str) -> None:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([f"{prefix}{j + 1}" for j in range(points.shape[1])])
        for row in points:
            w.writerow([format(float(v), ".17g") for v in row])


def export_reference_sets(names: Sequence[str], n: int, directory: Path) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name in names:
        spec = get_problem(name)
        ps, pf = sample_reference_sets(spec, n)
        for suffix, pts, prefix in (("pareto_set", ps, "x"), ("pareto_front", pf, "f")):
            path = directory / f"{spec.name}_{suffix}.csv"
            write_points_csv(path, pts, prefix)
            written.append(path)
    return written
