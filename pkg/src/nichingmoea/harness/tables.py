"""Comparison tables: mean ± std per cell, rank-sum verdicts and +/-/≈ tallies."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal
from typing import Iterable, Optional, Sequence

import numpy as np

from ..algorithms import ALGORITHMS, BASELINE_OF, DISPLAY_NAMES
from ..core import IncompleteDataError
from ..problems import PROBLEM_NAMES
from ..stats import MIN_SAMPLE, ComparisonVerdict, Symbol, mean_std, wilcoxon_rank_sum

INDICATORS = ("igdx", "igd_plus")
INDICATOR_TITLES = {"igdx": "IGDX", "igd_plus": "IGD+"}
PROBLEM_TITLES = {"omni_test": "Omni-test", "sym_part": "SYM-PART"}


def problem_title(name: str) -> str:
    return PROBLEM_TITLES.get(name, name.upper())


def format_value(value: float, places: int = 4) -> str:
    """Fixed-point text, rounding the shortest decimal repr half-to-even."""
    if value is None or math.isnan(value):
        return "n/a"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    q = Decimal(1).scaleb(-places)
    return str(Decimal(repr(float(value))).quantize(q, rounding=ROUND_HALF_EVEN))


def _ordered(names: Iterable[str], canonical: Sequence[str]) -> list[str]:
    names = set(names)
    known = [n for n in canonical if n in names]
    return known + sorted(names - set(canonical))


@dataclass
class ComparisonTable:
    problems: list[str]
    algorithms: list[str]
    stats: dict[tuple[str, str, str], tuple[float, float]] = field(default_factory=dict)
    verdicts: dict[tuple[str, str, str], ComparisonVerdict] = field(default_factory=dict)
    tallies: dict[tuple[str, str], tuple[int, int, int]] = field(default_factory=dict)

    def pairs(self) -> list[tuple[str, str]]:
        """(baseline, variant) pairs present in the table."""
        return [(BASELINE_OF[v], v) for v in self.algorithms
                if v in BASELINE_OF and BASELINE_OF[v] in self.algorithms]

    def tally_text(self, indicator: str, variant: str) -> str:
        t = self.tallies.get((indicator, variant))
        return "n/a" if t is None else f"{t[0]}/{t[1]}/{t[2]}"

    def render(self) -> str:
        variants = {v for _, v in self.pairs()}
        baselines = {b for b, _ in self.pairs()}
        blocks = []
        for ind in INDICATORS:
            header = ["Problem"] + [DISPLAY_NAMES.get(a, a) for a in self.algorithms]
            lines = [f"## {INDICATOR_TITLES[ind]} (mean ± std)", "",
                     "| " + " | ".join(header) + " |",
                     "|" + "---|" * len(header)]
            for prob in self.problems:
                cells = [problem_title(prob)]
                for alg in self.algorithms:
                    mean, std = self.stats[(ind, prob, alg)]
                    text = f"{format_value(mean)} ± {format_value(std)}"
                    partner = BASELINE_OF.get(alg) if alg in variants else None
                    if alg in baselines:
                        partner = next((v for b, v in self.pairs() if b == alg), None)
                    if partner is not None and mean < self.stats[(ind, prob, partner)][0]:
                        text = f"**{text}**"
                    verdict = self.verdicts.get((ind, prob, alg))
                    if verdict is not None:
                        text += f" {verdict.symbol.glyph}"
                    cells.append(text)
                lines.append("| " + " | ".join(cells) + " |")
            tally = ["+/-/≈"]
            for alg in self.algorithms:
                tally.append("baseline" if alg in baselines else
                             self.tally_text(ind, alg) if alg in variants else "")
            lines.append("| " + " | ".join(tally) + " |")
            blocks.append("\n".join(lines))
        return "\n\n".join(blocks) + "\n"


def build_comparison(results, problems: Optional[Sequence[str]] = None,
                     algorithms: Optional[Sequence[str]] = None, min_runs: int = 2) -> ComparisonTable:
    """Aggregate run results into a ComparisonTable.

    Raises IncompleteDataError naming every (problem, algorithm) cell with
    fewer than ``min_runs`` runs.  Verdicts need MIN_SAMPLE runs on both sides.
    """
    results = list(results)
    problems = list(problems) if problems else _ordered({r.problem for r in results}, PROBLEM_NAMES)
    algorithms = list(algorithms) if algorithms else _ordered({r.algorithm for r in results}, ALGORITHMS)
    samples: dict[tuple[str, str, str], list[float]] = {}
    for r in results:
        for ind in INDICATORS:
            samples.setdefault((ind, r.problem, r.algorithm), []).append(float(getattr(r, ind)))

    missing = [(p, a) for p in problems for a in algorithms
               if len(samples.get(("igdx", p, a), [])) < min_runs]
    if missing:
        listing = ", ".join(f"({p}, {a})" for p, a in missing)
        raise IncompleteDataError(f"missing or undersized cells: {listing}", missing)

    table = ComparisonTable(problems, algorithms)
    for key, values in samples.items():
        if key[1] in problems and key[2] in algorithms:
            table.stats[key] = mean_std(values) if len(values) >= 2 else (float(np.mean(values)), math.nan)

    for baseline, variant in table.pairs():
        for ind in INDICATORS:
            counts = {Symbol.PLUS: 0, Symbol.MINUS: 0, Symbol.APPROX: 0}
            decided = True
            for prob in problems:
                a = samples[(ind, prob, variant)]
                b = samples[(ind, prob, baseline)]
                if min(len(a), len(b)) < MIN_SAMPLE:
                    decided = False
                    continue
                verdict = wilcoxon_rank_sum(a, b)
                table.verdicts[(ind, prob, variant)] = verdict
                counts[verdict.symbol] += 1
            if decided:
                table.tallies[(ind, variant)] = (counts[Symbol.PLUS], counts[Symbol.MINUS], counts[Symbol.APPROX])
    return table


def render_tables(results, problems=None, algorithms=None) -> str:
    return build_comparison(results, problems, algorithms).render()
