import csv
import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from nichingmoea.core import ConfigError, IncompleteDataError, Population, StateError
from nichingmoea.harness import (ExperimentConfig, RunResult, build_comparison, dump_population, format_value,
                                 load_config, median_run, read_results_csv, render_tables, run_experiment,
                                 run_matrix, write_results_csv)
from nichingmoea.harness.cli import main
from nichingmoea.problems import PROBLEM_NAMES

ALGOS = ("nsga2", "niching_nsga2", "spea2", "niching_spea2")


def half_even_oracle(x: float, places: int = 4) -> str:
    q = Fraction(repr(x)) * 10**places
    whole = math.floor(q)
    rest = q - whole
    if rest > Fraction(1, 2) or (rest == Fraction(1, 2) and whole % 2 == 1):
        whole += 1
    sign = "-" if whole < 0 else ""
    digits = str(abs(whole)).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def synthetic(problem_shift, runs=12):
    """Results where each variant's samples are shifted from its baseline."""
    out = []
    rng = np.random.default_rng(0)
    for p in PROBLEM_NAMES:
        base = rng.random(runs)
        for a in ALGOS:
            vals = base + (problem_shift if a.startswith("niching") else 0.0)
            for r in range(runs):
                out.append(RunResult(p, a, r, r, float(vals[r]), float(vals[r]), 100))
    return out


# --- formatting and tables ---------------------------------------------------------

@pytest.mark.parametrize("x", [0.06473, 0.00005, 0.00015, 1.23445, 2.5, 7.1278, 0.1, 123.45675, 1e-9])
def test_format_matches_oracle(x):
    assert format_value(x) == half_even_oracle(x)


def test_format_example_and_specials():
    assert format_value(0.06473) == "0.0647"
    assert format_value(float("nan")) == "n/a"
    assert format_value(math.inf) == "inf"


def test_equal_samples_give_all_ties():
    table = build_comparison(synthetic(0.0))
    assert len(table.verdicts) == 2 * 2 * 10
    assert all(v.symbol.glyph == "≈" for v in table.verdicts.values())
    assert table.tallies[("igdx", "niching_nsga2")] == (0, 0, 10)


def test_separated_samples_give_full_tally():
    table = build_comparison(synthetic(-5.0))
    for ind in ("igdx", "igd_plus"):
        for variant in ("niching_nsga2", "niching_spea2"):
            assert table.tally_text(ind, variant) == "10/0/0"
    text = table.render()
    assert "| +/-/≈ | baseline | 10/0/0 | baseline | 10/0/0 |" in text
    rows = [line for line in text.splitlines() if line.startswith("| MMF1 ")]
    assert len(rows) == 2 and rows[0].count("**") == 4 and rows[0].rstrip(" |").endswith("+")


def test_table_shape():
    text = render_tables(synthetic(1.0))
    block = text.split("## IGD+")[0]
    body = [line for line in block.splitlines() if line.startswith("| ")]
    assert len(body) == 1 + 10 + 1  # header, problems, tally
    assert body[0] == "| Problem | NSGA-II | Niching-NSGA-II | SPEA2 | Niching-SPEA2 |"
    assert "0/10/0" in text


def test_missing_cells_reported():
    results = [r for r in synthetic(0.0) if not (r.problem == "mmf3" and r.algorithm == "spea2")]
    with pytest.raises(IncompleteDataError) as err:
        render_tables(results, PROBLEM_NAMES, ALGOS)
    assert err.value.missing == [("mmf3", "spea2")]
    single = [r for r in synthetic(0.0) if r.run_index == 0]
    with pytest.raises(IncompleteDataError):
        render_tables(single)


# --- persistence -----------------------------------------------------------------------

def test_dump_population_examples(tmp_path):
    one = Population(np.array([[0.1, 1 / 3]]), np.array([[math.pi, 2.0 / 7]]))
    path = dump_population(one, tmp_path / "one.csv")
    lines = path.read_text().splitlines()
    assert lines[0] == "x1,x2,f1,f2" and len(lines) == 2
    np.testing.assert_array_equal(np.array(lines[1].split(","), dtype=float), [0.1, 1 / 3, math.pi, 2.0 / 7])

    two = Population(np.zeros((2, 3)), np.array([[0.0, 0.0], [1.0, 1.0]]))
    assert len(dump_population(two, tmp_path / "two.csv").read_text().splitlines()) == 2
    with pytest.raises(StateError):
        dump_population(Population(np.zeros((2, 2))), tmp_path / "x.csv")


def test_results_csv_round_trip(tmp_path):
    results = [RunResult("mmf1", "nsga2", i, 10 + i, 1 / (i + 3), math.sqrt(i + 2), 50_000) for i in range(5)]
    write_results_csv(tmp_path / "r.csv", results)
    back = read_results_csv(tmp_path / "r.csv")
    assert [(r.igdx, r.igd_plus, r.seed) for r in back] == [(r.igdx, r.igd_plus, r.seed) for r in results]
    assert b"\r\n" not in (tmp_path / "r.csv").read_bytes()


def test_median_run_uses_igd_plus():
    runs = [RunResult("p", "a", i, i, 0.0, v, 1) for i, v in enumerate([5.0, 1.0, 3.0, 2.0, 4.0])]
    assert median_run(runs).run_index == 2


# --- configuration ----------------------------------------------------------------------

def test_default_config_follows_protocol():
    cfg = ExperimentConfig()
    assert (cfg.runs, cfg.population_size, cfg.max_evaluations, cfg.reference_set_size) == (31, 100, 50_000, 10_000)
    assert len(cfg.problems) == 10 and len(cfg.algorithms) == 4
    assert cfg.seed_for(4) == cfg.base_seed + 4


def test_config_file_and_overrides(tmp_path):
    ini = tmp_path / "exp.ini"
    ini.write_text("[experiment]\nproblems = mmf1, SYM-PART\nruns = 3\nbase_seed = 7\nparallelism = 2\n"
                   "[variation]\nmutation_distribution_index = 15\n")
    cfg = load_config(ini, runs=5)
    assert cfg.problems == ("mmf1", "sym_part") and cfg.runs == 5 and cfg.base_seed == 7
    assert cfg.parallelism == 2 and cfg.variation.mutation_distribution_index == 15
    assert load_config(ini).runs == 3


@pytest.mark.parametrize("bad", [{"problems": "nope"}, {"algorithms": "moead"}, {"runs": 0},
                                 {"parallelism": 0}, {"population_size": 2}])
def test_config_errors(bad):
    with pytest.raises(ConfigError):
        ExperimentConfig(**bad)


def test_config_file_errors(tmp_path):
    ini = tmp_path / "bad.ini"
    ini.write_text("[experiment]\nrunz = 3\n")
    with pytest.raises(ConfigError):
        load_config(ini)
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.ini")


# --- experiment -----------------------------------------------------------------------

def small(tmp_path, **kw):
    base = dict(problems=("mmf1",), algorithms=("nsga2",), runs=1, population_size=10, max_evaluations=10,
                reference_set_size=200, output_directory=tmp_path, parallelism=1)
    base.update(kw)
    return ExperimentConfig(**base)


def test_smallest_matrix(tmp_path):
    run_experiment(small(tmp_path))
    rows = list(csv.reader(open(tmp_path / "results.csv", newline="")))
    assert len(rows) == 2 and rows[0] == ["problem", "algorithm", "run", "seed", "igdx", "igd_plus", "evaluations"]
    assert math.isfinite(float(rows[1][4])) and math.isfinite(float(rows[1][5]))
    assert rows[1][6] == "10"
    assert (tmp_path / "populations" / "mmf1__nsga2__run000.csv").exists()
    assert (tmp_path / "median" / "mmf1__nsga2.csv").exists()


def tree_bytes(root: Path) -> dict:
    return {str(p.relative_to(root)): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file()}


def test_parallel_output_is_byte_identical(tmp_path):
    kw = dict(problems=("mmf1", "sym_part"), algorithms=ALGOS, runs=3, population_size=12, max_evaluations=120)
    run_experiment(small(tmp_path / "serial", **kw), jobs=1)
    run_experiment(small(tmp_path / "pool", **kw), jobs=8)
    assert tree_bytes(tmp_path / "serial") == tree_bytes(tmp_path / "pool")


def test_shared_executor_matches_serial(tmp_path):
    cfg = small(tmp_path, algorithms=ALGOS, runs=2, population_size=8, max_evaluations=40)
    with ProcessPoolExecutor(2) as pool:
        pooled = run_matrix(cfg, executor=pool)
    serial = run_matrix(cfg, jobs=1)
    assert [(r.igdx, r.igd_plus, r.seed) for r in pooled] == [(r.igdx, r.igd_plus, r.seed) for r in serial]


def test_evaluations_within_one_generation(tmp_path):
    cfg = small(tmp_path, runs=2, population_size=10, max_evaluations=95)
    for r in run_matrix(cfg):
        assert 95 <= r.evaluations_used < 95 + 10
        assert r.igdx >= 0 and r.igd_plus >= 0


# --- CLI -------------------------------------------------------------------------------

def test_cli_single(capsys):
    assert main(["single", "--problems", "mmf2", "--algorithms", "niching_nsga2", "--pop", "8",
                 "--evals", "80", "--refsize", "100", "--seed", "3"]) == 0
    out = capsys.readouterr().out
    assert "seed=3" in out and "igdx=" in out and "evaluations=80" in out


def test_cli_run_then_table(tmp_path, capsys):
    args = ["--problems", "mmf1", "--algorithms", "nsga2,niching_nsga2", "--runs", "2", "--pop", "8",
            "--evals", "40", "--refsize", "100", "--out", str(tmp_path), "--jobs", "1"]
    assert main(["run", *args]) == 0
    first = (tmp_path / "tables.md").read_bytes()
    assert main(["table", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "tables.md").read_bytes() == first
    assert "MMF1" in capsys.readouterr().out


def test_cli_dump_refsets(tmp_path):
    assert main(["dump-refsets", "--problems", "mmf4", "--refsize", "40", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "mmf4_pareto_front.csv").exists()


def test_cli_exit_codes(tmp_path):
    assert main(["single", "--problems", "nope"]) == 2
    assert main(["single", "--algorithms", "moead"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["run", "--runs", "many"])
    assert exc.value.code == 2
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert main(["run", "--problems", "mmf1", "--algorithms", "nsga2", "--runs", "1", "--pop", "8",
                 "--evals", "8", "--out", str(blocker / "sub")]) == 3
    assert main(["table", "--out", str(tmp_path / "nothing")]) == 3
    partial = tmp_path / "partial"
    partial.mkdir()
    write_results_csv(partial / "results.csv", [RunResult("mmf1", "nsga2", i, i, 0.1, 0.1, 8) for i in range(3)])
    assert main(["table", "--out", str(partial), "--algorithms", "nsga2,spea2"]) == 4
