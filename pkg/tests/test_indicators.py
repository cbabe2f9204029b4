import math

import numpy as np
import pytest

from nichingmoea.core import DimensionError, DomainError, Population
from nichingmoea.indicators import equivalent_pairs, igd_plus, igdx, subset_coverage
from nichingmoea.problems import get_problem, sample_reference_sets, sample_subsets

import oracles


def test_igd_plus_examples():
    R = np.random.default_rng(0).random((20, 2))
    assert igd_plus(R, R) == 0.0
    assert igd_plus([[0.0, 0.0]], [[1.0, 1.0]]) == 0.0
    assert igd_plus([[1.0, 1.0]], [[0.0, 0.0]]) == math.sqrt(2)


def test_igdx_examples():
    R = np.random.default_rng(1).random((20, 3))
    assert igdx(R, R) == 0.0
    assert igdx([[1.0]], [[0.0]]) == 1.0


def test_indicator_errors():
    with pytest.raises(DomainError):
        igdx(np.empty((0, 2)), [[0.0, 0.0]])
    with pytest.raises(DimensionError):
        igd_plus([[0.0, 0.0]], [[0.0, 0.0, 0.0]])


@pytest.mark.parametrize("seed", range(5))
def test_indicators_match_double_loop(seed):
    rng = np.random.default_rng(seed)
    A, R = rng.random((50, 2)), rng.random((200, 2))
    assert abs(igdx(A, R) - oracles.igdx(A.tolist(), R.tolist())) <= 1e-12
    assert abs(igd_plus(A, R) - oracles.igd_plus(A.tolist(), R.tolist())) <= 1e-12


def test_large_reference_is_chunked_consistently():
    rng = np.random.default_rng(9)
    A, R = rng.random((30, 2)), rng.random((5000, 2))
    assert igdx(A, R) == pytest.approx(oracles.igdx(A.tolist(), R.tolist()), abs=1e-12)


def test_equivalent_pairs_examples():
    assert equivalent_pairs(np.array([[1.0, 2.0], [1.0, 2.0]]), 1e-9) == 1
    assert equivalent_pairs(np.array([[0.0, 0.0], [5.0, 5.0], [10.0, 0.0]]), 1.0) == 0
    with pytest.raises(DomainError):
        equivalent_pairs(np.zeros((2, 2)), 0.0)


def test_equivalent_pairs_sweep():
    F = np.random.default_rng(2).random((10, 2))
    counts = []
    for delta in np.linspace(0.01, 1.5, 30):
        expected = sum(oracles.dist(F[i], F[j]) <= delta for i in range(10) for j in range(i + 1, 10))
        got = equivalent_pairs(Population(np.zeros((10, 1)), F), delta)
        assert got == expected
        counts.append(got)
    assert counts == sorted(counts)


def test_subset_coverage_examples():
    spec = get_problem("sym_part")
    ps, _ = sample_reference_sets(spec, 900)
    assert subset_coverage(ps, spec) == 9
    assert subset_coverage(np.array([[100.0, 100.0]]), spec) == 0
    centres = np.array([p[0][len(p[0]) // 2] for p in sample_subsets(spec, 9 * 11)])
    assert subset_coverage(centres, spec) == 9
    assert subset_coverage(centres[:4], spec) == 4
    omni = get_problem("omni_test")
    assert subset_coverage(sample_reference_sets(omni, 270)[0], omni) == 27
