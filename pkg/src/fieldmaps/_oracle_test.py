import itertools

import numpy as np
import pytest

import fieldmaps
from fieldmaps._oracle import (
    brute_steiner,
    evaluate_kernel_oracle,
    evaluate_system_oracle,
    kernel_norm_oracle,
    MAX_ORACLE_POINTS,
    norm_oracle,
)


def test_brute_steiner_star():
    space = fieldmaps.MetricSpace.from_matrix([
        [0, 2, 2, 1],
        [2, 0, 2, 1],
        [2, 2, 0, 1],
        [1, 1, 1, 0],
    ])
    assert brute_steiner(space, [0, 1, 2]) == 3.0
    assert brute_steiner(space, [0, 1]) == 2.0
    assert brute_steiner(space, [3]) == 0
    assert brute_steiner(space, []) == 0


@pytest.mark.parametrize('n', [2, 4, 6])
def test_brute_steiner_matches_tree_length(n):
    rng = np.random.default_rng(n)
    space = fieldmaps.MetricSpace.from_coordinates(rng.uniform(0, 2, size=(n, 2)))
    for k in range(1, n + 1):
        for terminals in itertools.combinations(range(n), k):
            assert space.tree_length(terminals) == pytest.approx(brute_steiner(space, terminals), rel=1e-12)


def test_oracle_refuses_large_inputs():
    space = fieldmaps.MetricSpace.line(MAX_ORACLE_POINTS + 1)
    with pytest.raises(fieldmaps.TooLarge):
        brute_steiner(space, [0, 1])
    with pytest.raises(fieldmaps.TooLarge):
        norm_oracle(fieldmaps.CoefficientSystem.constant(1, 1), fieldmaps.WeightSystem(space, factors=(1,)))


def test_norm_oracles_agree():
    rng = np.random.default_rng(9)
    space = fieldmaps.MetricSpace.from_coordinates(rng.uniform(0, 2, size=(3, 2)))
    for _ in range(10):
        w = fieldmaps.WeightSystem(space, factors=rng.uniform(0.5, 1.5, size=2))
        f = fieldmaps.random_system(rng, 3, 2, max_degree=4)
        a = fieldmaps.random_kernel(rng, 3, 2, max_degree=3)
        assert f.norm(w) == pytest.approx(norm_oracle(f, w), rel=1e-12)
        assert a.kernel_norm(w) == pytest.approx(kernel_norm_oracle(a, w), rel=1e-12)


def test_evaluation_oracles_agree():
    rng = np.random.default_rng(10)
    for _ in range(10):
        f = fieldmaps.random_system(rng, 3, 2, max_degree=4)
        a = fieldmaps.random_kernel(rng, 3, 2, max_degree=3)
        fields = [fieldmaps.random_field(rng, 3, 1.0) for _ in range(2)]
        assert f.evaluate(fields) == pytest.approx(evaluate_system_oracle(f, fields), abs=1e-12)
        np.testing.assert_allclose(a.evaluate(fields), evaluate_kernel_oracle(a, fields), atol=1e-12)
