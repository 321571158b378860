import numpy as np
import pytest

import fieldmaps


def test_difference_of_square():
    w = fieldmaps.WeightSystem(fieldmaps.MetricSpace.line(1), factors=(1,))
    f = fieldmaps.CoefficientSystem.from_entries(1, [([[0, 0]], 1)])
    result = fieldmaps.difference(f, w, [1], sigma=1)
    assert result.delta_norm == pytest.approx(3)
    assert result.sigma_norm == pytest.approx(4)
    assert result.verdict.holds
    second = fieldmaps.difference(f, w, [1], sigma=1, p=2)
    assert second.output.table == {((), (0, 0)): 1}
    assert second.delta_norm == pytest.approx(1)
    assert second.verdict.rhs == pytest.approx(4)


def test_difference_evaluates_to_increment():
    rng = np.random.default_rng(4)
    for _ in range(10):
        f = fieldmaps.random_system(rng, 3, 2, max_degree=4)
        alphas = [fieldmaps.random_field(rng, 3, 1.0) for _ in range(2)]
        deltas = [fieldmaps.random_field(rng, 3, 1.0) for _ in range(2)]
        df = fieldmaps.difference_system(f, 1)
        expected = f.evaluate([a + d for a, d in zip(alphas, deltas)]) - f.evaluate(alphas)
        assert df.evaluate(alphas + deltas) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize('p', [1, 2, 3])
@pytest.mark.parametrize('sigma', [1.0, 2.0, 4.0])
def test_difference_bound_random(p, sigma):
    rng = np.random.default_rng(p * 10 + int(sigma))
    space = fieldmaps.MetricSpace.from_coordinates(rng.uniform(0, 2, size=(3, 2)))
    for _ in range(10):
        w = fieldmaps.WeightSystem(space, factors=rng.uniform(0.5, 1.5, size=2))
        f = fieldmaps.random_system(rng, 3, 2, max_degree=4)
        result = fieldmaps.difference(f, w, rng.uniform(0.1, 1, size=2), sigma, p=p)
        assert result.verdict.holds, result.verdict
        assert result.output.degree_range() is None or result.output.degree_range()[0] >= p


def test_difference_map():
    space = fieldmaps.MetricSpace.line(2)
    a = fieldmaps.FieldMapKernel.from_entries(2, 1, [(0, [[0, 1]], 1), (1, [[1]], 0.5)])
    w = fieldmaps.WeightSystem(space, factors=(0.5,))
    result = fieldmaps.difference_map(a, w, [0.25], sigma=2)
    assert result.output.gamma_slots == 1
    assert result.verdict.holds
    fields = [fieldmaps.random_field(np.random.default_rng(1), 2, 1.0) for _ in range(2)]
    np.testing.assert_allclose(result.output.evaluate(fields),
                               a.evaluate([fields[0] + fields[1]]) - a.evaluate([fields[0]]),
                               atol=1e-12)


def test_difference_validation():
    w = fieldmaps.WeightSystem(fieldmaps.MetricSpace.line(1), factors=(1,))
    f = fieldmaps.CoefficientSystem.from_entries(1, [([[0]], 1)])
    with pytest.raises(ValueError, match='p=0 < 1'):
        fieldmaps.difference(f, w, [1], p=0)
    with pytest.raises(ValueError, match='sigma'):
        fieldmaps.difference(f, w, [1], sigma=0.5)
    with pytest.raises(fieldmaps.ArityMismatch):
        fieldmaps.difference(f, w, [1, 1])
