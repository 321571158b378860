import numpy as np
import pytest

import fieldmaps


def _eye():
    return fieldmaps.DiscreteKernel(measures=(np.ones(3), np.ones(3)), values=np.eye(3))


def test_young_equality_case():
    f = np.array([1.0, 2.0, 2.0])
    report = fieldmaps.generalized_young(_eye(), [f, f], [2, 2])
    assert report.lhs == pytest.approx(9)
    assert report.rhs == pytest.approx(9)
    assert report.kernel_norm == 1
    assert report.function_norms == pytest.approx((3, 3))
    assert report.passed


def test_young_infinite_exponent():
    report = fieldmaps.generalized_young(_eye(), [[1, 2, 2], [1, 1, 1]], [1, float('inf')])
    assert report.lhs == pytest.approx(5)
    assert report.rhs == pytest.approx(5)
    assert report.verdict.holds
    assert report.to_json()['exponents'] == [1, float('inf')]


def test_young_three_axes():
    values = np.zeros((2, 2, 2))
    values[0, 0, 0] = 1
    values[1, 1, 1] = -2
    kernel = fieldmaps.DiscreteKernel(measures=(np.ones(2), np.full(2, 0.5), np.ones(2)), values=values)
    np.testing.assert_allclose(kernel.pinned_masses(0), [0.5, 1.0])
    assert kernel.l1_linf_norm() == pytest.approx(2)
    report = fieldmaps.generalized_young(kernel, [[1, 1], [1, 1], [1, 1]], [3, 3, 3])
    assert report.lhs == pytest.approx(0.5)
    assert report.verdict.holds


@pytest.mark.parametrize('num_axes', [1, 2, 3, 4])
def test_young_random(num_axes):
    rng = np.random.default_rng(num_axes)
    for _ in range(20):
        kernel, functions = fieldmaps.random_young_instance(rng, num_axes, sparsity=0.3)
        weights = rng.uniform(0.1, 1, size=num_axes)
        exponents = [weights.sum() / w for w in weights]
        report = fieldmaps.generalized_young(kernel, functions, exponents)
        assert report.verdict.holds, report.verdict


def test_young_validation():
    with pytest.raises(fieldmaps.ExponentMismatch, match='!= 1'):
        fieldmaps.generalized_young(_eye(), [[1, 1, 1]] * 2, [2, 3])
    with pytest.raises(fieldmaps.ExponentMismatch, match='<= 0'):
        fieldmaps.generalized_young(_eye(), [[1, 1, 1]] * 2, [0, 1])
    with pytest.raises(fieldmaps.AxisMismatch):
        fieldmaps.generalized_young(_eye(), [[1, 1, 1]], [1])
    with pytest.raises(fieldmaps.AxisMismatch):
        fieldmaps.generalized_young(_eye(), [[1, 1], [1, 1]], [2, 2])
    with pytest.raises(fieldmaps.AxisMismatch):
        fieldmaps.DiscreteKernel(measures=(np.ones(3),), values=np.eye(3))
    with pytest.raises(ValueError, match='strictly positive'):
        fieldmaps.DiscreteKernel(measures=(np.ones(3), np.zeros(3)), values=np.eye(3))
