import math

import pytest

import fieldmaps


def test_weight_of():
    w = fieldmaps.WeightSystem(fieldmaps.MetricSpace.line(2), factors=(2.0,))
    assert w.weight_of([[0, 0]]) == 4.0
    assert w.weight_of([[]]) == 1.0
    assert w.weight_of([[0, 1]]) == pytest.approx(4 * math.e)
    assert w.weight_of([[0]], extra_point=1) == pytest.approx(2 * math.e)


def test_weight_of_several_slots():
    w = fieldmaps.WeightSystem(fieldmaps.MetricSpace.line(3), factors=(0.5, 3))
    assert w.weight_of([[0], [2, 2]]) == pytest.approx(0.5 * 9 * math.exp(2))
    with pytest.raises(fieldmaps.ArityMismatch, match='slots'):
        w.weight_of([[0]])
    with pytest.raises(fieldmaps.ArityMismatch):
        w.factor_product([1, 2, 3])


def test_derived_systems():
    w = fieldmaps.WeightSystem(fieldmaps.MetricSpace.line(1), factors=(1, 2))
    assert w.shifted_system([0.5, 0.5], sigma=2).factors == (2.0, 3.0)
    assert w.split_system([0.25, 0.5]).factors == (1.0, 2.0, 0.25, 0.5)
    assert w.extended([7], prepend=True).factors == (7.0, 1.0, 2.0)
    assert w.restricted_to([1]).factors == (2.0,)
    with pytest.raises(ValueError, match='sigma'):
        w.shifted_system([1, 1], sigma=0.5)
    with pytest.raises(fieldmaps.ArityMismatch):
        w.split_system([1])


@pytest.mark.parametrize('factors', [(0,), (-1, 1), (math.inf,), (math.nan,)])
def test_factors_must_be_positive(factors):
    with pytest.raises(ValueError, match='positive and finite'):
        fieldmaps.WeightSystem(fieldmaps.MetricSpace.line(1), factors=factors)


def test_degree_profile_order():
    profiles = sorted([fieldmaps.DegreeProfile((2, 0)), fieldmaps.DegreeProfile((0, 1)),
                       fieldmaps.DegreeProfile((1, 0))])
    assert [p.degrees for p in profiles] == [(0, 1), (1, 0), (2, 0)]
    assert fieldmaps.DegreeProfile((1, 2)).total == 3
