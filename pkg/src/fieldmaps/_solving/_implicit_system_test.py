import pytest

import fieldmaps


def _system(*, b: float = 1.0, f: float = 0.1, lam: float = 0.2, contraction: float = 0.5):
    return fieldmaps.ImplicitSystem(
        space=fieldmaps.MetricSpace.line(1),
        f=[fieldmaps.FieldMapKernel.projection(1, 1, 0, scale=f)],
        linear=[fieldmaps.FieldMapKernel.zero(1, 2, gamma_slots=1)],
        nonlinear=[fieldmaps.FieldMapKernel.from_entries(1, 2, [(0, [[], [0, 0]], b)], gamma_slots=1)],
        kappas=[1],
        lambdas=[lam],
        contraction=contraction,
    )


def test_check_hypotheses_passes():
    report = fieldmaps.check_hypotheses(_system())
    assert report.passed
    row, = report.rows
    assert row.f_norm == pytest.approx(0.1)
    assert row.nonlinear_norm == pytest.approx(0.04)
    assert row.nonlinear_primed_norm == pytest.approx(0.08)
    assert row.bound.rhs == pytest.approx(0.2)
    assert row.contraction.rhs == pytest.approx(0.1)
    assert report.f_ball_norm == pytest.approx(0.5)
    assert not report.small_source.holds
    assert len(report.verdicts) == 2


def test_check_hypotheses_fails():
    report = fieldmaps.check_hypotheses(_system(b=0.6, lam=1))
    assert not report.passed
    assert report.rows[0].contraction.margin == pytest.approx(-0.7)
    assert report.rows[0].contraction.status == fieldmaps.VIOLATED
    assert report.to_json()['passed'] is False


def test_system_shape_validation():
    space = fieldmaps.MetricSpace.line(1)
    linear = fieldmaps.FieldMapKernel.zero(1, 2, gamma_slots=1)
    f = fieldmaps.FieldMapKernel.projection(1, 1, 0)
    with pytest.raises(ValueError, match='contraction'):
        _system(contraction=1)
    with pytest.raises(fieldmaps.ArityMismatch):
        fieldmaps.ImplicitSystem(space=space, f=[], linear=[], nonlinear=[], kappas=[1], lambdas=[])
    with pytest.raises(fieldmaps.ArityMismatch):
        fieldmaps.ImplicitSystem(space=space, f=[f, f], linear=[linear], nonlinear=[linear], kappas=[1], lambdas=[1])
    with pytest.raises(fieldmaps.ArityMismatch):
        fieldmaps.ImplicitSystem(space=space, f=[f], linear=[linear.with_gamma_slots(0)], nonlinear=[linear],
                                 kappas=[1], lambdas=[1])
    with pytest.raises(fieldmaps.DimensionMismatch):
        fieldmaps.ImplicitSystem(space=fieldmaps.MetricSpace.line(2), f=[f], linear=[linear], nonlinear=[linear],
                                 kappas=[1], lambdas=[1])


def test_system_structure_validation():
    space = fieldmaps.MetricSpace.line(1)
    f = fieldmaps.FieldMapKernel.projection(1, 1, 0)
    zero = fieldmaps.FieldMapKernel.zero(1, 2, gamma_slots=1)
    square = fieldmaps.FieldMapKernel.from_entries(1, 2, [(0, [[], [0, 0]], 1)], gamma_slots=1)
    gamma = fieldmaps.FieldMapKernel.projection(1, 2, 1, gamma_slots=1)
    with pytest.raises(fieldmaps.StructureViolation, match='linear'):
        fieldmaps.ImplicitSystem(space=space, f=[f], linear=[square], nonlinear=[zero], kappas=[1], lambdas=[1])
    with pytest.raises(fieldmaps.StructureViolation, match='nonlinear'):
        fieldmaps.ImplicitSystem(space=space, f=[f], linear=[zero], nonlinear=[gamma], kappas=[1], lambdas=[1])


def test_apply_and_tuples():
    system = _system()
    zero = system.zero_tuple()
    assert zero.ball_norm(system.w) == 0
    step, dropped = system.apply(zero, fieldmaps.TruncationOptions())
    assert not dropped
    assert step[0].table == system.f[0].table
    assert step.ball_norm(system.w) == pytest.approx(0.5)
    assert step.in_ball(system.w)
    assert (step - zero).max_abs_difference(step) == 0
    assert system.without_nonlinear().nonlinear[0].table == {}
    with pytest.raises(fieldmaps.ArityMismatch):
        fieldmaps.FieldMapTuple(entries=(), lambdas=(1,))
    with pytest.raises(ValueError, match='lambda'):
        fieldmaps.FieldMapTuple(entries=(system.f[0],), lambdas=(0,))
    assert system.to_json()['lambdas'] == [0.2]
