import numpy as np
import pytest

import fieldmaps


def _single_point(w: float = 0.01, k: float = 1.0) -> fieldmaps.BackgroundInstance:
    interaction = fieldmaps.FieldMapKernel.bilinear(1, [(0, 0, 0, w)])
    return fieldmaps.BackgroundInstance(
        space=fieldmaps.MetricSpace.line(1),
        w1=interaction,
        w2=interaction,
        s1=[[1]],
        s2=[[1]],
        k=k,
    )


def test_instance_constants():
    instance = _single_point()
    assert instance.s_bar == pytest.approx(1)
    assert instance.w_bar == pytest.approx(0.01)
    assert instance.smallness == pytest.approx(0.01)
    assert instance.smallness_limit == pytest.approx(1 / 12)
    assert instance.hypothesis.holds
    assert instance.contraction_constant == pytest.approx(2 * 0.01 * 7 / 6)
    assert _single_point(k=10).smallness_limit == pytest.approx(0.05)


def test_build_system():
    system = fieldmaps.build_system(_single_point())
    assert system.f[0].table == {(0, ((0,), (0,))): -0.01}
    assert system.kappas == (1.0, 1.0)
    assert system.contraction == 0.5
    assert system.nonlinear[0].gamma_degree_range() == (2, 2)
    assert system.linear[0].gamma_degree_range() == (1, 1)
    assert all(v.holds for v in fieldmaps.kernel_bound_verdicts(_single_point(), system))


def test_solve_background_single_point():
    corrections, certificate = fieldmaps.solve_background(_single_point())
    assert [v.rhs for v in certificate.corrections] == pytest.approx([0.02, 0.02])
    assert certificate.min_degrees == (2, 2)
    assert corrections[0].table[(0, ((0,), (0,)))] == pytest.approx(-0.01)
    assert not any(v.violated for v in certificate.verdicts), certificate.verdicts
    assert certificate.residual.holds
    assert certificate.to_json()['instance']['K'] == 1


def test_solve_background_rejects_large_coupling():
    with pytest.raises(fieldmaps.HypothesesFailed, match='S_bar'):
        fieldmaps.solve_background(_single_point(w=0.2))
    with pytest.raises(fieldmaps.HypothesesFailed):
        fieldmaps.uniqueness_probe(_single_point(w=0.2), 1)


def test_hypothesis_is_strict():
    boundary = _single_point(w=1 / 12)
    assert boundary.smallness == boundary.smallness_limit
    assert boundary.hypothesis.violated
    with pytest.raises(fieldmaps.HypothesesFailed, match='not below'):
        fieldmaps.solve_background(boundary)
    assert _single_point(w=np.nextafter(1 / 12, 0)).hypothesis.holds


def test_instance_validation():
    interaction = fieldmaps.FieldMapKernel.bilinear(1, [(0, 0, 0, 0.01)])
    space = fieldmaps.MetricSpace.line(1)
    with pytest.raises(fieldmaps.SingularOperator):
        fieldmaps.BackgroundInstance(space=space, w1=interaction, w2=interaction, s1=[[0]], s2=[[1]])
    with pytest.raises(fieldmaps.DimensionMismatch):
        fieldmaps.BackgroundInstance(space=space, w1=interaction, w2=interaction, s1=np.eye(2), s2=[[1]])
    with pytest.raises(fieldmaps.DimensionMismatch):
        fieldmaps.BackgroundInstance(space=space, w1=fieldmaps.FieldMapKernel.projection(1, 1, 0), w2=interaction,
                                     s1=[[1]], s2=[[1]])
    with pytest.raises(ValueError, match='mass'):
        fieldmaps.BackgroundInstance(space=space, w1=interaction, w2=interaction, s1=[[1]], s2=[[1]], mass=0)


def test_weighted_op_norm():
    space = fieldmaps.MetricSpace.line(2)
    assert fieldmaps.weighted_op_norm([[0, 1], [1, 0]], space, 1.0) == pytest.approx(np.e)
    assert fieldmaps.weighted_op_norm([[1, 0], [0, 2]], space, 5.0) == pytest.approx(2)
    assert fieldmaps.weighted_op_norm([[1, 1], [0, 1]], space, 0.0) == pytest.approx(2)
    with pytest.raises(fieldmaps.DimensionMismatch):
        fieldmaps.weighted_op_norm(np.eye(3), space, 1.0)


def test_uniqueness_probe():
    report = fieldmaps.uniqueness_probe(_single_point(), 3, seed=5)
    assert report.trials == 3
    assert len(report.differences) == 3
    assert report.agreement.holds
    assert report.contraction.holds
    assert [v.name for v in report.verdicts] == ['uniqueness_contraction', 'uniqueness']


def test_random_instance_solves():
    rng = np.random.default_rng(6)
    options = fieldmaps.SolveOptions(truncation=fieldmaps.TruncationOptions(degree_cap=4))
    instance = fieldmaps.random_admissible_instance(rng, 3, k=2)
    assert instance.hypothesis.holds
    _, certificate = fieldmaps.solve_background(instance, options)
    assert not any(v.violated for v in certificate.verdicts), certificate.verdicts
