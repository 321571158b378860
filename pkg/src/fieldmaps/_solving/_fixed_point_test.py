import numpy as np
import pytest

import fieldmaps


def _quadratic(*, f: float, b: float, lam: float, contraction: float = 0.5) -> fieldmaps.ImplicitSystem:
    """gamma = f alpha + b gamma^2 on a single point."""
    return fieldmaps.ImplicitSystem(
        space=fieldmaps.MetricSpace.line(1),
        f=[fieldmaps.FieldMapKernel.projection(1, 1, 0, scale=f)],
        linear=[fieldmaps.FieldMapKernel.zero(1, 2, gamma_slots=1)],
        nonlinear=[fieldmaps.FieldMapKernel.from_entries(1, 2, [(0, [[], [0, 0]], b)], gamma_slots=1)],
        kappas=[1],
        lambdas=[lam],
        contraction=contraction,
    )


def test_catalan_coefficients():
    gamma, certificate = fieldmaps.solve_fixed_point(_quadratic(f=0.1, b=1, lam=0.2))
    expected = [0.1, 0.01, 0.002, 0.0005, 0.00014, 0.000042]
    for k, c in enumerate(expected, start=1):
        assert gamma[0].table[(0, ((0,) * k,))] == pytest.approx(c, rel=1e-9)
    assert len(gamma[0].table) == 6
    assert certificate.converged
    assert certificate.truncated
    assert certificate.failure is None
    assert certificate.iterations <= certificate.iteration_cap
    assert certificate.contraction_violations == 0
    assert certificate.left_ball == 0
    assert certificate.contraction.holds
    assert certificate.ball.holds
    assert all(v.holds for v in certificate.verdicts)


def test_linear_solve():
    system = fieldmaps.ImplicitSystem(
        space=fieldmaps.MetricSpace.line(1),
        f=[fieldmaps.FieldMapKernel.projection(1, 1, 0, scale=0.1)],
        linear=[fieldmaps.FieldMapKernel.projection(1, 2, 1, gamma_slots=1, scale=0.2)],
        nonlinear=[fieldmaps.FieldMapKernel.zero(1, 2, gamma_slots=1)],
        kappas=[1],
        lambdas=[1],
        contraction=0.2,
    )
    gamma, certificate = fieldmaps.solve_linear(system)
    assert gamma[0].table[(0, ((0,),))] == pytest.approx(0.125)
    assert not certificate.truncated
    assert certificate.solution_bound.holds


def test_solve_rejects_failed_hypotheses():
    with pytest.raises(fieldmaps.HypothesesFailed) as ex:
        fieldmaps.solve_fixed_point(_quadratic(f=0.1, b=0.6, lam=1))
    assert ex.value.report.rows[0].contraction.margin == pytest.approx(-0.7)
    assert ex.value.to_json()['code'] == 'HypothesesFailed'


def test_solve_max_iter():
    options = fieldmaps.SolveOptions(max_iter=2)
    with pytest.raises(fieldmaps.MaxIterExceeded) as ex:
        fieldmaps.solve_fixed_point(_quadratic(f=0.1, b=1, lam=0.2), options)
    certificate = ex.value.certificate
    assert not certificate.converged
    assert certificate.iterations == 2
    assert certificate.failure == 'no convergence after 2 iterations'
    assert certificate.residual.status != fieldmaps.VIOLATED
    assert len(ex.value.iterate) == 1


def test_solve_progress_and_restart():
    system = _quadratic(f=0.1, b=1, lam=0.2)
    seen = []
    gamma, certificate = fieldmaps.solve_fixed_point(system, progress_callback=lambda k, change: seen.append(k))
    assert seen == list(range(1, certificate.iterations + 1))
    rng = np.random.default_rng(3)
    for _ in range(3):
        start = fieldmaps.random_ball_tuple(rng, system)
        assert start.in_ball(system.w)
        restarted, _ = fieldmaps.solve_fixed_point(system, initial=start)
        assert restarted.max_abs_difference(gamma) <= 1e-9


def test_solve_random_admissible():
    rng = np.random.default_rng(8)
    options = fieldmaps.SolveOptions(truncation=fieldmaps.TruncationOptions(degree_cap=4))
    for _ in range(5):
        space = fieldmaps.MetricSpace.from_coordinates(rng.uniform(0, 2, size=(2, 2)))
        system = fieldmaps.random_admissible_system(rng, space, num_unknowns=2)
        assert fieldmaps.check_hypotheses(system).passed
        _, certificate = fieldmaps.solve_fixed_point(system, options)
        assert not any(v.violated for v in certificate.verdicts), certificate.verdicts


def test_compare_to_linear():
    report = fieldmaps.compare_to_linear(_quadratic(f=0.05, b=0.1, lam=1))
    assert report.sharp.rhs == pytest.approx(0.002)
    assert report.difference == pytest.approx(2.5253e-4, rel=1e-3)
    assert report.sharp.holds
    assert report.coarse.holds
    assert len(report.verdicts) == 12


def test_compare_needs_small_source():
    with pytest.raises(fieldmaps.HypothesesFailed, match='comparison'):
        fieldmaps.compare_to_linear(_quadratic(f=0.1, b=1, lam=0.2))


def test_iteration_cap():
    assert fieldmaps.iteration_cap(0.5, 1.0, fieldmaps.SolveOptions(tol=1e-3, iteration_margin=3)) == 14
    assert fieldmaps.iteration_cap(0.5, 0.0, fieldmaps.SolveOptions(iteration_margin=3)) == 3
    assert fieldmaps.iteration_cap(0.9, 1.0, fieldmaps.SolveOptions(max_iter=7)) == 7


def test_contraction_and_ball_verdicts_need_hypotheses():
    system = fieldmaps.ImplicitSystem(
        space=fieldmaps.MetricSpace.line(1),
        f=[fieldmaps.FieldMapKernel.projection(1, 1, 0, scale=0.5)],
        linear=[fieldmaps.FieldMapKernel.projection(1, 2, 1, gamma_slots=1, scale=0.9)],
        nonlinear=[fieldmaps.FieldMapKernel.zero(1, 2, gamma_slots=1)],
        kappas=[1],
        lambdas=[1],
        contraction=0.2,
    )
    assert not fieldmaps.check_hypotheses(system).passed
    try:
        _, certificate = fieldmaps.solve_fixed_point(system, fieldmaps.SolveOptions(max_iter=600),
                                                     require_hypotheses=False)
    except fieldmaps.MaxIterExceeded as ex:
        certificate = ex.certificate
    assert certificate.contraction_violations > 0
    assert certificate.left_ball > 0
    assert certificate.contraction.status == fieldmaps.HYPOTHESIS_NOT_MET
    assert certificate.ball.status == fieldmaps.HYPOTHESIS_NOT_MET
