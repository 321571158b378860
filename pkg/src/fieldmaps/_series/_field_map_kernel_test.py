import math

import numpy as np
import pytest

import fieldmaps


def _exp_tail(n: int, z: float) -> float:
    return math.fsum(z**l / math.factorial(l) for l in range(n, 60))


def test_projection_and_linear_operator_norms():
    space = fieldmaps.MetricSpace.line(2)
    w = fieldmaps.WeightSystem(space, factors=(2,))
    p = fieldmaps.FieldMapKernel.projection(2, 1, 0, scale=0.1)
    assert p.kernel_norm(w) == pytest.approx(0.2)
    swap = fieldmaps.FieldMapKernel.from_linear_operator([[0, 1], [1, 0]])
    assert swap.kernel_norm(w) == pytest.approx(2 * math.e)
    details = swap.kernel_norm_details(w)
    assert details.profiles[0].left == pytest.approx(details.profiles[0].right)


def test_left_and_right_sums_differ():
    space = fieldmaps.MetricSpace.line(2)
    w = fieldmaps.WeightSystem(space, factors=(1,))
    spread = fieldmaps.FieldMapKernel.from_linear_operator([[1, 1], [0, 0]])
    profile = spread.kernel_norm_details(w).profiles[0]
    assert profile.left == pytest.approx(1 + math.e)
    assert profile.right == pytest.approx(math.e)
    assert spread.kernel_norm(w) == pytest.approx(1 + math.e)


@pytest.mark.parametrize('n,a,lam', [(1, 1.0, 0.5), (2, 1.0, 0.5), (3, 0.5, 1.0), (2, 1.0, 1.0)])
def test_truncated_exponential(n, a, lam):
    space = fieldmaps.MetricSpace.line(2)
    kernel = fieldmaps.FieldMapKernel.truncated_exponential(2, n, a, max_degree=25)
    w = fieldmaps.WeightSystem(space, factors=(lam,))
    assert kernel.kernel_norm(w) == pytest.approx(_exp_tail(n, a * lam), rel=1e-12)
    assert kernel.primed_norm(w) == pytest.approx(a * lam * _exp_tail(n - 1, a * lam), rel=1e-12)
    with pytest.raises(ValueError, match='constant term'):
        fieldmaps.FieldMapKernel.truncated_exponential(2, 0, a, max_degree=5)


@pytest.mark.parametrize('lam', [0.25, 0.5, 2.0])
def test_primed_norm_of_square(lam):
    space = fieldmaps.MetricSpace.line(1)
    sq = fieldmaps.FieldMapKernel.from_entries(1, 1, [(0, [[0, 0]], 1)], gamma_slots=1)
    w = fieldmaps.WeightSystem(space, factors=(lam,))
    assert sq.kernel_norm(w) == pytest.approx(lam**2)
    assert sq.primed_norm(w) == pytest.approx(2 * lam**2)


def test_primed_norm_counts_only_gamma_degrees():
    space = fieldmaps.MetricSpace.line(1)
    b = fieldmaps.FieldMapKernel.from_entries(1, 2, [(0, [[0, 0], [0]], 1)], gamma_slots=1)
    w = fieldmaps.WeightSystem(space, factors=(2, 0.5))
    assert b.kernel_norm(w) == pytest.approx(2)
    assert b.primed_norm(w) == pytest.approx(2)
    with pytest.raises(fieldmaps.NoGammaSlots):
        fieldmaps.FieldMapKernel.projection(1, 1, 0).primed_norm(fieldmaps.WeightSystem(space, factors=(1,)))


def test_no_constant_term():
    with pytest.raises(fieldmaps.StructureViolation, match='no constant term'):
        fieldmaps.FieldMapKernel(num_points=1, arity=1, table={(0, ((),)): 1})
    with pytest.raises(fieldmaps.UnknownPoint):
        fieldmaps.FieldMapKernel.from_entries(2, 1, [(2, [[0]], 1)])


def test_evaluate():
    swap = fieldmaps.FieldMapKernel.from_linear_operator([[0, 1], [1, 0]])
    np.testing.assert_allclose(swap.evaluate([[1, 2j]]), [2j, 1])
    sq = fieldmaps.FieldMapKernel.from_entries(2, 1, [(1, [[0, 1]], 3)])
    np.testing.assert_allclose(sq.evaluate([[2, 5]]), [0, 30])


def test_evaluate_map():
    identity = fieldmaps.FieldMapKernel.projection(3, 1, 0)
    np.testing.assert_allclose(fieldmaps.evaluate_map(identity, [[1, -2, 3j]]), [1, -2, 3j])
    sq = fieldmaps.FieldMapKernel.from_entries(3, 2, [(0, [[1], [2]], 2), (2, [[0, 0], []], 1)])
    np.testing.assert_array_equal(fieldmaps.evaluate_map(sq, [[0, 0, 0], [0, 0, 0]]), [0, 0, 0])
    with pytest.raises(fieldmaps.ArityMismatch):
        fieldmaps.evaluate_map(sq, [[1, 1, 1]])


def test_to_function_norm_matches_kernel_norm():
    rng = np.random.default_rng(11)
    space = fieldmaps.MetricSpace.from_coordinates(rng.uniform(0, 2, size=(3, 2)))
    for _ in range(10):
        a = fieldmaps.random_kernel(rng, 3, 2, max_degree=3)
        w = fieldmaps.WeightSystem(space, factors=rng.uniform(0.5, 2, size=2))
        assert a.to_function().norm(w.extended([1], prepend=True)) == pytest.approx(a.kernel_norm(w), rel=1e-12)


def test_gamma_structure():
    b = fieldmaps.FieldMapKernel.from_entries(
        2, 2, [(0, [[0], [1]], 1), (1, [[], [0, 1]], 2), (1, [[0, 0], [1, 1, 1]], 3)], gamma_slots=1)
    assert b.field_slots == 1
    assert b.gamma_degree_range() == (1, 3)
    assert sorted(p.degrees for p in b.gamma_profile_pieces()) == [(1,), (2,), (3,)]
    assert b.restrict_degrees(2).gamma_degree_range() == (2, 3)
    assert b.restrict_degrees(2, 2).gamma_degree_range() == (2, 2)
    assert b.restrict_total_degree(0, 2).degree_range() == (2, 2)
    with pytest.raises(fieldmaps.NoGammaSlots):
        fieldmaps.FieldMapKernel.projection(2, 1, 0).restrict_degrees(1)


def test_embed():
    a = fieldmaps.FieldMapKernel.from_linear_operator([[1, 2, 0], [0, 1, 3], [4, 0, 1]])
    e = a.embed([0, 1], [1, 2])
    assert set(e.table) == {(1, ((1,),)), (2, ((0,),))}
    with pytest.raises(fieldmaps.UnknownPoint):
        a.embed([0, 3], [0])


def test_lp_norm_bound_check_sup_norm():
    rng = np.random.default_rng(3)
    space = fieldmaps.MetricSpace.line(3)
    for _ in range(10):
        kappa = rng.uniform(0.5, 2)
        w = fieldmaps.WeightSystem(space, factors=(kappa,))
        a = fieldmaps.random_kernel(rng, 3, 1, max_degree=3)
        field = fieldmaps.random_field(rng, 3, kappa)
        assert fieldmaps.lp_norm_bound_check(a, w, [1], math.inf, [math.inf], [field]).holds
    with pytest.raises(fieldmaps.ExponentMismatch):
        fieldmaps.lp_norm_bound_check(a, w, [1], 2, [1], [field])


def test_arithmetic_and_json():
    a = fieldmaps.FieldMapKernel.from_entries(2, 1, [(0, [[0, 1]], 1), (1, [[1]], 2j)])
    b = fieldmaps.FieldMapKernel.projection(2, 1, 0)
    assert (a - a).table == {}
    assert (-a).scaled(-1) == a
    assert (a + b).table[(0, ((0,),))] == 1
    assert fieldmaps.FieldMapKernel.from_json(fieldmaps.json_value(a), 2) == a
    assert eval(repr(a), {'fieldmaps': fieldmaps}) == a
    with pytest.raises(fieldmaps.ArityMismatch):
        a + fieldmaps.FieldMapKernel.zero(2, 2)
