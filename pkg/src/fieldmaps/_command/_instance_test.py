import numpy as np
import pytest

import fieldmaps
from fieldmaps._command._instance import (
    fixture_path,
    json_path,
    load_instance,
    parse_instance,
    shipped_fixtures,
)


def test_json_path():
    assert json_path([]) == '$'
    assert json_path(['system', 'f', 0]) == '$.system.f[0]'


def test_minimal_instance():
    instance = parse_instance({'space': {'kind': 'line', 'num_points': 1}})
    assert instance.name is None
    assert instance.kappas == ()
    assert instance.functions == {}
    assert instance.system is None
    assert instance.solve_options == fieldmaps.SolveOptions()


def test_catalan_fixture():
    instance = load_instance(str(fixture_path('catalan.json')))
    assert instance.name == 'catalan.json'
    system = instance.system
    assert system.kappas == (1.0,)
    assert system.lambdas == (0.2,)
    assert system.contraction == 0.5
    assert system.f[0].table == {(0, ((0,),)): 0.1}
    assert system.nonlinear[0].table == {(0, ((), (0, 0))): 1}
    assert instance.product == ('B', 'B')
    assert fieldmaps.check_hypotheses(system).passed


def test_every_fixture_loads():
    names = [p.name for p in shipped_fixtures()]
    assert names == ['background1.json', 'catalan.json', 'exponential.json', 'line3.json', 'linear.json']
    for path in shipped_fixtures():
        load_instance(str(path))


def test_line3_fixture():
    instance = load_instance(str(fixture_path('line3.json')))
    assert instance.sigma == 2
    h = instance.functions['h']
    assert h.table[((0, 2),)] == pytest.approx(-0.125)
    assert h.table[((2,),)] == 0.5 + 0.5j
    assert instance.compose == ('h', ('A',))
    np.testing.assert_array_equal(instance.young.kernel.values, np.eye(3))


def test_mass_scales_metric():
    instance = parse_instance({'space': {'kind': 'line', 'num_points': 2, 'mass': 3}, 'weights': {'kappas': [1]}})
    assert instance.space.distance(0, 1) == 1
    assert instance.metric_space.distance(0, 1) == 3
    assert instance.w.space.distance(0, 1) == 3


def test_options_overrides():
    instance = load_instance(str(fixture_path('background1.json')))
    assert instance.options().truncation.degree_cap == 5
    options = instance.options(degree_cap=2, tol=1e-6, max_iter=9)
    assert options.truncation.degree_cap == 2
    assert options.tol == 1e-6
    assert options.max_iter == 9


@pytest.mark.parametrize('data,path', [
    ({'space': {'kind': 'line'}}, '$.space'),
    ({'space': {'kind': 'line', 'num_points': 1}, 'bogus': 1}, '$'),
    ({'space': {'kind': 'line', 'num_points': 1}, 'compose': {'outer': 'h', 'maps': ['A']}}, '$.compose.outer'),
    ({'space': {'kind': 'line', 'num_points': 1}, 'product': {'a': 'x', 'b': 'y'}}, '$.product.a'),
    ({'space': {'kind': 'line', 'num_points': 1}, 'system': {'f': ['f'], 'L': ['L'], 'B': ['B']}}, '$.system.f[0]'),
    ({'space': {'kind': 'line', 'num_points': 1},
      'young': {'values': [[1, 2], [3]], 'measures': [[1], [1]], 'functions': [[1], [1]], 'exponents': [2, 2]}},
     '$.young.values'),
])
def test_schema_errors(data, path):
    with pytest.raises(fieldmaps.SchemaError) as ex:
        parse_instance(data)
    assert ex.value.path == path


def test_map_errors_carry_path():
    data = {
        'space': {'kind': 'line', 'num_points': 2},
        'maps': {'A': {'arity': 1, 'entries': [[5, [[0]], 1]]}},
    }
    with pytest.raises(fieldmaps.UnknownPoint) as ex:
        parse_instance(data)
    assert ex.value.detail['path'] == '$.maps.A'


def test_weights_for_map_mismatch():
    instance = load_instance(str(fixture_path('catalan.json')))
    with pytest.raises(fieldmaps.ArityMismatch):
        instance.weights_for_map(fieldmaps.FieldMapKernel.projection(1, 2, 0))
    with pytest.raises(fieldmaps.SchemaError, match='background'):
        instance.require('background')


def test_singular_background_operator():
    data = {
        'space': {'kind': 'line', 'num_points': 1},
        'maps': {'W': {'kind': 'bilinear', 'entries': [[0, 0, 0, 0.01]]}},
        'background': {'W': ['W', 'W'], 'S': [[[0]], [[1]]]},
    }
    with pytest.raises(fieldmaps.SingularOperator):
        parse_instance(data)
