import contextlib
import io
import json
import pathlib
import tempfile

import pytest

from fieldmaps._command._instance import fixture_path
from fieldmaps._command._main import main


def _run(*args: str):
    out = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(io.StringIO()):
        code = main(command_line_args=list(args))
    return code, json.loads(out.getvalue())


def test_main_solve_catalan():
    code, data = _run('solve', str(fixture_path('catalan.json')), '--quiet')
    assert code == 0
    entries = data['report']['solution']['maps'][0]['entries']
    coefficients = {len(key[0]): value[0] for _, key, value in entries}
    assert coefficients[1] == pytest.approx(0.1)
    assert coefficients[3] == pytest.approx(0.002)
    assert coefficients[6] == pytest.approx(0.000042)
    certificate = data['report']['certificate']
    assert certificate['converged'] is True
    assert certificate['degree_cap'] == 6
    assert data['summary']['passed'] is True
    assert data['summary']['violated'] == 0


def test_main_solve_degree_cap_flag():
    code, data = _run('solve', str(fixture_path('catalan.json')), '--quiet', '--degree-cap', '3')
    assert code == 0
    assert data['report']['certificate']['degree_cap'] == 3
    assert len(data['report']['solution']['maps'][0]['entries']) == 3


def test_main_linear():
    code, data = _run('linear', str(fixture_path('linear.json')), '--quiet')
    assert code == 0
    (x, key, value), = data['report']['solution']['maps'][0]['entries']
    assert (x, key) == (0, [[0]])
    assert value[0] == pytest.approx(0.125)


def test_main_solve_max_iter():
    code, data = _run('solve', str(fixture_path('catalan.json')), '--quiet', '--max-iter', '1')
    assert code == 2
    assert data['error']['code'] == 'MaxIterExceeded'


def test_main_compare_needs_small_source():
    code, data = _run('compare', str(fixture_path('catalan.json')), '--quiet')
    assert code == 2
    assert data['error']['code'] == 'HypothesesFailed'
    assert data['error']['detail']['passed'] is True


def test_main_compare():
    instance = {
        'space': {'kind': 'line', 'num_points': 1},
        'weights': {'kappas': [1], 'lambdas': [1]},
        'maps': {
            'f': {'arity': 1, 'entries': [[0, [[0]], 0.05]]},
            'L': {'arity': 2, 'gamma_slots': 1, 'entries': []},
            'B': {'arity': 2, 'gamma_slots': 1, 'entries': [[0, [[], [0, 0]], 0.1]]},
        },
        'system': {'f': ['f'], 'L': ['L'], 'B': ['B']},
    }
    with tempfile.TemporaryDirectory() as d:
        path = pathlib.Path(d) / 'small.json'
        path.write_text(json.dumps(instance))
        code, data = _run('compare', str(path), '--quiet')
    assert code == 0
    assert data['instance'] == 'small.json'
    assert data['report']['sharp']['rhs'] == pytest.approx(0.002)
    assert data['report']['difference'] == pytest.approx(2.5253e-4, rel=1e-3)


def test_main_solve_rejects_failed_hypotheses():
    instance = json.loads(fixture_path('catalan.json').read_text())
    instance['weights']['lambdas'] = [1]
    instance['maps']['B']['entries'] = [[0, [[], [0, 0]], 0.6]]
    with tempfile.TemporaryDirectory() as d:
        path = pathlib.Path(d) / 'bad.json'
        path.write_text(json.dumps(instance))
        code, data = _run('solve', str(path), '--quiet')
    assert code == 2
    assert data == {
        'command': 'solve',
        'error': {
            'code': 'HypothesesFailed',
            'message': 'The system does not satisfy the contraction hypotheses.',
            'detail': data['error']['detail'],
        },
    }
    assert data['error']['detail']['rows'][0]['contraction']['margin'] == pytest.approx(-0.7)


def test_main_background():
    code, data = _run('background', str(fixture_path('background1.json')), '--quiet')
    assert code == 0
    certificate = data['report']['certificate']
    assert [v['rhs'] for v in certificate['corrections']] == pytest.approx([0.02, 0.02])
    assert certificate['min_degrees'] == [2, 2]
    assert certificate['instance']['smallness'] == pytest.approx(0.01)
    assert data['summary']['violated'] == 0


def test_main_uniq():
    code, data = _run('uniq', str(fixture_path('background1.json')), '--quiet', '--draws', '2', '--seed', '3')
    assert code == 0
    assert data['report']['trials'] == 2
    assert [v['name'] for v in data['verdicts']] == ['uniqueness_contraction', 'uniqueness']


def test_main_background_missing_section():
    code, data = _run('background', str(fixture_path('catalan.json')), '--quiet')
    assert code == 2
    assert data['error']['code'] == 'SchemaError'
    assert data['error']['detail'] == {'path': '$.background'}
