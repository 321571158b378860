import contextlib
import io
import json

import pytest

from fieldmaps._command._instance import fixture_path
from fieldmaps._command._main import main


def _run(*args: str):
    out = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(io.StringIO()):
        code = main(command_line_args=list(args))
    return code, json.loads(out.getvalue())


def test_main_compose():
    code, data = _run('compose', str(fixture_path('line3.json')), '--quiet')
    assert code == 0
    report = data['report']
    assert report['truncated'] is False
    assert report['output_norm'] <= report['input_norm']
    assert report['map_norms'][0] <= 0.5
    assert [v['status'] for v in data['verdicts']] == ['holds']


def test_main_diff():
    code, data = _run('diff', str(fixture_path('catalan.json')), '--quiet')
    assert code == 0
    assert sorted(data['report']) == ['f', 'g']
    g = data['report']['g']
    assert g['p'] == 1
    assert g['delta_norm'] == pytest.approx(0.54)
    assert g['sigma_norm'] == pytest.approx(2.04)
    assert data['summary']['holds'] == 2


def test_main_diff_second_order():
    code, data = _run('diff', str(fixture_path('catalan.json')), '--quiet', '--p', '2', '--target', 'g')
    assert code == 0
    assert list(data['report']) == ['g']
    assert data['report']['g']['delta_norm'] == pytest.approx(0.04)


def test_main_diff_bad_sigma():
    code, data = _run('diff', str(fixture_path('catalan.json')), '--quiet', '--sigma', '0.5')
    assert code == 2
    assert data['error']['code'] == 'InvalidArgument'
    assert 'sigma' in data['error']['message']


def test_main_product():
    code, data = _run('product', str(fixture_path('line3.json')), '--quiet')
    assert code == 0
    assert [v['name'] for v in data['verdicts']] == ['leibniz', 'submultiplicative']
    assert data['summary']['passed'] is True


def test_main_product_targets():
    code, data = _run('product', str(fixture_path('catalan.json')), '--quiet', '--target', 'B', '--target', 'B')
    assert code == 0
    assert data['report']['primed_norms']['C'] == pytest.approx(4 * 0.2**4)
    code, data = _run('product', str(fixture_path('catalan.json')), '--quiet', '--target', 'B')
    assert code == 2
    assert data['error']['detail'] == {'path': '$.product'}


def test_main_young():
    code, data = _run('young', str(fixture_path('line3.json')), '--quiet')
    assert code == 0
    young = data['report']['instance']
    assert young['verdict']['lhs'] == pytest.approx(9)
    assert young['verdict']['rhs'] == pytest.approx(9)
    assert 'random' not in data['report']


def test_main_young_random_draws():
    code, data = _run('young', str(fixture_path('line3.json')), '--quiet', '--draws', '3', '--seed', '4')
    assert code == 0
    assert data['report']['random'] == {str(n): {'draws': 3, 'violated': 0} for n in (1, 2, 3)}
    assert len(data['verdicts']) == 1
    assert data['summary']['holds'] == 10
