import contextlib
import io
import json
import pathlib
import tempfile

import pytest

from fieldmaps._command._instance import validate_against_schema
from fieldmaps._command._main import COMMANDS, main


def _run(*args: str):
    out = io.StringIO()
    err = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(command_line_args=list(args))
    return code, out.getvalue(), err.getvalue()


def _write_instance(d: pathlib.Path, data) -> str:
    path = d / 'instance.json'
    path.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(path)


def test_unknown_command():
    err = io.StringIO()
    with contextlib.redirect_stderr(err), pytest.raises(SystemExit) as ex:
        main(command_line_args=['frobnicate'])
    assert ex.value.code == 1
    assert 'UnknownCommand' in err.getvalue()
    assert 'fieldmaps verify-all' in err.getvalue()


def test_no_command():
    with contextlib.redirect_stderr(io.StringIO()), pytest.raises(SystemExit):
        main(command_line_args=[])


def test_help_lists_commands():
    code, out, err = _run('help')
    assert code == 0
    assert out == ''
    for name in COMMANDS:
        assert f'fieldmaps {name}\n' in err


def test_schema_error_has_json_path():
    with tempfile.TemporaryDirectory() as d:
        path = _write_instance(pathlib.Path(d), {
            'space': {'kind': 'line', 'num_points': 2},
            'weights': {'kappas': [-1]},
        })
        code, out, err = _run('norm', path, '--quiet')
    assert code == 2
    data = json.loads(out)
    assert data['error']['code'] == 'SchemaError'
    assert data['error']['detail'] == {'path': '$.weights.kappas[0]'}
    assert err.startswith('\033[31mSchemaError: ')


def test_metric_violation():
    with tempfile.TemporaryDirectory() as d:
        path = _write_instance(pathlib.Path(d), {'space': {'kind': 'matrix', 'distances': [[0, 1], [2, 0]]}})
        code, out, _ = _run('steiner', path, '--quiet')
    assert code == 2
    assert json.loads(out)['error']['code'] == 'MetricViolation'


def test_invalid_json():
    with tempfile.TemporaryDirectory() as d:
        path = _write_instance(pathlib.Path(d), '{"space": ')
        code, out, _ = _run('steiner', path, '--quiet')
    assert code == 2
    error = json.loads(out)['error']
    assert error['code'] == 'SchemaError'
    assert error['detail'] == {'path': '$'}


def test_missing_file():
    with tempfile.TemporaryDirectory() as d:
        code, out, _ = _run('steiner', str(pathlib.Path(d) / 'missing.json'), '--quiet')
    assert code == 2
    envelope = json.loads(out)
    validate_against_schema(envelope, 'report.json')
    assert sorted(envelope) == ['command', 'error']
    assert envelope['command'] == 'steiner'
    assert envelope['error']['code'] == 'FileError'


def test_bad_terminals():
    with tempfile.TemporaryDirectory() as d:
        path = _write_instance(pathlib.Path(d), {'space': {'kind': 'line', 'num_points': 2}})
        code, out, _ = _run('steiner', path, '--quiet', '--terminals', 'a,b')
        assert code == 2
        assert json.loads(out)['error']['code'] == 'InvalidArgument'
        code, out, _ = _run('steiner', path, '--quiet', '--terminals', '0,5')
        assert code == 2
        assert json.loads(out)['error']['code'] == 'UnknownPoint'
