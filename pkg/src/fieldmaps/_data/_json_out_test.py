import numpy as np
import pytest

import fieldmaps


def test_json_value():
    assert fieldmaps.json_value(1 + 2j) == [1.0, 2.0]
    assert fieldmaps.json_value(np.float64(0.5)) == 0.5
    assert fieldmaps.json_value(np.int64(3)) == 3
    assert fieldmaps.json_value(np.bool_(True)) is True
    assert fieldmaps.json_value(np.array([1, 2])) == [1, 2]
    assert fieldmaps.json_value(float('inf')) == 'inf'
    assert fieldmaps.json_value(-float('inf')) == '-inf'
    assert fieldmaps.json_value(float('nan')) == 'nan'
    assert fieldmaps.json_value({1: (None, 'x')}) == {'1': [None, 'x']}
    assert fieldmaps.json_value(fieldmaps.Verdict.check('x', 1, 2)) == {
        'name': 'x', 'lhs': 1.0, 'rhs': 2.0, 'margin': 1.0, 'status': 'holds'}
    with pytest.raises(NotImplementedError):
        fieldmaps.json_value(object())


def test_dumps_report_is_deterministic():
    a = fieldmaps.dumps_report({'b': 1, 'a': [0.1, 2j]})
    b = fieldmaps.dumps_report({'a': [0.1, 2j], 'b': 1})
    assert a == b
    assert a.endswith('\n')
    assert a.index('"a"') < a.index('"b"')


def test_json_complex():
    assert fieldmaps.json_complex([1, -2]) == 1 - 2j
    assert fieldmaps.json_complex(0.5) == 0.5
    with pytest.raises(ValueError, match='re, im'):
        fieldmaps.json_complex([1, 2, 3])


def test_verdict():
    v = fieldmaps.Verdict.check('x', 2.0, 1.0)
    assert v.violated
    assert v.margin == -1
    assert fieldmaps.any_violated([fieldmaps.Verdict.check('y', 0, 1), v])
    assert not fieldmaps.any_violated([])
    assert fieldmaps.Verdict.check('x', 1 + 1e-12, 1.0).holds
    assert fieldmaps.Verdict.check('x', 1 + 1e-12, 1.0, rel_slack=0, abs_slack=0).violated
    assert eval(repr(v), {'fieldmaps': fieldmaps}) == v
