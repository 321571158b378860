import math

import numpy as np
import pytest

from fieldmaps._command._printer import ThrottledProgressPrinter
from fieldmaps._command._suites import (
    agreement,
    run_suites,
    suite_exponential,
    SUITE_SHARES,
    SUITES,
    SuiteResult,
    truncated_exponential_value,
)
from fieldmaps._data import Verdict

QUIET = ThrottledProgressPrinter(enabled=False)


def test_truncated_exponential_value():
    assert truncated_exponential_value(0, 1.0) == pytest.approx(math.e)
    assert truncated_exponential_value(2, 0.5) == pytest.approx(math.exp(0.5) - 1.5)
    assert truncated_exponential_value(-1, 0.5) == pytest.approx(math.exp(0.5))


def test_agreement():
    assert agreement('x', 1.0, 1.0 + 1e-14, 1e-12).status == 'holds'
    assert agreement('x', 1.0, 1.1, 1e-12).status == 'violated'
    assert agreement('x', 1e6, 1e6 + 1e-7, 1e-12).status == 'holds'


def test_suite_result_to_json():
    verdicts = [
        Verdict.check('a', 1, 2, hypothesis=True),
        Verdict.check('b', 2, 1, hypothesis=True),
        Verdict.check('c', 2, 1, hypothesis=False),
    ]
    data = SuiteResult(name='s', draws=3, verdicts=verdicts).to_json()
    assert data['draws'] == 3
    assert data['checks'] == 3
    assert data['holds'] == 1
    assert data['violated'] == 1
    assert data['hypothesis not met'] == 1
    assert data['tightest'].name in ('b', 'c')
    assert SuiteResult(name='s', draws=0, verdicts=[]).to_json()['tightest'] is None


def test_exponential_suite_agrees():
    verdicts = suite_exponential(np.random.default_rng(0), 0, QUIET)
    assert len(verdicts) == 24
    assert all(v.status == 'holds' for v in verdicts)


def test_no_draws_runs_nothing():
    results = run_suites(0, 0, QUIET)
    assert [r.name for r in results] == list(SUITES)
    assert all(r.draws == 0 and r.verdicts == [] for r in results)


def test_small_run_holds_and_is_deterministic():
    first = run_suites(2, 5, QUIET)
    second = run_suites(2, 5, QUIET)
    for a, b in zip(first, second):
        assert a.draws == b.draws
        assert [v.lhs for v in a.verdicts] == [v.lhs for v in b.verdicts]
        assert all(v.status != 'violated' for v in a.verdicts), a.name
    draws = {r.name: r.draws for r in first}
    assert draws['difference'] == 2
    for name in SUITE_SHARES:
        assert draws[name] == 1
