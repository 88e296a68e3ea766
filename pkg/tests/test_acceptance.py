"""The ten acceptance criteria; each prints one PASS/FAIL line."""

import pytest

from upic.checks import CHECKS, run_check


@pytest.mark.parametrize("number", range(1, len(CHECKS) + 1), ids=lambda k: f"criterion{k:02d}")
def test_criterion(number, record_acceptance):
    result = run_check(number)
    line = result.line()
    print(line)
    record_acceptance(number, line)
    assert result.passed, line


def test_suite_is_complete():
    assert len(CHECKS) == 10


def test_total_time_under_a_minute():
    total = sum(run_check(k).seconds for k in range(1, len(CHECKS) + 1))
    assert total < 60
