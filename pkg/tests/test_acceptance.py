"""The acceptance table; every criterion's PASS/FAIL line is echoed in the run summary."""

import pytest

from toriplan import acceptance


@pytest.mark.parametrize("criterion", acceptance.CRITERIA, ids=lambda f: f.__name__)
def test_criterion(criterion, record_line):
    result = criterion()
    record_line(result.line())
    assert result.ok, result.line()
