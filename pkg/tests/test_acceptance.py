"""One test per acceptance criterion; each prints a PASS/FAIL line (run with -s to see them live)."""

import pytest

from tracezero.acceptance import CRITERIA, run_criterion

RESULTS = []


@pytest.mark.parametrize("number", [n for n, _, _ in CRITERIA], ids=[f"criterion_{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(number):
    result = run_criterion(number)
    RESULTS.append(result)
    print(result.line())
    assert result.passed, result.detail
