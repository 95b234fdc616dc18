"""Acceptance gate: one pass/fail line per criterion, printed with ``pytest -s`` and in the summary."""
import pytest

from dlcohomology import sweeps

CRITERIA = list(enumerate(sweeps.ALL_CRITERIA, start=1))
_results = {}


@pytest.mark.parametrize("number, fn", CRITERIA, ids=[f"criterion_{k}" for k, _ in CRITERIA])
def test_criterion(number, fn):
    res = fn()
    _results[number] = res
    print(res.line())
    if not res.passed:
        pytest.fail(f"{res.summary}; first failures: {res.failures[:5]}", pytrace=False)


def pytest_terminal_summary_lines():
    return [r.line() for _, r in sorted(_results.items())]
