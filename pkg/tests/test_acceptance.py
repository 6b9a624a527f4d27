"""One line per acceptance check, printed as PASS, FAIL or INFO.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.  INFO
lines are exploratory values and never gate the run.
"""
from __future__ import annotations

import pytest

from quizzy.reports import verify

RESULT = verify("acceptance", experimental=True)


@pytest.mark.parametrize("check", RESULT.checks,
                         ids=[f"{c.criterion}-{c.name}".replace(" ", "_") for c in RESULT.checks])
def test_acceptance(check):
    print(check.line())
    assert check.passed is not False, check.detail


def test_discrepancies_are_complete():
    for d in RESULT.discrepancies:
        print(f"discrepancy {d.claim_source}: {d.status}")
        assert d.complete
