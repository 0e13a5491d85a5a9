"""One test per acceptance criterion; all checks exact.

Each criterion prints a ``[PASS]``/``[FAIL]`` line, and the lines are repeated
in the terminal summary so they are visible without ``-s``.
"""

import re

import pytest

from liediff.acceptance import CRITERIA, DEFAULT_SEED, run_criterion

RESULTS = {}


@pytest.mark.parametrize("number", [n for n, _, _ in CRITERIA],
                         ids=[f"{n:02d}-" + re.sub(r"[^a-z0-9]+", "-", title.lower())[:32].strip("-")
                              for n, title, _ in CRITERIA])
def test_criterion(number):
    result = run_criterion(number, DEFAULT_SEED)
    RESULTS[number] = result
    print(result.line())
    failures = [d for d in result.details if d.startswith("FAIL")]
    for d in failures:
        print("    " + d)
    assert result.passed, "\n".join(failures)
