"""One test per acceptance criterion; each prints its PASS/FAIL line."""

import pytest

from marginal_resolvent.checks import CHECKS, run_check


@pytest.mark.slow
@pytest.mark.parametrize("key", [k for k, _, _ in CHECKS])
def test_criterion(key, capsys):
    r = run_check(key)
    with capsys.disabled():
        print("\n" + r.line())
    assert r.passed, r.details
