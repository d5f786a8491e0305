"""One test per acceptance criterion; each prints a pass/fail line per check.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines.
"""
import pytest

from weilforms.verify import limits_grh_variant, run_suite

CRITERIA = [
    (1, "table1"),
    (2, "closed_forms"),
    (3, "exact_table"),
    (4, "cutoffs"),
    (5, "witnesses"),
    (6, "signatures"),
    (7, "oracles"),
    (8, "test_functions"),
    (9, "table2"),
    (10, "ring"),
    (11, "enumeration"),
    (12, "limits"),
]


def _report(number, checks):
    for c in checks:
        print(f"criterion {number:>2} {c.line()}")
    return [c.line() for c in checks if not c.ok]


@pytest.mark.parametrize("number,suite", CRITERIA, ids=[f"criterion_{n:02d}_{s}" for n, s in CRITERIA])
def test_criterion(number, suite):
    checks = run_suite(suite)
    assert checks
    assert _report(number, checks) == []


@pytest.mark.xfail(strict=True, reason="G_lambda gap at m=0 is about pi^2 * 7 zeta(3) / lambda^2 ~ 0.019 at lambda=64")
def test_criterion_12_limit_for_G_variant():
    assert _report(12, limits_grh_variant()) == []
