"""Acceptance criteria 1-13, each run at its stated scale and tolerance.

Every criterion prints one "criterion k: PASS/FAIL" line (collected in the
terminal summary as well). Criterion 4 fails: the cubic-phase closed form is
wrong at p = 3 when v(a) = v(b) = -1, and the test is marked as an expected
failure with that reason rather than excluded from the sample.
"""

import pytest

from conftest import CRITERIA_LINES
from whitlab.suites import (
    airy_suite,
    coefficient_suite,
    cubic_suite,
    decomposition_suite,
    elementary_suite,
    gauss_1d_suite,
    gauss_2d_suite,
    gauss_chi_suite,
    haar_suite,
    ip_vanishing_suite,
    substitution_suite,
    whittaker_support_suite,
)

SEED = 0


def report(k: int, res, limit_s: float, extra: str = "") -> bool:
    ok = res.passed and res.seconds <= limit_s
    status = "PASS" if ok else "FAIL"
    line = (f"criterion {k}: {status} {res.name}: {res.checked} checked, {res.failures} failures, "
            f"{res.seconds:.1f}s (limit {limit_s:.0f}s){extra}")
    print(line)
    CRITERIA_LINES.append(line)
    return ok


def assert_clean(res, limit_s):
    assert res.failures == 0, res.witnesses
    assert res.checked > 0
    assert res.seconds <= limit_s


def test_criterion_01_gauss_1d():
    res = gauss_1d_suite(SEED)
    report(1, res, 120)
    assert_clean(res, 120)


def test_criterion_02_character_gauss_sums():
    res = gauss_chi_suite(SEED)
    report(2, res, 300)
    assert_clean(res, 300)


def test_criterion_03_gauss_2d():
    res = gauss_2d_suite(SEED)
    report(3, res, 120)
    assert_clean(res, 120)
    assert res.checked == 2 * 3 * 200


@pytest.mark.xfail(strict=True, reason="closed form misses the linear-term phase psi(-a^2/4b) at p = 3, "
                                       "v(a) = v(b) = -1, where t^3 = t mod 3")
def test_criterion_04_cubic_phase():
    res = cubic_suite(SEED)
    strata = res.detail.get("failing_strata", {})
    report(4, res, 60, f"; failing strata {strata}" if strata else "")
    assert res.checked == 500
    assert_clean(res, 60)


def test_criterion_04_failures_confined_to_one_stratum():
    """Companion to criterion 4: every failure lies in the p = 3, v(a) = v(b) = -1 stratum."""
    res = cubic_suite(SEED)
    assert set(res.detail.get("failing_strata", {})) <= {"p=3 v(a)=-1 v(b)=-1"}


def test_criterion_05_airy():
    res = airy_suite(SEED)
    report(5, res, 300, f"; max |Ai|/bound {res.detail['max_ratio_to_bound']}")
    assert_clean(res, 300)
    assert res.detail["annuli_checked"] > 0


@pytest.fixture(scope="module")
def support_run():
    return whittaker_support_suite(SEED)


def test_criterion_06_whittaker_support(support_run):
    res = support_run
    report(6, res, 600)
    assert_clean(res, 600)


def test_criterion_07_balanced_consistency(support_run):
    b = support_run.detail["balanced"]

    class R:
        name = b["suite"]
        passed = b["passed"]
        checked = b["checked"]
        failures = b["failures"]
        seconds = support_run.seconds

    report(7, R, 600)
    assert b["failures"] == 0 and b["checked"] > 0, b["witnesses"]


REQUIRED_8 = [
    "p=5 n=8 {kind} lower(1)", "p=5 n=8 {kind} lower(2)", "p=5 n=8 {kind} lower(3)",
    "p=5 n=8 {kind} S(1) branch +", "p=5 n=8 {kind} S(1) branch -",
    "p=5 n=8 {kind} U(0)", "p=5 n=8 {kind} U(2)",
]


def test_criterion_08_ip_vanishing():
    res = ip_vanishing_suite(SEED, mmax=40)
    rows = res.detail["configurations"]
    vac = sorted(k for k, v in rows.items() if v["vacuous"])
    report(8, res, 1800, f"; vacuous: {', '.join(vac)}")
    assert_clean(res, 1800)
    for kind in ("split", "unramified"):
        for label in REQUIRED_8:
            assert label.format(kind=kind) in rows
    assert "p=3 n=9 ramified lower(1)" in rows
    for v in rows.values():
        assert v["confirmed_zero"] == v["predicted_zero"]
    assert sum(not v["vacuous"] for v in rows.values()) >= 10


def test_criterion_09_substitution():
    res = substitution_suite(SEED)
    report(9, res, 60)
    assert_clean(res, 60)
    assert res.checked == 100


def test_criterion_10_elementary():
    res = elementary_suite(SEED)
    report(10, res, 60)
    assert_clean(res, 60)
    assert res.detail["quadruples"] == 10_000


def test_criterion_11_coefficients():
    res = coefficient_suite(SEED)
    report(11, res, 300)
    assert_clean(res, 300)


def test_criterion_12_haar():
    res = haar_suite(SEED)
    report(12, res, 120)
    assert_clean(res, 120)


def test_criterion_13_decomposition():
    res = decomposition_suite(SEED)
    report(13, res, 60)
    assert_clean(res, 60)
    assert res.checked == 100
