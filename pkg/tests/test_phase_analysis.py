import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from whitlab.errors import ConstraintViolated, HypothesisFailed, OutOfRange
from whitlab.exp_sums import ExactExponentialSum
from whitlab.padic_core import INF, PadicScalar
from whitlab.phase_analysis import (
    PhaseSeries,
    TupleM,
    VanishingCase,
    WhittakerHandle,
    admissible_t0,
    alpha_inequalities,
    elementary_min_valuation,
    find_level,
    h_prime,
    ip_bruteforce,
    ip_vanishing_predicate,
    phase_bruteforce,
    phi_series,
    substitute_integral,
    v_of_tuple,
    vanish_threshold,
)
from whitlab.suites import random_tuple
from whitlab.whittaker import rep_derive

P = 40
SPLIT8 = rep_derive("split", 5, b0=2, a_xi=4)


def F(p, x, prec=P):
    return PadicScalar.from_rational(p, Fraction(x), prec)


def test_v_of_tuple():
    assert v_of_tuple(TupleM(1, 1, 1, 1), 5) == INF
    assert v_of_tuple(TupleM(1, 4, 2, 3), 5) == 0
    assert v_of_tuple(TupleM(1, 9, 3, 7), 3) == 1
    with pytest.raises(ConstraintViolated):
        TupleM(1, 2, 3, 4)


def test_thresholds():
    assert vanish_threshold(VanishingCase("lower", 1, 8)) == 2
    assert vanish_threshold(VanishingCase("S", 1, 8)) == 3
    assert vanish_threshold(VanishingCase("U", 2, 8)) == 4
    assert vanish_threshold(VanishingCase("U", 1, 8)) == 4
    with pytest.raises(OutOfRange):
        vanish_threshold(VanishingCase("lower", 4, 8))


def test_predicate():
    low = VanishingCase("lower", 1, 8)
    assert not ip_vanishing_predicate(TupleM(1, 2, 1, 2), low, 5)
    assert ip_vanishing_predicate(TupleM(1, 3, 2, 2), low, 5)
    assert ip_vanishing_predicate(TupleM(5, 15, 10, 10), VanishingCase("S", 1, 8), 5)
    # the vanishing statements assume v(m1 + m2) = s; (1, 4, 2, 3) has m1 + m2 = 5
    with pytest.raises(ConstraintViolated):
        ip_vanishing_predicate(TupleM(1, 4, 2, 3), low, 5)
    with pytest.raises(ConstraintViolated):
        ip_vanishing_predicate(TupleM(5, 20, 10, 15), VanishingCase("S", 1, 8), 5)


def test_sum_condition_is_needed():
    """Without v(m1 + m2) = 0 the Lower(1) threshold fails on many tuples."""
    W = WhittakerHandle(SPLIT8, VanishingCase.for_spec(SPLIT8, "lower", 1))
    for ms in ((1, 9, 4, 6), (2, 8, 3, 7), (1, 14, 6, 9)):
        m = TupleM(*ms)
        assert v_of_tuple(m, 5) < 2
        assert not ip_bruteforce(W, m).is_zero


def test_ip_examples():
    case = VanishingCase.for_spec(SPLIT8, "lower", 1)
    W = WhittakerHandle(SPLIT8, case)
    assert ip_bruteforce(W, TupleM(1, 4, 2, 3)).is_zero
    assert ip_bruteforce(W, TupleM(1, 3, 2, 2)).is_zero
    diag = ip_bruteforce(W, TupleM(1, 2, 1, 2))
    z = diag.value.to_complex()
    assert abs(z.imag) < 1e-12 and z.real > 0
    # the balanced Weyl cells at odd n carry no support on the units
    ram = rep_derive("ramified", 3, b0=1, a_xi=8)
    Wr = WhittakerHandle(ram, VanishingCase.for_spec(ram, "weyl", 1))
    assert ip_bruteforce(Wr, TupleM(1, 1, 1, 1)).is_zero


def test_diagonal_value_is_support_measure():
    # |W| = 1 on its support for Lower(gamma) with gamma >= n1, so the integral is the support measure
    case = VanishingCase.for_spec(SPLIT8, "lower", 3)
    W = WhittakerHandle(SPLIT8, case)
    r = ip_bruteforce(W, TupleM(1, 1, 1, 1))
    assert r.value == ExactExponentialSum.rational(1)


def test_h_prime():
    t = F(5, 3)
    assert h_prime(t, 0) == F(5, -1)
    r = h_prime(F(5, 1), F(5, 5))
    assert r.residue(1) == 4


def test_substitution_examples():
    p = 5
    zero = PadicScalar.zero(p)
    s = PhaseSeries(p, zero, zero, [F(p, Fraction(1, 25))], 0)
    assert substitute_integral(s).is_zero()
    c = F(p, Fraction(3, 5))
    const = PhaseSeries(p, zero, c, [zero], 0)
    expect = ExactExponentialSum(5, {3: 1}, 5)
    assert substitute_integral(const) == expect == phase_bruteforce(const)
    s2 = PhaseSeries(p, zero, zero, [F(p, Fraction(1, 5)), F(p, Fraction(1, 5))], 0)
    assert substitute_integral(s2) == ExactExponentialSum.rational(Fraction(1, 5)) == phase_bruteforce(s2)
    bad = PhaseSeries(p, zero, zero, [F(p, 1), F(p, Fraction(1, 5))], 1)
    with pytest.raises(HypothesisFailed):
        substitute_integral(bad, fallback=False)


def test_case1_coefficients():
    case = VanishingCase.for_spec(SPLIT8, "lower", 1)
    diag = phi_series(SPLIT8, case, TupleM(1, 2, 1, 2), 1)
    assert all(c.is_zero() for c in diag.coeffs)
    for t0 in (1, 2, 3, 4, 7):
        s = phi_series(SPLIT8, case, TupleM(1, 3, 2, 2), t0)
        assert all(s.taylor(k).valuation == 2 for k in range(1, s.length + 1))


def test_case2_leading_coefficient():
    case = VanishingCase.for_spec(SPLIT8, "S", 1)
    for br in ("+", "-"):
        s = phi_series(SPLIT8, case, TupleM(5, 15, 10, 10), 1, branch=br)
        assert s.coeffs[0].valuation == 2


def test_elementary_trivial_exponents():
    for l in (1, -1):
        assert elementary_min_valuation([1, 2, 3, 4 + 125], l, 5)


def test_case3_alpha_inequalities():
    rng = random.Random(1)
    case = VanishingCase.for_spec(SPLIT8, "U", 1)
    checked = 0
    while checked < 20:
        m = random_tuple(case, 5, rng)
        for t0 in admissible_t0(SPLIT8, m, 1)[:3]:
            assert all(alpha_inequalities(SPLIT8, m, t0, 1))
            checked += 1


@settings(max_examples=200, deadline=None)
@given(p=st.sampled_from([3, 5]), l=st.sampled_from([-5, -3, -1, 1, 3, 5, 0, 2, 4]),
       a=st.tuples(*[st.integers(1, 10**4)] * 4))
def test_elementary_valuation_bound(p, l, a):
    if any(x % p == 0 for x in a):
        return
    if l % 2 == 0 and (a[0] + a[1]) % p == 0:
        return
    assert elementary_min_valuation(a, l, p)


@settings(max_examples=15, deadline=None)
@given(kind=st.sampled_from(["lower", "S"]), seed=st.integers(0, 10**6))
def test_level_stability(kind, seed):
    """The finite sum does not change when the residue level is raised."""
    case = VanishingCase.for_spec(SPLIT8, kind, 1)
    W = WhittakerHandle(SPLIT8, case)
    m = random_tuple(case, 5, random.Random(seed), hi=200)
    M = find_level(W)
    assert ip_bruteforce(W, m, M).value == ip_bruteforce(W, m, M + 1).value


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_swap_symmetries(seed):
    """Swapping within pairs fixes I_p; swapping the pairs conjugates it."""
    case = VanishingCase.for_spec(SPLIT8, "lower", 1)
    W = WhittakerHandle(SPLIT8, case)
    m1, m2, m3, m4 = random_tuple(case, 5, random.Random(seed), hi=200)
    base = ip_bruteforce(W, TupleM(m1, m2, m3, m4)).value
    assert ip_bruteforce(W, TupleM(m2, m1, m4, m3)).value == base
    assert ip_bruteforce(W, TupleM(m3, m4, m1, m2)).value == base.conj()
