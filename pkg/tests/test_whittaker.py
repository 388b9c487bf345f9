from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from whitlab.characters import MultiplicativeCharacter
from whitlab.errors import BadConductor, IncompatibleSelector
from whitlab.padic_core import INF, PadicScalar, sqrt_hensel
from whitlab.whittaker import (
    DyadicSelector,
    Lower,
    Weyl,
    airy_factor,
    balanced_direct,
    balanced_eval,
    delta_is_square,
    delta_of,
    dyadic_component,
    rep_derive,
    support_profile,
    whittaker_eval,
)

P = 40


def Y(p, v, u=1):
    return PadicScalar(p, v, u, P)


def split(p=5, n=8, b0=1):
    return rep_derive("split", p, b0=b0, a_xi=n // 2)


def test_conductor_dictionary():
    ps = rep_derive("principal", 5, chi=MultiplicativeCharacter(5, 4, 1))
    assert (ps.n, ps.n1, ps.n2, ps.d) == (8, 4, 4, 0)
    ram = rep_derive("ramified", 5, b0=1, a_xi=8)
    assert (ram.n, ram.d) == (9, 1)
    with pytest.raises(BadConductor):
        rep_derive("ramified", 5, b0=1, a_xi=7)


def test_case5_is_the_unit_indicator():
    spec = split()
    w = whittaker_eval(spec, Y(5, 0, 3), Lower(spec.n))
    assert w.value.to_complex() == 1
    assert whittaker_eval(spec, Y(5, 1, 3), Lower(spec.n)).is_zero()


def test_case1_off_support():
    spec = split()
    assert whittaker_eval(spec, Y(5, -(spec.n - 1)), Lower(0)).is_zero()
    assert abs(whittaker_eval(spec, Y(5, -spec.n, 2), Lower(0)).magnitude() - 1) < 1e-12


def _nonsquare_delta_y(spec):
    for u in range(1, 5**3):
        if u % 5 == 0:
            continue
        y = Y(5, 0, u)
        D = delta_of(spec, y)
        if not D.is_zero() and D.valuation == 0 and not delta_is_square(spec, D):
            return y
    raise AssertionError("no non-square Delta found")


def test_case3_nonsquare_delta_vanishes():
    spec = split()
    y = _nonsquare_delta_y(spec)
    assert whittaker_eval(spec, y, Lower(spec.n // 2)).is_zero()


def test_case3_airy_regime_respects_the_cap():
    spec = split()
    n, q = spec.n, 5.0
    found = 0
    for u in range(1, 5**4):
        if u % 5 == 0:
            continue
        y = Y(5, 0, u)
        D = delta_of(spec, y)
        if D.is_zero() or D.valuation < n // 4 or not delta_is_square(spec, D):
            continue
        found += 1
        w = whittaker_eval(spec, y, Lower(n // 2))
        assert w.magnitude() <= 2 * q ** (2 + spec.v3) * q ** (n / 12) + 1e-9
        ai, bound = airy_factor(spec, y)
        # W = 2 q^(n/12 - v(3)/3) Ai(U, W) up to a unimodular factor
        assert abs(w.magnitude() - 2 * q ** (n / 12 - spec.v3 / 3) * abs(ai.to_complex())) < 1e-9
        assert abs(ai.to_complex()) <= float(bound) + 1e-9
    assert found


def test_delta_tracked_zero_at_turning_point():
    spec = split()
    y = sqrt_hensel(PadicScalar.from_int(5, -4 * spec.b_squared, P))
    D = delta_of(spec, y)
    assert D.is_zero() or D.valuation >= spec.work_precision() - 2
    assert delta_is_square(spec, D)


def test_delta_generic_unit():
    spec = split()
    assert delta_of(spec, Y(5, 0, 2)).valuation == 0


def test_balanced_examples():
    spec = split()
    n1 = spec.n1
    for g in (n1, n1 + 1, spec.n):
        assert balanced_eval(spec, Y(5, 0, 2), Lower(g)).value.to_complex() == 1
        assert balanced_eval(spec, Y(5, 1, 2), Lower(g)).is_zero()
    ram = rep_derive("ramified", 3, b0=1, a_xi=8)
    for g in range(1, ram.n2 + 1):
        assert balanced_eval(ram, Y(3, 0, 1), Weyl(g)).is_zero()
    w = balanced_eval(ram, Y(3, 0, 2), Lower(0))
    assert w.magnitude() <= 1 + 1e-12


def test_selectors():
    spec = split()
    assert dyadic_component(spec, Lower(0), DyadicSelector("S", 1), Y(5, 2, 3)).is_zero()
    assert dyadic_component(spec, Lower(0), DyadicSelector("SInfinity"), Y(5, spec.n - 1, 3)).is_zero()
    with pytest.raises(IncompatibleSelector):
        dyadic_component(spec, Lower(1), DyadicSelector("S", 1), Y(5, 1, 3))
    # U(u) passes the balanced value through on its stratum
    for u in range(1, 5**3):
        t = Y(5, 0, u)
        D = delta_of(spec, t)
        if not D.is_zero() and D.valuation == 0:
            w = dyadic_component(spec, Lower(0), DyadicSelector("U", 0), t)
            assert w.value == balanced_eval(spec, t, Lower(0)).value
            break


def test_profile_rows():
    spec = split()
    prof = support_profile(spec, Lower(1))
    assert prof.rows[0].support == "|y| = q^6" and prof.rows[0].type_tag == "Osc"
    weyl = support_profile(spec, Weyl(2))
    assert weyl.rows[0].type_tag == "Const" and weyl.in_support(Y(5, -8))
    assert not weyl.in_support(Y(5, -7))


KINDS = [("split", 8), ("unramified", 8), ("ramified", 7), ("split", 6)]


def _spec(kind, n):
    return rep_derive(kind, 5, b0=2, a_xi=n - 1 if kind == "ramified" else n // 2)


@settings(max_examples=150, deadline=None)
@given(k=st.sampled_from(KINDS), fam=st.sampled_from(["Lower", "Weyl"]), g=st.integers(0, 9),
       v=st.integers(-10, 4), u=st.integers(1, 10**6), z=st.integers(0, 10**6))
def test_right_invariance_in_y(k, fam, g, v, u, z):
    """W(a(y u) kappa) = W(a(y) kappa) for u = 1 mod p^(n+2)."""
    spec = _spec(*k)
    if u % 5 == 0 or (fam == "Weyl" and g == 0):
        return
    kappa = Lower(g) if fam == "Lower" else Weyl(g)
    y = Y(5, v, u)
    uu = PadicScalar.from_int(5, 1 + z * 5 ** (spec.n + 2), P)
    a, b = whittaker_eval(spec, y, kappa), whittaker_eval(spec, y * uu, kappa)
    assert a.value == b.value


@settings(max_examples=150, deadline=None)
@given(k=st.sampled_from(KINDS), fam=st.sampled_from(["Lower", "Weyl"]), g=st.integers(0, 9),
       v=st.integers(-10, 4), u=st.integers(1, 10**6))
def test_values_vanish_off_support_and_respect_caps(k, fam, g, v, u):
    spec = _spec(*k)
    if u % 5 == 0 or (fam == "Weyl" and g == 0):
        return
    kappa = Lower(g) if fam == "Lower" else Weyl(g)
    y = Y(5, v, u)
    w = whittaker_eval(spec, y, kappa)
    prof = support_profile(spec, kappa)
    if not prof.in_support(y):
        assert w.is_zero()
    else:
        assert w.magnitude() <= prof.cap(y) + 1e-9


@settings(max_examples=100, deadline=None)
@given(k=st.sampled_from(KINDS), fam=st.sampled_from(["Lower", "Weyl"]), g=st.integers(0, 9),
       v=st.integers(-10, 10), u=st.integers(1, 10**6))
def test_balanced_routes_agree(k, fam, g, v, u):
    spec = _spec(*k)
    if u % 5 == 0 or (fam == "Weyl" and g == 0):
        return
    kappa = Lower(g) if fam == "Lower" else Weyl(g)
    t = Y(5, v, u)
    assert balanced_eval(spec, t, kappa).value == balanced_direct(spec, t, kappa).value
