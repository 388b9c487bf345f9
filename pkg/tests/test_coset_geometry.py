from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from whitlab.coset_geometry import (
    MatrixModPk,
    coordinates,
    coset_reps,
    enumeration_oracle,
    haar_volume,
    identity_sides,
    orbit_classify,
    pgl2_order,
    tail_volume,
    torus_act,
    transform_decompose,
    volume_report,
)
from whitlab.errors import DivisionByZero, EnumerationTooLarge, GammaOutOfRange
from whitlab.padic_core import INF, PadicScalar, vp_rational
from whitlab.whittaker import Lower, Weyl


def test_coset_reps():
    assert coset_reps(2) == [Lower(0), Lower(1), Lower(2), Lower(INF), Weyl(1), Weyl(2), Weyl(INF)]
    assert coset_reps(0) == [Lower(0), Lower(INF), Weyl(INF)]


def test_orbit_classify_examples():
    assert orbit_classify(MatrixModPk(5, (1, 0, 0, 1))) == Lower(INF)
    assert orbit_classify(MatrixModPk(5, (0, 1, 1, 0))) == Weyl(INF)
    assert orbit_classify(MatrixModPk(5, (1, 0, 5, 1))) == Lower(1)
    assert orbit_classify(MatrixModPk(5, (1, 0, 1, 25))) == Weyl(2)
    with pytest.raises(DivisionByZero):
        orbit_classify(MatrixModPk(5, (1, 1, 0, 0)))


def test_transform_examples():
    r = transform_decompose(PadicScalar.from_int(5, 1, 20), Lower(0), 4)
    assert r.g_indices == (0, 0, 1) and r.psi_prefactor.is_zero()
    r = transform_decompose(PadicScalar(5, -4, 1, 20), Lower(1), 4)
    assert r.g_indices == (-6, 1, 1)
    assert r.psi_prefactor.value == Fraction(1 + 5**4, 5**5) % 1
    with pytest.raises(GammaOutOfRange):
        transform_decompose(PadicScalar.from_int(5, 1, 20), Lower(5), 4)


def test_volume_examples():
    assert haar_volume(Lower(0), 3) == Fraction(1, 2)
    assert haar_volume(Lower(1), 3) == Fraction(1, 6)
    assert haar_volume(Weyl(INF), 3) == 0
    rep = volume_report(3, Lower(1), 2)
    assert rep == {"p": 3, "gamma": 1, "family": "Lower", "formula": "1/6", "enumerated": "1/6", "match": True}


@pytest.mark.parametrize("p,m", [(3, 2), (3, 3), (5, 2)])
def test_enumeration_matches_formula(p, m):
    enum = enumeration_oracle(p, m)
    assert enum["order"] == pgl2_order(p, m)
    total = Fraction(0)
    for fam in ("Lower", "Weyl"):
        for g in range(0 if fam == "Lower" else 1, m):
            kappa = Lower(g) if fam == "Lower" else Weyl(g)
            assert enum[(fam, g)] == haar_volume(kappa, p)
            total += enum[(fam, g)]
        assert enum[(fam, "tail")] == tail_volume(p, m)
        total += enum[(fam, "tail")]
    assert total == 1


def test_enumeration_limit():
    with pytest.raises(EnumerationTooLarge):
        enumeration_oracle(7, 3)


units = st.integers(1, 10**6).filter(lambda u: u % 5)


@settings(max_examples=300, deadline=None)
@given(c=st.integers(0, 5**6), d=st.integers(0, 5**6), a1=units, a2=units, u1=units, u2=units,
       s1=st.integers(-3, 3), s2=st.integers(-3, 3))
def test_classification_is_torus_invariant(c, d, a1, a2, u1, u2, s1, s2):
    if c == 0 and d == 0:
        return
    g = MatrixModPk(5, (1, 0, c, d) if d else (0, 1, c, d))
    h = torus_act(g, Fraction(a1) * Fraction(5) ** s1, Fraction(a2) * Fraction(5) ** s2, u1, u2)
    assert orbit_classify(h) == orbit_classify(g)


def _recover(p, M, kappa):
    a, b, c, d = (Fraction(e) for e in M)
    if kappa.family == "Lower":
        u = c / p**kappa.gamma
        return b, a / u - b * p**kappa.gamma, u
    # n(x) a(y) (0 1; 1 p^g) a(u) = (x u, y + x p^g; u, p^g)
    u = c
    return a / u, b - a / u * p**kappa.gamma, u


@settings(max_examples=300, deadline=None)
@given(fam=st.sampled_from(["Lower", "Weyl"]), g=st.integers(0, 6), x=st.fractions(), vy=st.integers(-5, 5),
       uy=units, u=units)
def test_coordinates_land_in_cell_and_are_injective(fam, g, x, vy, uy, u):
    if fam == "Weyl" and g == 0:
        return
    p = 5
    kappa = Lower(g) if fam == "Lower" else Weyl(g)
    y = Fraction(uy) * Fraction(p) ** vy
    M = coordinates(p, x, y, u, kappa)
    assert orbit_classify(MatrixModPk(p, M)) == kappa
    assert _recover(p, M, kappa) == (x, y, u)


@settings(max_examples=100, deadline=None)
@given(fam=st.sampled_from(["Lower", "Weyl"]), n=st.integers(2, 9), g=st.integers(0, 9), s=st.integers(-12, 6),
       w=units)
def test_decomposition_identity(fam, n, g, s, w):
    if fam == "Lower" and g > n or fam == "Weyl" and g == 0:
        return
    kappa = Lower(g) if fam == "Lower" else Weyl(g)
    y = PadicScalar(5, s, w, 3 * n + 20)
    r = transform_decompose(y, kappa, n, N=n + 5)
    assert r.residual_valuation >= n + 5
    lhs, rhs, _ = identity_sides(5, y, kappa, n, n + 5)
    assert all(vp_rational(Fraction(a) - Fraction(b), 5) >= n + 5 for a, b in zip(lhs, rhs))
