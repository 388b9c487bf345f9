"""Orbit representatives for A x K_A on N\\G, the g_{t,l,v} decomposition, and Haar volumes of cells.

Matrices are 4-tuples (a, b, c, d) read row by row.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .characters import AngleQZ
from .errors import DivisionByZero, EnumerationTooLarge, GammaOutOfRange, NotAUnit, PreconditionViolated
from .padic_core import INF, PadicScalar, vp, vp_rational
from .whittaker import CosetRep, Lower, Weyl

ENUM_LIMIT = 10**7


# matrices


def matmul(A: tuple, B: tuple) -> tuple:
    a, b, c, d = A
    e, f, g, h = B
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _entry_val(x, p: int):
    if isinstance(x, PadicScalar):
        return x.valuation
    return vp_rational(Fraction(x), p)


@dataclass(frozen=True)
class MatrixModPk:
    """A 2x2 matrix with entries residues modulo p^k (k=None keeps exact rationals)."""

    p: int
    entries: tuple
    k: int | None = None
    det: object = field(init=False, compare=False)

    def __post_init__(self):
        ents = tuple(self.entries)
        if len(ents) != 4:
            raise ValueError("need four entries")
        if any(isinstance(e, PadicScalar) for e in ents):
            ents = tuple(e.to_fraction() if isinstance(e, PadicScalar) else Fraction(e) for e in ents)
        if self.k is not None:
            m = self.p**self.k
            ents = tuple(_reduce(e, m) for e in ents)
        object.__setattr__(self, "entries", ents)
        a, b, c, d = ents
        det = a * d - b * c
        if self.k is not None:
            det %= self.p**self.k
        object.__setattr__(self, "det", det)

    @classmethod
    def from_scalars(cls, p: int, a, b, c, d, k: int | None = None) -> "MatrixModPk":
        return cls(p, (a, b, c, d), k)

    def val(self, i: int):
        e = self.entries[i]
        if self.k is not None:
            return INF if e == 0 else vp(e, self.p)
        return _entry_val(e, self.p)

    def in_K(self) -> bool:
        if any(self.val(i) < 0 for i in range(4)):
            return False
        return _entry_val(self.det, self.p) == 0

    def canonical(self) -> tuple:
        """Projective normal form: the first unit entry (row-major) scaled to 1."""
        if self.k is None:
            raise PreconditionViolated("canonical form needs a modulus")
        m = self.p**self.k
        for e in self.entries:
            if e % self.p:
                inv = pow(e, -1, m)
                return tuple(x * inv % m for x in self.entries)
        raise NotAUnit("no unit entry")

    def projective_equal(self, other: "MatrixModPk") -> bool:
        return self.canonical() == other.canonical()

    def __mul__(self, other: "MatrixModPk") -> "MatrixModPk":
        return MatrixModPk(self.p, matmul(self.entries, other.entries), self.k)


def _reduce(e, m: int) -> int:
    e = Fraction(e)
    if e.denominator == 1:
        return int(e) % m
    return e.numerator * pow(e.denominator, -1, m) % m


# representatives and classification


def coset_reps(gamma_max: int) -> list:
    """Lower(0..gamma_max), Lower(inf), Weyl(1..gamma_max), Weyl(inf)."""
    reps = [Lower(g) for g in range(gamma_max + 1)] + [Lower(INF)]
    reps += [Weyl(g) for g in range(1, gamma_max + 1)] + [Weyl(INF)]
    return reps


def orbit_classify(g: MatrixModPk) -> CosetRep:
    """The representative in the A x K_A orbit of g, read off from v(c) - v(d)."""
    vc, vd = g.val(2), g.val(3)
    if vc == INF and vd == INF:
        raise DivisionByZero("bottom row is zero")
    if vc == INF:
        return Lower(INF)
    if vd == INF:
        return Weyl(INF)
    delta = vc - vd
    return Lower(delta) if delta >= 0 else Weyl(-delta)


def torus_act(g: MatrixModPk, a1, a2, u1, u2) -> MatrixModPk:
    """diag(a1, a2) g diag(u1, u2) for a_i in F^x and units u_i."""
    return MatrixModPk(g.p, matmul(matmul((a1, 0, 0, a2), g.entries), (u1, 0, 0, u2)), g.k)


def coordinates(p: int, x, y, u, kappa: CosetRep) -> tuple:
    """n(x) a(y) kappa a(u)."""
    return matmul(matmul(matmul((1, x, 0, 1), (y, 0, 0, 1)), kappa.matrix(p)), (u, 0, 0, 1))


# the decomposition G = U Z N g_{t,l,v} K_1(n)


def g_matrix(p: int, t: int, l: int, v) -> tuple:
    return (0, Fraction(p) ** t, -1, -Fraction(v) / Fraction(p) ** l)


def in_K1(M: tuple, p: int, n: int) -> bool:
    a, b, c, d = (Fraction(e) for e in M)
    if min(vp_rational(e, p) for e in M) < 0:
        return False
    if vp_rational(a * d - b * c, p) != 0:
        return False
    return vp_rational(a - 1, p) >= n and vp_rational(c, p) >= n


@dataclass(frozen=True)
class TransformResult:
    psi_prefactor: AngleQZ
    g_indices: tuple  # (t, l, v)
    n: int
    residual_valuation: float = INF

    def to_json(self) -> dict:
        t, l, v = self.g_indices
        return {"psi_prefactor": str(self.psi_prefactor.value), "t": t, "l": l, "v": v, "n": self.n}


def _unit_class(v: int, p: int, l: int, n: int) -> int:
    ln = min(l, n - l)
    if ln <= 0:
        return 1
    return v % p**ln


def identity_sides(p: int, y: PadicScalar, kappa: CosetRep, n: int, N: int) -> tuple:
    """Both sides of the matrix identity behind transform_decompose, as exact rationals.

    The unit w^-1 entering g_{t,l,v} is replaced by an integer congruent to it
    modulo enough digits that the two sides agree to p^N.
    """
    s, w = y.valuation, y.unit
    Y = Fraction(w) * Fraction(p) ** s
    if kappa.family == "Lower":
        gam = kappa.gamma
        if gam == INF or not 0 <= gam <= n:
            raise GammaOutOfRange(f"Lower needs 0 <= gamma <= n, got {kappa.gamma}")
        pg = Fraction(p) ** gam
        digits = N + max(0, gam - s) + 1
        winv = pow(w, -1, p**digits)
        lhs = (Y, 0, pg, 1)
        Z = (-pg, 0, 0, -pg)
        nX = (1, (1 + p**n) * Y / pg, 0, 1)
        g = g_matrix(p, -2 * gam + s, gam, winv)
        k = (1 - p**n, -Fraction(p) ** (n - gam), w * p ** (n + gam), w * (1 + p**n))
    else:
        pg = 0 if kappa.gamma == INF else p**kappa.gamma
        lhs = (0, Y, 1, pg)
        Z = (-1, 0, 0, -1)
        nX = (1, -(p**n) * Y, 0, 1)
        g = g_matrix(p, s, 0, 1)
        k = (1 + w * p**n, pg + w * (pg * p**n + 1), -w * p**n, -w * (pg * p**n + 1))
    rhs = matmul(matmul(matmul(Z, nX), g), k)
    return lhs, rhs, k


def transform_decompose(y: PadicScalar, kappa: CosetRep, n: int, verify: bool = True,
                        N: int | None = None) -> TransformResult:
    """W(a(y) kappa) = psi(prefactor) W(g_{t,l,v}) with the indices read off from y = w p^s."""
    p = y.p
    if y.is_zero():
        raise DivisionByZero("y must be nonzero")
    s = y.valuation
    if kappa.family == "Lower":
        gam = kappa.gamma
        if gam == INF or not 0 <= gam <= n:
            raise GammaOutOfRange(f"Lower needs 0 <= gamma <= n, got {kappa.gamma}")
        arg = y.shift(-gam) * (1 + p**n)
        winv = pow(y.unit, -1, p**y.precision)
        idx = (-2 * gam + s, gam, _unit_class(winv, p, gam, n))
    else:
        arg = -(y.shift(n))
        idx = (s, 0, 1)
    res = INF
    if verify:
        N = n + 5 if N is None else N
        lhs, rhs, k = identity_sides(p, y, kappa, n, N)
        res = min(vp_rational(Fraction(a) - Fraction(b), p) for a, b in zip(lhs, rhs))
        if res < N or not in_K1(k, p, n):
            raise AssertionError(f"decomposition identity fails: residual {res}")
    return TransformResult(AngleQZ(arg.frac()), idx, n, res)


# Haar volumes


def haar_volume(kappa: CosetRep, p: int) -> Fraction:
    """Probability Haar volume of the cell K_kappa in PGL2(Z_p)."""
    if kappa.gamma == INF:
        return Fraction(0)
    q = p
    return Fraction(q - 1, q**kappa.gamma * (q + 1))


def tail_volume(p: int, m: int) -> Fraction:
    """Volume of the union of cells of one family with gamma >= m (m >= 1)."""
    return Fraction(p, p**m * (p + 1))


def pgl2_order(p: int, m: int) -> int:
    return p ** (3 * m - 2) * (p * p - 1)


def enumeration_oracle(p: int, m: int) -> dict:
    """Exact cell proportions in PGL2(Z/p^m) by counting.

    Keys are ("Lower", gamma), ("Weyl", gamma) for gamma < m and (family, "tail")
    for bottom-row entries vanishing mod p^m. Also returns the group order found.
    """
    if p ** (3 * m) > ENUM_LIMIT:
        raise EnumerationTooLarge(f"p^(3m) = {p ** (3 * m)} exceeds {ENUM_LIMIT}")
    M = p**m
    r = np.arange(M, dtype=np.int64)
    val = np.array([m if x == 0 else vp(int(x), p) for x in r], dtype=np.int64)
    # number of (a, b) making ad - bc a unit, for each bottom row (c, d); partition by first row
    C, D = np.meshgrid(r, r, indexing="ij")
    good = np.zeros((M, M), dtype=np.int64)
    for a in range(M):
        for b in range(M):
            det = (a * D - b * C) % p
            good += det != 0
    units = (p - 1) * p ** (m - 1)
    vc, vd = val[C], val[D]
    total = int(good.sum())
    if total % units:
        raise AssertionError("GL2 count not divisible by the scalars")
    out = {}
    for g in range(m):
        out[("Lower", g)] = Fraction(int(good[(vc == g) & (vd == 0)].sum()), total)
        if g >= 1:
            out[("Weyl", g)] = Fraction(int(good[(vd == g) & (vc == 0)].sum()), total)
    out[("Lower", "tail")] = Fraction(int(good[(vc == m) & (vd == 0)].sum()), total)
    out[("Weyl", "tail")] = Fraction(int(good[(vd == m) & (vc == 0)].sum()), total)
    out["order"] = total // units
    return out


def volume_report(p: int, kappa: CosetRep, enumerate_m: int | None = None) -> dict:
    formula = haar_volume(kappa, p)
    rep = {"p": p, "gamma": kappa.gamma, "family": kappa.family, "formula": str(formula)}
    if enumerate_m is not None:
        if kappa.gamma == INF or enumerate_m <= kappa.gamma:
            raise PreconditionViolated("enumeration needs m > gamma")
        enum = enumeration_oracle(p, enumerate_m)[(kappa.family, kappa.gamma)]
        rep["enumerated"] = str(enum)
        rep["match"] = enum == formula
    return rep
