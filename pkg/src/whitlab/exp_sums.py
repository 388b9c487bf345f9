"""Exact exponential sums, the brute-force integral engine, and closed forms.

Values are stored as q^(q12/12) * (sum_j c_j zeta_N^j) / denom with integer
c_j, reduced to a canonical basis of Z[zeta_N] so that zero testing is exact.
"""

from __future__ import annotations

import cmath
import math
import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .characters import AngleQZ, MultiplicativeCharacter, chi_eval, psi_eval
from .errors import (
    DomainEmpty,
    LevelTooLow,
    OutOfDomain,
    PreconditionViolated,
    RankZero,
    TrivialCharacter,
)
from .padic_core import INF, PadicScalar, legendre, vp, vp_rational


@lru_cache(maxsize=None)
def _prime_powers(N: int) -> tuple:
    out = []
    n = N
    ell = 2
    while n > 1:
        if ell * ell > n:
            ell = n
        if n % ell == 0:
            k = 0
            while n % ell == 0:
                n //= ell
                k += 1
            out.append((ell, k))
        ell += 1
    return tuple(out)


def _reduce_sparse(coeffs: dict, N: int) -> dict:
    """Canonical form: on each prime-power axis, no exponent has top digit ell-1."""
    if N == 1:
        c = sum(coeffs.values())
        return {0: c} if c else {}
    cur = {j: c for j, c in coeffs.items() if c}
    for ell, k in _prime_powers(N):
        L = ell**k
        step = N // ell  # adding step moves the axis-L coordinate by L/ell
        inv = pow(N // L, -1, L)
        low = L // ell
        nxt = dict(cur)
        for j, c in cur.items():
            if c == 0:
                continue
            coord = j * inv % L
            if coord // low == ell - 1:
                # sum_{i} zeta^(j + i*step) = 0 on this axis
                for i in range(1, ell):
                    jj = (j + i * step) % N
                    nxt[jj] = nxt.get(jj, 0) - c
                nxt[j] -= c
        cur = {j: c for j, c in nxt.items() if c}
    return cur


@lru_cache(maxsize=None)
def sqrt_q_sum(p: int):
    """sqrt(p) as (modulus, {exponent: coefficient}) via the quadratic Gauss sum."""
    if p % 4 == 1:
        return p, {j: legendre(j, p) for j in range(1, p)}
    N = 4 * p
    return N, {(3 * p + 4 * j) % N: legendre(j, p) for j in range(1, p)}


class ExactExponentialSum:
    """q^(q12/12) * sum_j coeffs[j] zeta_modulus^j / denom."""

    __slots__ = ("modulus", "coeffs", "denom", "q", "q12")

    def __init__(self, modulus: int, coeffs: dict, denom: int = 1, q: int | None = None, q12: int = 0):
        if denom == 0:
            raise ZeroDivisionError("denominator 0")
        c = _reduce_sparse({j % modulus: v for j, v in coeffs.items()}, modulus)
        if denom < 0:
            denom = -denom
            c = {j: -v for j, v in c.items()}
        scale = Fraction(1, denom)
        if q12 % 12 and q is None:
            raise ValueError("a magnitude tag needs q")
        if q is not None:
            shift, q12 = divmod(q12, 12)
            scale *= Fraction(q) ** shift
        else:
            q12 = 0
        if not c:
            self.modulus, self.coeffs, self.denom, self.q, self.q12 = 1, {}, 1, q, 0
            return
        num, den = scale.numerator, scale.denominator
        g = 0
        for v in c.values():
            g = math.gcd(g, v * num)
        g = math.gcd(g, den)
        self.coeffs = {j: v * num // g for j, v in sorted(c.items())}
        self.denom = den // g
        self.modulus = modulus
        self.q = q
        self.q12 = q12

    # constructors

    @classmethod
    def zero(cls) -> "ExactExponentialSum":
        return cls(1, {})

    @classmethod
    def rational(cls, r, q: int | None = None) -> "ExactExponentialSum":
        r = Fraction(r)
        return cls(1, {0: r.numerator}, r.denominator, q=q)

    @classmethod
    def from_angle(cls, angle: AngleQZ, weight=1, q: int | None = None) -> "ExactExponentialSum":
        w = Fraction(weight)
        N = angle.denominator
        return cls(N, {angle.numerator: w.numerator}, w.denominator, q=q)

    @classmethod
    def from_counts(cls, counts, modulus: int, denom: int, q: int | None = None) -> "ExactExponentialSum":
        counts = np.asarray(counts)
        idx = np.nonzero(counts)[0]
        return cls(modulus, {int(j): int(counts[j]) for j in idx}, denom, q=q)

    # inspection

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_complex(self) -> complex:
        if not self.coeffs:
            return 0j
        js = np.fromiter(self.coeffs.keys(), dtype=np.float64)
        cs = np.fromiter((float(v) for v in self.coeffs.values()), dtype=np.float64)
        z = np.sum(cs * np.exp(2j * np.pi * js / self.modulus)) / self.denom
        if self.q12:
            z *= float(self.q) ** (self.q12 / 12)
        return complex(z)

    def __abs__(self) -> float:
        return abs(self.to_complex())

    def to_json(self) -> dict:
        return {
            "exact": {
                "modulus": self.modulus,
                "coeffs": {str(j): v for j, v in self.coeffs.items()},
                "denominator": self.denom,
            },
            "magnitude_q12": self.q12,
            "approx": [round(self.to_complex().real, 12), round(self.to_complex().imag, 12)],
        }

    def __repr__(self):
        z = self.to_complex()
        tag = f", q^({self.q12}/12)" if self.q12 else ""
        return f"ExactExponentialSum(N={self.modulus}, terms={len(self.coeffs)}{tag}, ~{z:.6g})"

    # arithmetic

    def _lift(self, N: int) -> dict:
        f = N // self.modulus
        return {j * f: v for j, v in self.coeffs.items()}

    def _fold_tag(self) -> "ExactExponentialSum":
        """Rewrite q^(t/12) with t >= 6 as q^((t-6)/12) * sqrt(q)."""
        if self.q12 < 6:
            return self
        return self._times_sqrt_q(self.q12 - 6)

    def _times_sqrt_q(self, new_tag: int) -> "ExactExponentialSum":
        N2, sq = sqrt_q_sum(self.q)
        N = _lcm(self.modulus, N2)
        a = self._lift(N)
        f = N // N2
        out: dict = {}
        for j, v in a.items():
            for k, w in sq.items():
                jj = (j + k * f) % N
                out[jj] = out.get(jj, 0) + v * w
        return ExactExponentialSum(N, out, self.denom, q=self.q, q12=new_tag)

    def _align(self, other):
        a, b = self, other
        if a.is_zero() or b.is_zero() or a.q12 == b.q12:
            return a, b
        a, b = a._fold_tag(), b._fold_tag()
        if a.q12 != b.q12:
            raise ValueError("sums with incommensurable magnitudes")
        return a, b

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactExponentialSum.rational(other, q=self.q)
        if not isinstance(other, ExactExponentialSum):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        a, b = self._align(other)
        N = _lcm(a.modulus, b.modulus)
        den = _lcm(a.denom, b.denom)
        out = {j: v * (den // a.denom) for j, v in a._lift(N).items()}
        for j, v in b._lift(N).items():
            out[j] = out.get(j, 0) + v * (den // b.denom)
        return ExactExponentialSum(N, out, den, q=a.q or b.q, q12=a.q12)

    __radd__ = __add__

    def __neg__(self):
        return ExactExponentialSum(
            self.modulus, {j: -v for j, v in self.coeffs.items()}, self.denom, q=self.q, q12=self.q12
        )

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactExponentialSum.rational(other, q=self.q)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            r = Fraction(other)
            return ExactExponentialSum(
                self.modulus,
                {j: v * r.numerator for j, v in self.coeffs.items()},
                self.denom * r.denominator,
                q=self.q,
                q12=self.q12,
            )
        if isinstance(other, AngleQZ):
            other = ExactExponentialSum.from_angle(other)
        if not isinstance(other, ExactExponentialSum):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ExactExponentialSum.zero()
        N = _lcm(self.modulus, other.modulus)
        a, b = self._lift(N), other._lift(N)
        out: dict = {}
        for j, v in a.items():
            for k, w in b.items():
                jj = (j + k) % N
                out[jj] = out.get(jj, 0) + v * w
        q = self.q or other.q
        return ExactExponentialSum(N, out, self.denom * other.denom, q=q, q12=self.q12 + other.q12)

    __rmul__ = __mul__

    def scale_q(self, q: int, q12: int) -> "ExactExponentialSum":
        """Multiply by q^(q12/12)."""
        if self.is_zero():
            return self
        if self.q is not None and self.q != q:
            raise ValueError("mixing magnitudes in different primes")
        return ExactExponentialSum(
            self.modulus, dict(self.coeffs), self.denom, q=q, q12=self.q12 + q12
        )

    def conj(self) -> "ExactExponentialSum":
        return ExactExponentialSum(
            self.modulus,
            {(-j) % self.modulus: v for j, v in self.coeffs.items()},
            self.denom,
            q=self.q,
            q12=self.q12,
        )

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, AngleQZ)):
            other = (
                ExactExponentialSum.from_angle(other)
                if isinstance(other, AngleQZ)
                else ExactExponentialSum.rational(other)
            )
        if not isinstance(other, ExactExponentialSum):
            return NotImplemented
        try:
            return (self - other).is_zero()
        except ValueError:
            return False

    __hash__ = None


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def zeta_F(p: int, s: int = 1) -> Fraction:
    return 1 / (1 - Fraction(1, p) ** s)


@dataclass(frozen=True)
class QMonomial:
    """coeff * q^exponent with rational exponent."""

    coeff: Fraction
    q: int
    exponent: Fraction

    def __float__(self):
        return float(self.coeff) * float(self.q) ** float(self.exponent)

    def __str__(self):
        if self.coeff == 0:
            return "0"
        return f"{self.coeff}*{self.q}^({self.exponent})"

    def to_json(self) -> dict:
        return {"coeff": str(self.coeff), "q": self.q, "exponent": str(self.exponent), "float": float(self)}


# the integral engine


@dataclass(frozen=True)
class IntegralDomainSpec:
    """Domain of integration: "O", "units", "coset" (t0 + p^k) or "annulus" (p^m minus p^(m+1))."""

    p: int
    level: int
    domain: str = "O"
    t0: int = 0
    k: int = 0
    m: int = 0
    measure: str = "additive"

    def __post_init__(self):
        if self.domain not in ("O", "units", "coset", "annulus"):
            raise ValueError(f"unknown domain {self.domain!r}")
        if self.measure not in ("additive", "multiplicative"):
            raise ValueError(f"unknown measure {self.measure!r}")

    def residues(self) -> np.ndarray:
        """Representatives of the level-M classes in the domain (annulus: the unit u in p^m u)."""
        p, M = self.p, self.level
        r = np.arange(p**M, dtype=np.int64)
        if self.domain == "O":
            return r
        if self.domain in ("units", "annulus"):
            return r[r % p != 0]
        if self.k > M:
            raise LevelTooLow("coset finer than the level")
        return r[r % p**self.k == self.t0 % p**self.k]

    def weight(self, count_units: int | None = None) -> Fraction:
        p, M = self.p, self.level
        if self.measure == "multiplicative":
            if self.domain == "O":
                raise OutOfDomain("multiplicative measure on O")
            if self.domain == "coset" and self.t0 % p == 0:
                raise OutOfDomain("multiplicative measure off the units")
            return Fraction(1, (p - 1) * p ** (M - 1))
        w = Fraction(1, p**M)
        if self.domain == "annulus":
            w *= Fraction(p) ** (-self.m)
        return w


class VectorPhase:
    """Phase x -> numer(x)/modulus (mod 1), evaluated on numpy arrays of residues."""

    def __init__(self, func: Callable[[np.ndarray], np.ndarray], modulus: int):
        self.func = func
        self.modulus = modulus

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(self.func(x)) % self.modulus


def brute_force_integral(phase, spec: IntegralDomainSpec, check_samples: int = 64, seed: int = 0) -> ExactExponentialSum:
    """Riemann sum of exp(2 pi i phase) over the level-M classes of the domain."""
    res = spec.residues()
    if res.size == 0:
        raise DomainEmpty("no residues in the domain")
    w = spec.weight()
    p, M = spec.p, spec.level
    rng = random.Random(seed)
    if isinstance(phase, VectorPhase):
        vals = phase(res)
        if check_samples:
            pick = np.array([res[rng.randrange(res.size)] for _ in range(check_samples)], dtype=np.int64)
            lift = pick + p**M * np.array([rng.randrange(1, p * p) for _ in pick], dtype=np.int64)
            if np.any(phase(pick) != phase(lift)):
                raise LevelTooLow(f"phase not constant on classes mod p^{M}")
        counts = np.bincount(vals.astype(np.int64), minlength=phase.modulus)
        return ExactExponentialSum.from_counts(counts, phase.modulus, 1) * w
    # scalar path: phase(int) -> AngleQZ
    total: dict = {}
    N = 1
    angles = []
    for r in res.tolist():
        a = phase(int(r))
        angles.append(a)
        N = _lcm(N, a.denominator)
    for a in angles:
        j = a.numerator * (N // a.denominator)
        total[j] = total.get(j, 0) + 1
    if check_samples:
        for _ in range(check_samples):
            r = int(res[rng.randrange(res.size)])
            if phase(r) != phase(r + p**M * rng.randrange(1, p * p)):
                raise LevelTooLow(f"phase not constant on classes mod p^{M}")
    return ExactExponentialSum(N, total) * w


# polynomial phases


def _integerize(p: int, coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    """Write sum c_i x^i as P(x)/p^K with P integral mod p^K."""
    K = 0
    cs = [Fraction(c) for c in coeffs]
    for c in cs:
        if c:
            K = max(K, -int(vp_rational(c, p)))
    m = p**K
    P = []
    for c in cs:
        if c == 0:
            P.append(0)
            continue
        c = c * m
        P.append(c.numerator * pow(c.denominator, -1, m) % m if m > 1 else 0)
    return P, K


def _horner_np(P: Sequence[int], x: np.ndarray, m: int) -> np.ndarray:
    out = np.zeros_like(x)
    for c in reversed(P):
        out = (out * x + c) % m
    return out


def _horner_int(P: Sequence[int], x: int, m: int) -> int:
    out = 0
    for c in reversed(P):
        out = (out * x + c) % m
    return out


_NP_SAFE = 3_000_000_000


def poly_histogram(p: int, P: list[int], K: int, plain_limit: int = 400_000) -> tuple[dict, int, int]:
    """integral over O of psi(P(x)/p^K) dx as (exponent counts, modulus, denominator)."""
    if K <= 0:
        return {0: 1}, 1, 1
    m = p**K
    if m <= plain_limit:
        x = np.arange(m, dtype=np.int64)
        vals = _horner_np(P, x, m)
        counts = np.bincount(vals, minlength=m)
        idx = np.nonzero(counts)[0]
        return {int(j): int(counts[j]) for j in idx}, m, m
    # x = s0 + p^k s1: only s0 with P'(s0) = 0 mod p^(K-k) survive, weight p^-k
    k = (K + 1) // 2
    dP = [i * P[i] for i in range(1, len(P))]
    md = p ** (K - k)
    s0 = np.arange(p**k, dtype=np.int64)
    if md < _NP_SAFE and p**k < _NP_SAFE:
        dv = _horner_np([c % md for c in dP], s0 % md, md)
        keep = s0[dv == 0].tolist()
    else:
        keep = [s for s in range(p**k) if _horner_int(dP, s, md) == 0]
    out: dict = {}
    for s in keep:
        j = _horner_int(P, s, m)
        out[j] = out.get(j, 0) + 1
    return out, m, p**k


def _poly_sum_O(p: int, P: list[int], K: int) -> ExactExponentialSum:
    """integral over O of psi(P(x)/p^K) dx, P integral."""
    counts, m, den = poly_histogram(p, P, K)
    return ExactExponentialSum(m, counts, den)


def integerize(p: int, coeffs: Sequence) -> tuple[list[int], int]:
    return _integerize(p, coeffs)


def _shift_poly(P: Sequence[Fraction], t0, scale) -> list[Fraction]:
    """Coefficients of P(t0 + scale*y) in y."""
    n = len(P)
    out = [Fraction(0)] * n
    for i, c in enumerate(P):
        if c == 0:
            continue
        for j in range(i + 1):
            out[j] += c * math.comb(i, j) * Fraction(t0) ** (i - j) * Fraction(scale) ** j
    return out


def polynomial_integral(p: int, coeffs: Sequence, domain: str = "O", t0=0, k: int = 0, m: int = 0,
                        measure: str = "additive") -> ExactExponentialSum:
    """integral of psi(sum c_i x^i) over a domain, with exact rational coefficients."""
    cs = [Fraction(c) for c in coeffs]
    if domain == "O":
        P, K = _integerize(p, cs)
        val = _poly_sum_O(p, P, K)
    elif domain == "coset":
        sub = _shift_poly(cs, t0, Fraction(p) ** k)
        P, K = _integerize(p, sub)
        val = _poly_sum_O(p, P, K) * Fraction(1, p**k)
    elif domain == "units":
        P, K = _integerize(p, cs)
        inner = _shift_poly(cs, 0, p)
        P2, K2 = _integerize(p, inner)
        val = _poly_sum_O(p, P, K) - _poly_sum_O(p, P2, K2) * Fraction(1, p)
    elif domain == "annulus":
        sub = _shift_poly(cs, 0, Fraction(p) ** m)
        val = polynomial_integral(p, sub, "units") * Fraction(p) ** (-m)
    else:
        raise ValueError(f"unknown domain {domain!r}")
    if measure == "multiplicative":
        if domain == "O":
            raise OutOfDomain("multiplicative measure on O")
        val = val * Fraction(p, p - 1)
    return val


# closed forms


@lru_cache(maxsize=None)
def e_half(p: int) -> ExactExponentialSum:
    """G(p^-1, 0) = integral over O of psi(x^2/p), the reference Gauss integral."""
    return polynomial_integral(p, [0, 0, Fraction(1, p)])


def chi_F(A) -> int:
    """Quadratic residue symbol of a unit."""
    if isinstance(A, PadicScalar):
        if not A.is_unit():
            raise OutOfDomain("chi_F needs a unit")
        return legendre(A.unit, A.p)
    raise TypeError("chi_F expects a PadicScalar")


def epsilon_chi_F(p: int) -> ExactExponentialSum:
    """epsilon(1/2, chi_F) = q^(1/2) G(p^-1, 0)."""
    return e_half(p).scale_q(p, 6)


def gamma_factor(A: PadicScalar, rho: int) -> ExactExponentialSum:
    p = A.p
    if not A.is_unit():
        raise OutOfDomain("gamma_F needs a unit")
    if rho > 0 and rho % 2:
        return epsilon_chi_F(p) * chi_F(A)
    return ExactExponentialSum.rational(1)


def _frac_angle(x: PadicScalar) -> AngleQZ:
    return psi_eval(x)


def _as_scalar(p: int, x, prec: int = 40) -> PadicScalar:
    if isinstance(x, PadicScalar):
        return x
    return PadicScalar.from_rational(p, Fraction(x), prec)


def gauss_1d(A: PadicScalar, rho: int, B) -> ExactExponentialSum:
    """integral over O of psi(A p^-rho x^2 + B x)."""
    p = A.p
    B = _as_scalar(p, B)
    if not A.is_unit():
        raise OutOfDomain("A must be a unit")
    if rho <= 0:
        return ExactExponentialSum.rational(1 if B.valuation >= 0 else 0)
    if B.valuation < -rho:
        return ExactExponentialSum.zero()
    mag = Fraction(1, p) ** (rho // 2) if rho % 2 == 0 else Fraction(1, p) ** ((rho - 1) // 2)
    ph = psi_eval(-(B * B).shift(rho) / (A * 4))
    if rho % 2 == 0:
        return ExactExponentialSum.from_angle(ph, mag)
    return e_half(p) * ExactExponentialSum.from_angle(ph, mag * chi_F(A))


def gauss_1d_brute(A: PadicScalar, rho: int, B) -> ExactExponentialSum:
    p = A.p
    B = _as_scalar(p, B)
    a = A.to_fraction() * Fraction(p) ** (-rho)
    return polynomial_integral(p, [0, B.to_fraction(), a])


@lru_cache(maxsize=None)
def _gauss_chi_reference(chi: MultiplicativeCharacter) -> ExactExponentialSum:
    return gauss_chi_brute(PadicScalar.from_rational(chi.p, Fraction(1, chi.p**chi.a), 40), chi)


def gauss_chi(x: PadicScalar, chi: MultiplicativeCharacter) -> ExactExponentialSum:
    """integral over O^x of chi(u) psi(x u) d^x u."""
    if chi is None:
        raise TrivialCharacter("chi must be non-trivial")
    if x.is_zero() or x.valuation != -chi.a:
        return ExactExponentialSum.zero()
    ref = _gauss_chi_reference(chi)
    # u -> u/x0 moves the unit part of x into chi^-1
    return ref * (-chi_eval(chi, x.unit_part()))


def gauss_chi_brute(x: PadicScalar, chi: MultiplicativeCharacter) -> ExactExponentialSum:
    p, a = chi.p, chi.a
    M = max(a, -x.valuation if not x.is_zero() else 0, 1)
    N = _lcm(chi.phi, p**M)
    ind = np.array(_dlog_array(p, a), dtype=np.int64)
    xf = x.to_fraction() if not x.is_zero() else Fraction(0)
    if xf.denominator > p**M:
        raise LevelTooLow("level below the conductor of psi(x .)")
    xr = (xf * p**M)
    xnum = xr.numerator * pow(xr.denominator, -1, p**M) % p**M if xf else 0

    def f(r):
        chi_part = ind[r % p**a] * chi.k % chi.phi * (N // chi.phi)
        psi_part = (r * xnum) % p**M * (N // p**M)
        return chi_part + psi_part

    spec = IntegralDomainSpec(p, M, "units", measure="multiplicative")
    return brute_force_integral(VectorPhase(f, N), spec)


@lru_cache(maxsize=32)
def _dlog_array(p: int, a: int):
    from .characters import discrete_log_table

    return discrete_log_table(p, a)


def gauss_2d(p: int, A, B, fallback: bool = False) -> ExactExponentialSum:
    """integral over O^2 of psi((1/2p) x^T A x + x^T B), A = (a, b, c) symmetric integral."""
    a, b, c = (Fraction(t) for t in A)
    B1, B2 = (Fraction(t) for t in B)
    if any(vp_rational(t, p) < 0 for t in (a, b, c)):
        raise OutOfDomain("A must be integral")
    rank = _rank_mod_p(p, a, b, c)
    if rank == 0:
        if fallback:
            warnings.warn("rank zero form: using brute force")
            return gauss_2d_brute(p, A, B)
        raise RankZero("A vanishes mod p")
    if min(vp_rational(B1, p), vp_rational(B2, p)) < -1:
        return ExactExponentialSum.zero()
    if rank == 2:
        det = a * c - b * b
        quad = (c * B1 * B1 - 2 * b * B1 * B2 + a * B2 * B2) / det
        ph = psi_eval(-Fraction(p, 2) * quad, p)
        S = e_half(p)
        return S * S * ExactExponentialSum.from_angle(ph, legendre(_unit_int(det, p), p))
    if vp_rational(a, p) > 0:
        a, c = c, a
        B1, B2 = B2, B1
    if vp_rational(B2 - b / a * B1, p) < 0:
        return ExactExponentialSum.zero()
    ph = psi_eval(-Fraction(p) * B1 * B1 / (2 * a), p)
    return e_half(p) * ExactExponentialSum.from_angle(ph, legendre(_unit_int(a / 2, p), p))


def _unit_int(x: Fraction, p: int) -> int:
    return x.numerator * pow(x.denominator, -1, p) % p


def _rank_mod_p(p: int, a: Fraction, b: Fraction, c: Fraction) -> int:
    r = [_unit_int(t, p) if t else 0 for t in (a, b, c)]
    if all(t % p == 0 for t in r):
        return 0
    det = (r[0] * r[2] - r[1] * r[1]) % p
    return 2 if det else 1


def gauss_2d_brute(p: int, A, B) -> ExactExponentialSum:
    a, b, c = (Fraction(t) for t in A)
    B1, B2 = (Fraction(t) for t in B)
    coeffs = {
        (2, 0): a / (2 * p),
        (1, 1): b / p,
        (0, 2): c / (2 * p),
        (1, 0): B1,
        (0, 1): B2,
    }
    K = max([0] + [-int(vp_rational(v, p)) for v in coeffs.values() if v])
    m = p**K
    if K == 0:
        return ExactExponentialSum.rational(1)
    ci = {}
    for key, v in coeffs.items():
        v = v * m
        ci[key] = v.numerator * pow(v.denominator, -1, m) % m if v else 0
    x = np.arange(m, dtype=np.int64)
    X1, X2 = np.meshgrid(x, x, indexing="ij")
    val = (ci[(2, 0)] * X1 % m * X1 + ci[(1, 1)] * X1 % m * X2 + ci[(0, 2)] * X2 % m * X2
           + ci[(1, 0)] * X1 + ci[(0, 1)] * X2) % m
    counts = np.bincount(val.ravel(), minlength=m)
    return ExactExponentialSum.from_counts(counts, m, m * m)


def cubic_integral(a: PadicScalar, b: PadicScalar, fallback: bool = False) -> ExactExponentialSum:
    """integral over O of psi(a t^3 + b t^2) when v(3a) > v(b)."""
    p = b.p
    v3 = 1 if p == 3 else 0
    va = a.valuation + v3 if not a.is_zero() else INF
    if not (va > b.valuation):
        if fallback:
            return cubic_integral_brute(a, b)
        raise PreconditionViolated("need v(3a) > v(b)")
    if b.valuation >= 0:
        return ExactExponentialSum.rational(1)
    rho = -b.valuation
    return gauss_1d(b.unit_part(), rho, PadicScalar.zero(p))


def cubic_integral_brute(a: PadicScalar, b: PadicScalar) -> ExactExponentialSum:
    return polynomial_integral(b.p, [0, 0, b.to_fraction(), a.to_fraction()])


def airy_integral(a: PadicScalar, b: PadicScalar, domain: str = "O", m: int = 0) -> ExactExponentialSum:
    """integral of psi(a t^3 + b t) over O or over the annulus p^m minus p^(m+1)."""
    p = a.p
    return polynomial_integral(p, [0, b.to_fraction(), 0, a.to_fraction()], domain=domain, m=m)


def airy_eval(a: PadicScalar, b: PadicScalar) -> ExactExponentialSum:
    """Ai(a; b) = q^(-v(a)/3) * integral over O of psi(a t^3 + b t)."""
    p = a.p
    if a.is_zero():
        raise OutOfDomain("a must be nonzero")
    return airy_integral(a, b).scale_q(p, -4 * a.valuation)


def airy_bound(a: PadicScalar, b: PadicScalar) -> QMonomial:
    p = a.p
    if a.is_zero() or a.valuation >= 0:
        raise OutOfDomain("need v(a) < 0")
    v3 = 1 if p == 3 else 0
    va = a.valuation
    vb = b.valuation
    if vb < va:
        return QMonomial(Fraction(0), p, Fraction(0))
    if vb < Fraction(va, 3):
        return QMonomial(Fraction(2), p, 2 + v3 - Fraction(va, 12) + Fraction(vb, 4))
    return QMonomial(Fraction(1), p, Fraction(1 + v3))
