"""Vanishing of the fourfold integrals I_p(m) and the phase power series behind it.

The brute-force side tabulates W on residues modulo p^M once per evaluator and
assembles every I_p(m) from integer exponent histograms, so the zero test is
exact.  The analytic side expands the phase Phi as a power series and checks
the coefficient valuations the substitution argument needs.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np

from .errors import (
    ConstraintViolated,
    HypothesisFailed,
    LevelTooLow,
    NonSquare,
    OutOfRange,
    PreconditionViolated,
    UnsupportedStratum,
)
from .exp_sums import ExactExponentialSum, integerize, polynomial_integral
from .padic_core import (
    INF,
    AlgebraElement,
    PadicScalar,
    legendre,
    padic_log,
    small_root,
    sqrt_hensel,
    vp,
    vp_rational,
)
from .whittaker import (
    DyadicSelector,
    Lower,
    RepresentationSpec,
    WhittakerValue,
    Weyl,
    balanced_eval,
    dyadic_component,
)

ETA = (1, 1, -1, -1)
PREC = 60


# tuples


@dataclass(frozen=True)
class TupleM:
    m1: int
    m2: int
    m3: int
    m4: int
    a: int | None = None

    def __post_init__(self):
        ms = self.as_tuple()
        if any(not isinstance(x, int) or x <= 0 for x in ms):
            raise ConstraintViolated("entries must be positive integers")
        if self.m1 + self.m2 != self.m3 + self.m4:
            raise ConstraintViolated("need m1 + m2 = m3 + m4")

    def as_tuple(self) -> tuple:
        return (self.m1, self.m2, self.m3, self.m4)

    def is_diagonal(self) -> bool:
        return sorted((self.m1, self.m2)) == sorted((self.m3, self.m4))

    def __iter__(self):
        return iter(self.as_tuple())


def _v(x: int, p: int):
    return INF if x == 0 else vp(x, p)


def v_of_tuple(m: TupleM, p: int):
    """v_m = v(m3 - m1) + v(m3 - m2) = v(m1 m2 - m3 m4)."""
    m1, m2, m3, m4 = m.as_tuple()
    a = _v(m3 - m1, p) + _v(m3 - m2, p)
    b = _v(m1 * m2 - m3 * m4, p)
    if a != b:
        raise AssertionError(f"v_m formulas disagree on {m}: {a} != {b}")
    return b


# cases and thresholds


@dataclass(frozen=True)
class VanishingCase:
    """kind: "lower" / "weyl" (parameter gamma), "S" (s) or "U" (u)."""

    kind: str
    param: int
    n: int
    d: int = 0

    def __post_init__(self):
        if self.kind not in ("lower", "weyl", "S", "U"):
            raise ValueError(f"unknown case {self.kind!r}")

    @property
    def n2(self) -> int:
        return (self.n + 1) // 2

    @property
    def proven(self) -> bool:
        """Whether the parameter lies in the range where the vanishing argument is carried out."""
        k, x, n = self.kind, self.param, self.n
        if k in ("lower", "weyl"):
            return 0 < x < self.n2
        if k == "S":
            return 0 < x and 6 * x < n
        return 0 <= x and 4 * x < n

    def check_range(self):
        k, x, n = self.kind, self.param, self.n
        if k in ("lower", "weyl"):
            ok = 0 < x < self.n2
        elif k == "S":
            ok = n % 2 == 0 and 0 < x < n // 2
        else:
            ok = n % 2 == 0 and 0 <= x < self.n2
        if not ok:
            raise OutOfRange(f"{k} parameter {x} out of range for n = {n}")

    @classmethod
    def for_spec(cls, spec: RepresentationSpec, kind: str, param: int) -> "VanishingCase":
        return cls(kind, param, spec.n, spec.d)

    def to_json(self) -> dict:
        return {"kind": self.kind, "param": self.param, "n": self.n, "d": self.d}


def vanish_threshold(case: VanishingCase) -> int:
    """v_0 such that I_p(m) = 0 whenever v_m < v_0."""
    case.check_range()
    if case.kind in ("lower", "weyl"):
        return case.n2 - case.param - 1 - case.d
    if case.kind == "S":
        return case.n // 2 - 1
    # n/2 + u/2 - 1, rounded up when u is odd
    return -((-(case.n + case.param)) // 2) - 1


def tuple_constraints(m: TupleM, case: VanishingCase, p: int) -> bool:
    """Whether m satisfies the support constraints of the case."""
    ms = m.as_tuple()
    if case.kind in ("lower", "weyl"):
        return all(x % p for x in ms) and (m.m1 + m.m2) % p != 0
    if case.kind == "S":
        s = case.param
        return all(vp(x, p) == s for x in ms) and vp(m.m1 + m.m2, p) == s
    u = case.param
    if any(x % p == 0 for x in ms):
        return False
    if len({x % p for x in ms}) != 1:
        return False
    if m.a is not None and ms[0] % p != m.a % p:
        return False
    return len({x % p**u for x in ms}) == 1 if u else True


def ip_vanishing_predicate(m: TupleM, case: VanishingCase, p: int) -> bool:
    if not tuple_constraints(m, case, p):
        raise ConstraintViolated(f"{m.as_tuple()} is not admissible for {case.kind}({case.param})")
    return v_of_tuple(m, p) < vanish_threshold(case)


def admissible_tuples(case: VanishingCase, p: int, mmax: int, reduce: bool = True) -> Iterator[TupleM]:
    """Admissible tuples with entries <= mmax.

    With reduce=True one representative is kept per orbit of m1<->m2, m3<->m4
    and (m1, m2)<->(m3, m4); these swaps fix v_m and send I_p(m) to itself
    or its complex conjugate.
    """
    for S in range(2, 2 * mmax + 1):
        pairs = [(x, S - x) for x in range(max(1, S - mmax), min(mmax, S - 1) + 1)]
        if reduce:
            pairs = [pr for pr in pairs if pr[0] <= pr[1]]
        for i, (m1, m2) in enumerate(pairs):
            for j, (m3, m4) in enumerate(pairs):
                if reduce and j < i:
                    continue
                m = TupleM(m1, m2, m3, m4)
                if tuple_constraints(m, case, p):
                    yield m


# evaluator handles and tables


class WhittakerHandle:
    """t -> W(t) for the function whose fourfold integral a case studies."""

    def __init__(self, spec: RepresentationSpec, case: VanishingCase, branch: str | None = None):
        self.spec = spec
        self.case = case
        self.branch = branch
        self.p = spec.p
        k, x = case.kind, case.param
        if k == "lower":
            self.kappa, self.selector = Lower(x), None
        elif k == "weyl":
            self.kappa, self.selector = Weyl(x), None
        elif k == "S":
            self.kappa, self.selector = Lower(0), DyadicSelector("S", x)
        else:
            self.kappa, self.selector = Lower(0), DyadicSelector("U", x)
        if branch is not None and k != "S":
            raise ValueError("branches are only split off in the S case")
        self._tables: dict = {}

    def __call__(self, y) -> WhittakerValue:
        if self.selector is None:
            w = balanced_eval(self.spec, y, self.kappa)
        else:
            w = dyadic_component(self.spec, self.kappa, self.selector, y)
        if self.branch is not None and w.support_flag:
            w = w.branch(self.branch)
        return w

    def shells(self) -> tuple:
        """Valuations of the arguments m_j t that can carry support."""
        return (self.case.param,) if self.case.kind == "S" else (0,)

    def table(self, M: int) -> "WTable":
        tab = self._tables.get(M)
        if tab is None:
            tab = WTable(self, M)
            self._tables[M] = tab
        return tab


def _same(a: WhittakerValue, b: WhittakerValue) -> bool:
    if a.support_flag != b.support_flag:
        return a.is_zero() and b.is_zero()
    if not a.support_flag:
        return True
    return a.terms == b.terms and a.scale == b.scale and a.q12 == b.q12


class WTable:
    """Values of a handle on every residue class modulo p^M of the needed shells."""

    def __init__(self, handle: WhittakerHandle, M: int, check_samples: int = 48, seed: int = 0):
        self.handle = handle
        self.M = M
        p = handle.p
        mod = p**M
        rows = []
        residues = []
        for s in handle.shells():
            if s >= M:
                raise LevelTooLow("level below the support shell")
            u = np.arange(p ** (M - s), dtype=np.int64)
            u = u[u % p != 0]
            residues.extend((u * p**s).tolist())
        stamp = None
        width = 1
        vals = {}
        for r in residues:
            w = handle(r)
            if w.support_flag and w.terms:
                key = (w.scale, w.q12)
                if stamp is None:
                    stamp = key
                elif key != stamp:
                    raise ValueError("values of different magnitude types in one table")
                vals[r] = w
                width = max(width, len(w.terms))
        self.modulus_full = handle.spec.p**handle.spec.angle_level
        E = np.zeros((mod, width), dtype=np.int64)
        C = np.zeros((mod, width), dtype=np.int64)
        g = self.modulus_full
        for r, w in vals.items():
            for i, (j, c) in enumerate(sorted(w.terms.items())):
                E[r, i] = j
                C[r, i] = c
                g = math.gcd(g, j)
        # exponents only need the modulus they actually use
        self.modulus = self.modulus_full // g if vals else 1
        self.E = E // g if vals else E
        self.C = C
        self.scale, self.q12 = stamp if stamp else (Fraction(1), 0)
        self.width = width
        self.support = np.zeros(mod, dtype=bool)
        self.support[list(vals)] = True
        self._check_level(residues, check_samples, seed)

    def _check_level(self, residues, n, seed):
        h, M, p = self.handle, self.M, self.handle.p
        rng = random.Random(seed)
        sup = [r for r in residues if self.support[r]] or residues
        for _ in range(min(n, len(residues))):
            r = rng.choice(sup)
            lift = r + p**M * rng.randrange(1, p**3)
            if not _same(h(r), h(lift)):
                raise LevelTooLow(f"W not constant on classes modulo p^{M}")


def find_level(handle: WhittakerHandle, start: int = 2, limit: int = 12) -> int:
    """Smallest level M at which the handle passes the lift check."""
    for M in range(max(start, max(handle.shells()) + 1), limit + 1):
        try:
            handle.table(M)
            return M
        except LevelTooLow:
            handle._tables.pop(M, None)
            continue
    raise LevelTooLow(f"no level up to {limit}")


@dataclass
class IpResult:
    value: ExactExponentialSum
    is_zero: bool
    coset_zero: list
    level: int


def _counts(handle: WhittakerHandle, m: TupleM, M: int, coset_level: int):
    tab = handle.table(M)
    p = handle.p
    mod = p**M
    T = np.arange(mod, dtype=np.int64)
    T = T[T % p != 0]
    idx = [(x % mod) * T % mod for x in m.as_tuple()]
    live = tab.support[idx[0]] & tab.support[idx[1]] & tab.support[idx[2]] & tab.support[idx[3]]
    N = tab.modulus
    cos = (T % p**coset_level)
    ncos = p**coset_level
    total = np.zeros(ncos * N, dtype=np.int64)
    if live.any():
        T = T[live]
        cos = cos[live]
        idx = [i[live] for i in idx]
        Es = [tab.E[i] for i in idx]
        Cs = [tab.C[i] for i in idx]
        w = tab.width
        for a in range(w):
            for b in range(w):
                e12 = Es[0][:, a] + Es[1][:, b]
                c12 = Cs[0][:, a] * Cs[1][:, b]
                if not c12.any():
                    continue
                for c in range(w):
                    for d in range(w):
                        wt = c12 * Cs[2][:, c] * Cs[3][:, d]
                        if not wt.any():
                            continue
                        e = (e12 - Es[2][:, c] - Es[3][:, d]) % N
                        total += np.bincount(cos * N + e, weights=wt, minlength=ncos * N).astype(np.int64)
    return total.reshape(ncos, N), N, tab


def cyclotomic_zero(counts: np.ndarray, N: int, p: int) -> bool:
    """sum_j counts[j] zeta_N^j == 0 for N a power of p."""
    if N == 1:
        return not counts.any()
    rows = counts.reshape(p, N // p)
    return bool((rows == rows[0]).all())


def ip_bruteforce(W: WhittakerHandle, m: TupleM, level: int | None = None, coset_level: int = 1) -> IpResult:
    """I_p(m) = integral over O^x of W(m1 t) W(m2 t) conj(W(m3 t) W(m4 t)) d^x t, exactly."""
    p = W.p
    M = level if level is not None else find_level(W)
    if coset_level > M:
        raise LevelTooLow("cosets finer than the level")
    counts, N, tab = _counts(W, m, M, coset_level)
    coset_zero = [cyclotomic_zero(row, N, p) for row in counts]
    tot = counts.sum(axis=0)
    zero = cyclotomic_zero(tot, N, p)
    units = (p - 1) * p ** (M - 1)
    s4 = tab.scale**4
    val = ExactExponentialSum.from_counts(tot, N, 1, q=p) * Fraction(s4.numerator, s4.denominator * units)
    if tab.q12 and not val.is_zero():
        val = val.scale_q(p, 4 * tab.q12)
    if val.is_zero() != zero:
        raise AssertionError("row test and cyclotomic reduction disagree")
    return IpResult(val, zero, coset_zero, M)


def coset_level_for(case: VanishingCase) -> int:
    return case.param + 1 if case.kind == "U" else 1


@dataclass
class IpReport:
    case: dict
    branch: str | None
    tuple: tuple
    v_m: object
    v0: int
    predicted_zero: bool
    brute_force_zero: bool
    cosets_zero: bool

    @property
    def agree(self) -> bool:
        return self.brute_force_zero or not self.predicted_zero

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "branch": self.branch,
            "tuple": list(self.tuple),
            "v_m": "inf" if self.v_m == INF else self.v_m,
            "v0": self.v0,
            "predicted_zero": self.predicted_zero,
            "brute_force_zero": self.brute_force_zero,
            "cosets_zero": self.cosets_zero,
            "agree": self.agree,
        }


def verify_ip_vanishing(spec: RepresentationSpec, case: VanishingCase, mmax: int = 40,
                        branch: str | None = None, only_predicted: bool = True) -> list:
    """Brute-force I_p on every admissible tuple up to mmax (predicted zeros only by default)."""
    p = spec.p
    v0 = vanish_threshold(case)
    W = WhittakerHandle(spec, case, branch)
    M = find_level(W)
    cl = min(coset_level_for(case), M)
    out = []
    for m in admissible_tuples(case, p, mmax):
        vm = v_of_tuple(m, p)
        pred = vm < v0
        if only_predicted and not pred:
            continue
        r = ip_bruteforce(W, m, M, cl)
        out.append(IpReport(case.to_json(), branch, m.as_tuple(), vm, v0, pred, r.is_zero, all(r.coset_zero)))
    return out


# h and its derivative


def _F(p: int, x, prec: int = PREC) -> PadicScalar:
    return x if isinstance(x, PadicScalar) else PadicScalar.from_rational(p, Fraction(x), prec)


def h_prime(t: PadicScalar, B, branch: int | None = None) -> PadicScalar:
    """H'(t) = -(1/2t) sqrt(t^2 + 4B^2) - 1/2, the root congruent to t unless a branch is given."""
    p = t.p
    B = _F(p, B)
    disc = t * t + B * B * 4
    if branch is None:
        if t.valuation != 0 or not (B.is_zero() or B.valuation > 0):
            raise NonSquare("default branch needs t a unit and B in p")
        branch = t.leading_digit()
    s = sqrt_hensel(disc, branch)
    return -(s / (t * 2)) - Fraction(1, 2)


def h_function(t: PadicScalar, B) -> PadicScalar:
    """H(t) = -B log((R + B)/(R - B)) + R for B in pF, R the unit root of R^2 + tR - B^2."""
    p = t.p
    B = _F(p, B)
    if B.is_zero():
        return -t
    R = -t - small_root(t, B * B)
    return -B * padic_log((R + B) / (R - B)) + R


def h_function_E(spec: RepresentationSpec, t: PadicScalar, B: AlgebraElement) -> PadicScalar:
    """H(t) for B = Omega^d p^gamma b in E; the result lies in F."""
    D = spec.xi.descriptor
    B2 = B * B
    c = B2.x1
    R = -t - small_root(t, c)
    Re = D.from_F(R)
    val = -(B * padic_log((Re + B) / (Re - B))) + Re
    return _to_F(val)


def _to_F(z: AlgebraElement) -> PadicScalar:
    if z.desc.kind == "split":
        return z.x1
    return z.x1


# phase series


@dataclass
class PhaseSeries:
    """Phi(z) = constant + sum_{k>=1} coeffs[k-1] z^k / k!, integrated as psi(p^-scale_exponent Phi(z)), z in p."""

    p: int
    base_point: object
    constant: PadicScalar
    coeffs: list
    scale_exponent: int
    meta: dict = field(default_factory=dict)

    @property
    def length(self) -> int:
        return len(self.coeffs)

    def taylor(self, k: int) -> PadicScalar:
        """a_k / k!."""
        if k == 0:
            return self.constant
        return self.coeffs[k - 1] / math.factorial(k)

    def valuations(self) -> list:
        return [c.valuation for c in self.coeffs]

    def hypothesis_holds(self) -> bool:
        v1 = self.coeffs[0].valuation
        return all(c.valuation >= v1 for c in self.coeffs[1:])

    def truncation_certified(self) -> bool:
        """Dropped terms (k > L) satisfy v(a_k/k! z^k) >= scale on p, given v(a_k) >= v(a_1)."""
        v1 = self.coeffs[0].valuation
        if v1 == INF:
            return True
        L = self.length
        k = L + 1
        # v(k!) <= (k-1)/(p-1), so the worst case over k > L is attained at k = L+1
        return v1 + k - (k - 1) / (self.p - 1) >= self.scale_exponent

    def polynomial(self) -> list:
        """Rational coefficients of p^-scale * Phi truncated at the stored length."""
        e = Fraction(self.p) ** (-self.scale_exponent)
        out = [self.constant.to_fraction() * e]
        for k in range(1, self.length + 1):
            out.append(self.taylor(k).to_fraction() * e)
        return out


def substitute_integral(series: PhaseSeries, fallback: bool = True) -> ExactExponentialSum:
    """integral over p of psi(p^-e Phi(z)) dz by the nonlinear substitution."""
    p = series.p
    if not series.hypothesis_holds():
        if fallback:
            return phase_bruteforce(series)
        raise HypothesisFailed("some v(a_k) < v(a_1)")
    v1 = series.coeffs[0].valuation
    if v1 != INF and v1 - series.scale_exponent < -1:
        return ExactExponentialSum.zero()
    ang = series.constant.shift(-series.scale_exponent).frac()
    return ExactExponentialSum(ang.denominator, {ang.numerator: 1}, p, q=p)


def phase_bruteforce(series: PhaseSeries) -> ExactExponentialSum:
    """Finite sum over z in p of psi of the truncated polynomial."""
    return polynomial_integral(series.p, series.polynomial(), "coset", 0, 1)


def _binom_half(i: int) -> Fraction:
    out = Fraction(1)
    for j in range(i):
        out *= Fraction(1, 2) - j
    return out / math.factorial(i)


def _four_B_squared(spec: RepresentationSpec, gamma: int) -> Fraction:
    """4B^2 for B = Omega^d p^gamma b."""
    return Fraction(4 * spec.b_squared * spec.p ** (2 * gamma + spec.d))


def _B_element(spec: RepresentationSpec, gamma: int, prec: int = PREC) -> AlgebraElement:
    D = spec.xi.descriptor
    b = spec.xi.b_element(prec)
    pg = PadicScalar.from_int(spec.p, spec.p**gamma, prec)
    B = b * D.from_F(pg)
    if spec.d:
        B = B * D.omega(prec)
    return B


def _series_lower(spec: RepresentationSpec, case: VanishingCase, m: TupleM, t0, L: int) -> tuple:
    """Taylor coefficients c_k = Phi^(k)(t0)/k! (k = 1..L) through Phi'(t) = sum_i a_i t^-2i."""
    p, g = spec.p, case.param
    c4 = _four_B_squared(spec, g)
    t0 = Fraction(t0)
    ms = m.as_tuple()
    rate = 2 * g + spec.d
    I = (PREC + 10) // rate + 2
    a = {}
    for i in range(1, I + 1):
        s = sum(e * Fraction(x) ** (1 - 2 * i) for e, x in zip(ETA, ms))
        a[i] = -Fraction(1, 2) * _binom_half(i) * c4**i * s
    out = []
    for k in range(0, L):
        tot = Fraction(0)
        for i, ai in a.items():
            if ai:
                tot += ai * _gbinom(-2 * i, k) * t0 ** (-2 * i - k)
        out.append(tot / (k + 1))
    return out, a


def _gbinom(x: int, k: int) -> int:
    out = 1
    for j in range(k):
        out = out * (x - j)
    return out // math.factorial(k)


def _series_S(spec: RepresentationSpec, case: VanishingCase, m: TupleM, t0, L: int) -> list:
    """Coefficients a_k (k = 0..L-1) with Phi'(z) = sign * sum a_k z^k."""
    p, s = spec.p, case.param
    b = Fraction(spec.b0)
    t0 = Fraction(t0)
    ms = m.as_tuple()
    I = (PREC + 10) // (2 * s) + 2
    sums = {i: sum(e * Fraction(x) ** (2 * i) for e, x in zip(ETA, ms)) for i in range(1, I + 1)}
    out = []
    for k in range(L):
        tot = Fraction(0)
        for i in range(1, I + 1):
            if 2 * i - 1 < k:
                continue
            tot += (2 * b) ** (1 - 2 * i) * t0 ** (2 * i - 1 - k) * _binom_half(i) * math.comb(2 * i - 1, k) * sums[i]
        out.append(tot / 2)
    return out


def _poly_mul(a: list, b: list, L: int) -> list:
    out = [0] * L
    for i, x in enumerate(a[:L]):
        if x == 0:
            continue
        for j, y in enumerate(b[: L - i]):
            out[i + j] += x * y
    return out


def _A_table(t0: Fraction, pu: int, L: int) -> dict:
    """A[l][g]: -binom(1/2, l) (2 t0 z + p^u z^2)^l / (2 (t0 + p^u z)) = sum_g A[l][g] z^g."""
    inv = [Fraction(1) / t0 * (Fraction(-pu) / t0) ** r for r in range(L)]
    base = [Fraction(0), 2 * t0, Fraction(pu)]
    A = {}
    pw = [Fraction(1)] + [Fraction(0)] * (L - 1)
    for l in range(L):
        A[l] = [-_binom_half(l) / 2 * c for c in _poly_mul(pw, inv, L)]
        pw = _poly_mul(pw, base, L)
    return A


def case3_alphas(spec: RepresentationSpec, m: TupleM, t0: int, u: int, signs=(1, 1, 1, 1)) -> list:
    """alpha_j with (m_j t0)^2 + 4b^2 = p^u alpha_j^2, branch taken from the Whittaker evaluator."""
    p = spec.p
    out = []
    for x, sg in zip(m.as_tuple(), signs):
        y = Fraction(x * t0)
        D = y * y + 4 * spec.b_squared
        if D == 0 or vp_rational(D, p) != u:
            raise UnsupportedStratum(f"(m_j t0)^2 + 4b^2 has valuation != {u}")
        Dp = PadicScalar.from_rational(p, D / Fraction(p) ** u, PREC)
        if legendre(Dp.unit, p) != 1:
            raise UnsupportedStratum("(m_j t0)^2 + 4b^2 is not a square")
        # the evaluator's root of Delta = D / y^2 has leading digit in [1, (p-1)/2]
        Delta = Dp / PadicScalar.from_rational(p, y * y, PREC)
        r0 = min(r for r in range(1, p) if r * r % p == Delta.unit % p)
        if r0 > (p - 1) // 2:
            r0 = p - r0
        root = sqrt_hensel(Delta, r0) * PadicScalar.from_rational(p, y, PREC)
        out.append(root * sg)
    return out


def _series_U(spec: RepresentationSpec, case: VanishingCase, m: TupleM, t0: int, L: int, signs) -> tuple:
    """a_k (k = 0..L-1) with Phi'(z) = p^(3u/2) sum a_k z^k, via b_{k,h} and via m_j directly."""
    p, u = spec.p, case.param
    if u % 2:
        raise UnsupportedStratum("odd u: Delta of odd valuation is never a square")
    alphas = case3_alphas(spec, m, t0, u, signs)
    t0f = Fraction(t0)
    pu = p**u
    A = _A_table(t0f, pu, L)
    b2 = Fraction(spec.b_squared)

    def Bcoef(l, h):  # coefficient of alpha^(2h) in m^(2l)
        return t0f ** (-2 * l) * math.comb(l, h) * Fraction(pu) ** h * (-4 * b2) ** (l - h)

    pows = {}

    def S(e):  # sum eta_j alpha_j^e
        if e not in pows:
            pows[e] = sum((al**e if e >= 0 else al.inverse() ** (-e)) * eta for al, eta in zip(alphas, ETA))
        return pows[e]

    route_b = []
    bkh = {}
    for k in range(L):
        tot = PadicScalar.zero(p)
        for h in range(k + 1):
            c = sum(A[l][k] * Bcoef(l, l - h) for l in range(h, k + 1))
            bkh[(k, h)] = c
            if c:
                tot = tot + S(1 - 2 * h) * c
        route_b.append(tot)
    route_m = []
    for k in range(L):
        tot = PadicScalar.zero(p)
        for l in range(k + 1):
            if A[l][k] == 0:
                continue
            for al, eta, x in zip(alphas, ETA, m.as_tuple()):
                term = (al.inverse() ** (2 * l - 1) if l else al) * (A[l][k] * Fraction(x) ** (2 * l) * eta)
                tot = tot + term
        route_m.append(tot)
    return route_b, route_m, alphas, bkh


def phi_series(spec: RepresentationSpec, case: VanishingCase, m: TupleM, t0, L: int | None = None,
               branch: str = "+", signs=(1, 1, 1, 1)) -> PhaseSeries:
    """The phase power series of a coset integral of I_p(m)."""
    p = spec.p
    if not tuple_constraints(m, case, p):
        raise ConstraintViolated("tuple not admissible for the case")
    if case.kind in ("lower", "weyl"):
        e = case.param + case.n2
        L = L or e + 3
        cs, _ = _series_lower(spec, case, m, t0, L)
        coeffs = [_F(p, c * math.factorial(k + 1)) for k, c in enumerate(cs)]
        t0s = _F(p, t0)
        B = _B_element(spec, case.param)
        const = PadicScalar.zero(p)
        for eta, x in zip(ETA, m.as_tuple()):
            hv = h_function_E(spec, t0s * x, B)
            const = const + hv if eta > 0 else const - hv
        return PhaseSeries(p, t0s, const, coeffs, e, {"case": "lower", "route": "a_i"})
    if case.kind == "S":
        e = case.n // 2
        L = L or e + 3
        sign = -1 if branch == "+" else 1
        ak = _series_S(spec, case, m, t0, L)
        coeffs = [_F(p, sign * c * math.factorial(k)) for k, c in enumerate(ak)]
        const = _base_constant(spec, m, _F(p, t0), branch)
        return PhaseSeries(p, _F(p, t0), const, coeffs, e, {"case": "S", "a": ak, "branch": branch})
    e = case.n // 2
    L = L or e + 3
    rb, rm, alphas, bkh = _series_U(spec, case, m, t0, L, signs)
    scale = Fraction(p) ** (3 * case.param // 2)
    coeffs = [c * scale * math.factorial(k) for k, c in enumerate(rb)]
    const = PadicScalar.zero(p)
    for eta, x, al in zip(ETA, m.as_tuple(), alphas):
        R = (-(_F(p, x * t0)) - al.shift(case.param // 2)) / 2
        const = const + R if eta > 0 else const - R
    return PhaseSeries(p, _F(p, t0), const, coeffs, e,
                       {"case": "U", "a": rb, "a_direct": rm, "alphas": alphas, "b_kh": bkh})


def _base_constant(spec: RepresentationSpec, m: TupleM, t0: PadicScalar, branch: str) -> PadicScalar:
    """sum eta_j R_j(t0); the logarithmic part is normalised to vanish at the base point."""
    p = spec.p
    const = PadicScalar.zero(p)
    for eta, x in zip(ETA, m.as_tuple()):
        t = t0 * x
        disc = t * t + 4 * spec.b_squared
        s = sqrt_hensel(disc, (-2 * spec.b0) % p if branch == "+" else (2 * spec.b0) % p)
        R = (-t + s) / 2
        const = const + R if eta > 0 else const - R
    return const


# the direct Taylor route, used as a cross-check


def _ps_mul(a: list, b: list, L: int) -> list:
    p = a[0].p
    out = [PadicScalar.zero(p) for _ in range(L)]
    for i in range(L):
        if a[i].is_zero():
            continue
        for j in range(L - i):
            if not b[j].is_zero():
                out[i + j] = out[i + j] + a[i] * b[j]
    return out


def _ps_sqrt(f: list, root0: PadicScalar, L: int) -> list:
    """g with g^2 = f, g[0] = root0 (root0 must be a unit or f[0] dominant)."""
    p = root0.p
    g = [root0] + [PadicScalar.zero(p) for _ in range(L - 1)]
    two_g0 = root0 * 2
    for k in range(1, L):
        acc = f[k]
        for i in range(1, k):
            if not g[i].is_zero() and not g[k - i].is_zero():
                acc = acc - g[i] * g[k - i]
        g[k] = acc / two_g0
    return g


def _ps_inv_linear(c0: PadicScalar, c1, L: int) -> list:
    """1/(c0 + c1 z)."""
    p = c0.p
    r = -(c0.inverse() * c1)
    out = [c0.inverse()]
    for _ in range(1, L):
        out.append(out[-1] * r)
    return out


def taylor_direct(spec: RepresentationSpec, case: VanishingCase, m: TupleM, t0, L: int, branch: str = "+",
                  signs=(1, 1, 1, 1)) -> list:
    """Taylor coefficients of Phi'(z) from power-series square roots, without the closed expansions."""
    p = spec.p
    one = _F(p, 1)
    if case.kind in ("lower", "weyl", "S"):
        c4 = _four_B_squared(spec, case.param) if case.kind != "S" else Fraction(4 * spec.b_squared)
        t0s = _F(p, t0)
        tot = [PadicScalar.zero(p) for _ in range(L)]
        for eta, x in zip(ETA, m.as_tuple()):
            mx = _F(p, x)
            # (m (t0 + z))^2 + 4B^2 = m^2 t0^2 + 4B^2 + 2 m^2 t0 z + m^2 z^2
            f = [mx * mx * t0s * t0s + c4, mx * mx * t0s * 2, mx * mx] + [PadicScalar.zero(p)] * (L - 3)
            if case.kind == "S":
                r0 = sqrt_hensel(f[0], (-2 * spec.b0) % p if branch == "+" else (2 * spec.b0) % p)
            else:
                r0 = sqrt_hensel(f[0], (x * Fraction(t0).numerator * pow(Fraction(t0).denominator, -1, p)) % p)
            g = _ps_sqrt(f, r0, L)
            inv = _ps_inv_linear(t0s, one, L)
            term = _ps_mul(g, inv, L)
            for k in range(L):
                tot[k] = tot[k] + term[k] * Fraction(eta, 2)
        if case.kind == "S":
            return tot
        return [-c for c in tot]
    # U: Phi'(z) = (p^u / 2) sum eta sqrt(((t0 + p^u z) m)^2 + 4b^2) / (t0 + p^u z), root on the evaluator branch
    u = case.param
    pu = p**u
    alphas = case3_alphas(spec, m, t0, u, signs)
    t0s = _F(p, t0)
    tot = [PadicScalar.zero(p) for _ in range(L)]
    for eta, x, al in zip(ETA, m.as_tuple(), alphas):
        mx = _F(p, x)
        # divide by p^u: alpha^2 + m^2 (2 t0 z + p^u z^2)
        f = [al * al, mx * mx * t0s * 2, mx * mx * pu] + [PadicScalar.zero(p)] * (L - 3)
        g = _ps_sqrt(f, al, L)
        inv = _ps_inv_linear(t0s, _F(p, pu), L)
        term = _ps_mul(g, inv, L)
        for k in range(L):
            tot[k] = tot[k] + term[k] * Fraction(-eta, 2)
    return tot


# valuation inequalities


@dataclass(frozen=True)
class Certificate:
    holds: bool
    lhs: object
    rhs: object
    detail: str = ""

    def __bool__(self):
        return self.holds


def _vq(x: Fraction, p: int):
    return INF if x == 0 else vp_rational(x, p)


def elementary_min_valuation(alphas, l: int, p: int) -> Certificate:
    """min(v(sum eta alpha), v(sum eta alpha^-1)) <= v(sum eta alpha^l)."""
    al = [Fraction(a) for a in alphas]
    if any(_vq(a, p) != 0 for a in al):
        raise PreconditionViolated("alphas must be units")
    if l % 2 == 0 and _vq(al[0] + al[1], p) != 0:
        raise PreconditionViolated("even l needs alpha1 + alpha2 a unit")
    s1 = sum(e * a for e, a in zip(ETA, al))
    sm = sum(e / a for e, a in zip(ETA, al))
    sl = sum(e * a**l for e, a in zip(ETA, al))
    lhs = min(_vq(s1, p), _vq(sm, p))
    rhs = _vq(sl, p)
    return Certificate(lhs <= rhs, lhs, rhs, f"l={l}")


def _vps(x: PadicScalar):
    return x.valuation


def alpha_inequalities(spec: RepresentationSpec, m: TupleM, t0: int, u: int, signs=(1, 1, 1, 1)) -> tuple:
    """The three valuation inequalities relating the alphas of a Case-3 coset to v_m."""
    p = spec.p
    vm = v_of_tuple(m, p)
    if vm == INF:
        t = Certificate(True, INF, INF, "diagonal")
        return t, t, t
    a1, a2, a3, a4 = case3_alphas(spec, m, t0, u, signs)
    v1 = _vps(a1 + a2 - a3 - a4)
    v2 = _vps(a1 + a2 + a3 + a4)
    vprod = _vps(a1 * a2 - a3 * a4)
    vinv = _vps(a1.inverse() + a2.inverse() - a3.inverse() - a4.inverse())
    rhs1 = v1 + v2 + min(vm, u + vprod) + 3 * u
    part1 = Certificate(2 * vm >= rhs1, 2 * vm, rhs1, "2 v_m >= v1 + v2 + min(v_m, u + v(a1a2 - a3a4)) + 3u")
    part2 = Certificate(v1 <= vinv, v1, vinv, "v1 <= v(sum eta alpha^-1)")
    part3 = Certificate(v1 <= vm - 2 * u, v1, vm - 2 * u, "v1 <= v_m - 2u")
    return part1, part2, part3


def admissible_t0(spec: RepresentationSpec, m: TupleM, u: int) -> list:
    """Units t0 mod p^(u+1) whose coset carries the whole integrand in the U(u) stratum."""
    p = spec.p
    out = []
    for t in range(1, p ** (u + 1)):
        if t % p == 0:
            continue
        try:
            case3_alphas(spec, m, t, u)
        except UnsupportedStratum:
            continue
        out.append(t)
    return out
