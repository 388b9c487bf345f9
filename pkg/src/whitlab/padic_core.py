"""Arithmetic in F = Q_p at finite precision and in quadratic etale algebras E/F.

A PadicScalar is p^valuation * unit where the unit is known modulo
p^precision (relative precision).  Every operation reports a precision
no larger than the number of digits it actually knows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from .errors import (
    BadBranch,
    DivisionByZero,
    Divergent,
    NoSuchRoot,
    NonSquare,
    OutOfDomain,
    PrecisionExhausted,
)

INF = math.inf

Rational = Union[int, Fraction]


def vp(x: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if x == 0:
        raise ValueError("valuation of 0")
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k


def vp_rational(x: Rational, p: int) -> float:
    x = Fraction(x)
    if x == 0:
        return INF
    return vp(x.numerator, p) - vp(x.denominator, p)


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


@lru_cache(maxsize=None)
def smallest_nonresidue(p: int) -> int:
    for r in range(2, p):
        if legendre(r, p) == -1:
            return r
    raise ValueError(f"no non-residue mod {p}")


def is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    return all(p % d for d in range(3, math.isqrt(p) + 1, 2))


@dataclass(frozen=True)
class FieldContext:
    p: int
    default_precision: int = 20

    def __post_init__(self):
        if not is_odd_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.default_precision < 1:
            raise ValueError("precision must be positive")

    @property
    def kappa_F(self) -> int:
        return 1

    @property
    def v3(self) -> int:
        return 1 if self.p == 3 else 0

    @property
    def zeta_nonsquare(self) -> int:
        return smallest_nonresidue(self.p)

    def scalar(self, x: Rational) -> "PadicScalar":
        return PadicScalar.from_rational(self.p, x, self.default_precision)


class PadicScalar:
    """p^valuation * unit, the unit known modulo p^precision."""

    __slots__ = ("p", "valuation", "unit", "precision")

    def __init__(self, p: int, valuation, unit: int, precision: int):
        self.p = p
        if valuation == INF:
            self.valuation = INF
            self.unit = 0
            self.precision = 0
            return
        if precision < 1:
            raise PrecisionExhausted("a nonzero scalar needs at least one digit")
        unit %= p**precision
        if unit % p == 0:
            raise ValueError("unit part must be prime to p")
        self.valuation = int(valuation)
        self.unit = unit
        self.precision = precision

    # construction

    @classmethod
    def zero(cls, p: int) -> "PadicScalar":
        return cls(p, INF, 0, 0)

    @classmethod
    def from_int(cls, p: int, x: int, precision: int) -> "PadicScalar":
        if x == 0:
            return cls.zero(p)
        v = vp(x, p)
        return cls(p, v, x // p**v, precision)

    @classmethod
    def from_rational(cls, p: int, x: Rational, precision: int) -> "PadicScalar":
        x = Fraction(x)
        if x == 0:
            return cls.zero(p)
        num, den = x.numerator, x.denominator
        vn, vd = vp(num, p), vp(den, p)
        num //= p**vn
        den //= p**vd
        m = p**precision
        return cls(p, vn - vd, num * pow(den, -1, m), precision)

    @classmethod
    def from_residue(cls, p: int, r: int, abs_precision: int) -> "PadicScalar":
        """The class of the integer r modulo p^abs_precision."""
        r %= p**abs_precision
        if r == 0:
            return cls.zero(p)
        v = vp(r, p)
        return cls(p, v, r // p**v, abs_precision - v)

    def _coerce(self, x) -> "PadicScalar":
        if isinstance(x, PadicScalar):
            if x.p != self.p:
                raise ValueError("mixing different primes")
            return x
        if not isinstance(x, (int, Fraction)):
            return NotImplemented
        x = Fraction(x)
        if x == 0:
            return PadicScalar.zero(self.p)
        if self.valuation == INF:
            prec = 40
        else:
            vx = vp_rational(x, self.p)
            prec = max(self.precision, self.valuation + self.precision - vx, 1) + 1
        return PadicScalar.from_rational(self.p, x, int(prec))

    # predicates and accessors

    def is_zero(self) -> bool:
        return self.valuation == INF

    def is_unit(self) -> bool:
        return self.valuation == 0

    @property
    def abs_precision(self):
        return INF if self.valuation == INF else self.valuation + self.precision

    def with_precision(self, precision: int) -> "PadicScalar":
        if self.valuation == INF or precision >= self.precision:
            return self
        return PadicScalar(self.p, self.valuation, self.unit, precision)

    def with_abs_precision(self, abs_precision: int) -> "PadicScalar":
        if self.valuation == INF:
            return self
        rel = abs_precision - self.valuation
        if rel < 1:
            return PadicScalar.zero(self.p)
        return self.with_precision(rel)

    def unit_part(self) -> "PadicScalar":
        if self.valuation == INF:
            raise DivisionByZero("unit part of zero")
        return PadicScalar(self.p, 0, self.unit, self.precision)

    def leading_digit(self) -> int:
        if self.valuation == INF:
            raise DivisionByZero("leading digit of zero")
        return self.unit % self.p

    def residue(self, k: int) -> int:
        """The integral scalar reduced modulo p^k."""
        if k <= 0 or self.valuation == INF:
            return 0
        if self.valuation < 0:
            raise OutOfDomain("residue of a non-integral scalar")
        if self.valuation >= k:
            return 0
        if self.abs_precision < k:
            raise PrecisionExhausted(f"need {k} digits, have {self.abs_precision}")
        m = self.p**k
        return self.p**self.valuation * self.unit % m

    def frac(self) -> Fraction:
        """p-adic fractional part in [0, 1)."""
        if self.valuation == INF or self.valuation >= 0:
            return Fraction(0)
        if self.abs_precision < 0:
            raise PrecisionExhausted("fractional part not determined")
        den = self.p ** (-self.valuation)
        return Fraction(self.unit % den, den)

    def to_fraction(self) -> Fraction:
        """The rational p^v * unit with 0 < unit < p^precision."""
        if self.valuation == INF:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.p) ** self.valuation

    # arithmetic

    def __neg__(self):
        if self.valuation == INF:
            return self
        return PadicScalar(self.p, self.valuation, -self.unit, self.precision)

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        a = self
        if a.valuation == INF:
            return b
        if b.valuation == INF:
            return a
        if a.valuation > b.valuation:
            a, b = b, a
        p = a.p
        rel = min(a.valuation + a.precision, b.valuation + b.precision) - a.valuation
        m = p**rel
        d = b.valuation - a.valuation
        s = (a.unit + (pow(p, d, m) * b.unit if d < rel else 0)) % m
        if s == 0:
            return PadicScalar.zero(p)
        k = 0
        while s % p == 0:
            s //= p
            k += 1
        return PadicScalar(p, a.valuation + k, s, rel - k)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return b + (-self)

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        if self.valuation == INF or b.valuation == INF:
            return PadicScalar.zero(self.p)
        prec = min(self.precision, b.precision)
        return PadicScalar(
            self.p, self.valuation + b.valuation, self.unit * b.unit, prec
        )

    __rmul__ = __mul__

    def inverse(self) -> "PadicScalar":
        if self.valuation == INF:
            raise DivisionByZero("inverse of zero")
        m = self.p**self.precision
        return PadicScalar(self.p, -self.valuation, pow(self.unit, -1, m), self.precision)

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return self * b.inverse()

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return b * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return PadicScalar.from_int(self.p, 1, max(self.precision, 1) or 40)
        if self.valuation == INF:
            return self
        m = self.p**self.precision
        return PadicScalar(self.p, self.valuation * e, pow(self.unit, e, m), self.precision)

    def shift(self, k: int) -> "PadicScalar":
        """Multiply by p^k."""
        if self.valuation == INF:
            return self
        return PadicScalar(self.p, self.valuation + k, self.unit, self.precision)

    def __eq__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        if self.valuation == INF or b.valuation == INF:
            return self.valuation == b.valuation
        if self.valuation != b.valuation:
            return False
        m = self.p ** min(self.precision, b.precision)
        return (self.unit - b.unit) % m == 0

    __hash__ = None

    def __repr__(self):
        if self.valuation == INF:
            return f"PadicScalar(p={self.p}, 0)"
        return (
            f"PadicScalar(p={self.p}, v={self.valuation}, "
            f"u={self.unit}, prec={self.precision})"
        )


def scalar_arithmetic(a: PadicScalar, b: PadicScalar, op: str) -> PadicScalar:
    ops = {
        "add": lambda: a + b,
        "sub": lambda: a - b,
        "mul": lambda: a * b,
        "div": lambda: a / b,
    }
    if op not in ops:
        raise ValueError(f"unknown op {op!r}")
    return ops[op]()


# square roots


def sqrt_unit_mod(u: int, p: int, k: int, branch: int) -> int:
    """Square root of the unit u modulo p^k with leading digit `branch`."""
    r = branch % p
    m = p
    while m < p**k:
        m = min(m * m, p**k)
        r = (r - (r * r - u) * pow(2 * r, -1, m)) % m
    return r % p**k


def sqrt_hensel(x: PadicScalar, branch: int | None = None) -> PadicScalar:
    """Square root of x whose unit part has leading digit `branch`."""
    p = x.p
    if x.is_zero():
        return x
    if x.valuation % 2:
        raise NonSquare("odd valuation")
    u0 = x.unit % p
    if legendre(u0, p) != 1:
        raise NonSquare(f"{u0} is not a square mod {p}")
    if branch is None:
        branch = min(r for r in range(1, p) if r * r % p == u0)
    if (branch * branch - u0) % p:
        raise BadBranch(f"{branch}^2 is not {u0} mod {p}")
    r = sqrt_unit_mod(x.unit, p, x.precision, branch)
    return PadicScalar(p, x.valuation // 2, r, x.precision)


# quadratic etale algebras


@dataclass(frozen=True)
class AlgebraDescriptor:
    """E = F x F, F(sqrt zeta) or F(Omega) with Omega^2 = p."""

    kind: str
    p: int

    def __post_init__(self):
        if self.kind not in ("split", "unramified", "ramified"):
            raise ValueError(f"unknown algebra kind {self.kind!r}")

    @property
    def e(self) -> int:
        return 2 if self.kind == "ramified" else 1

    @property
    def f(self) -> int:
        return 1 if self.kind == "ramified" else 2

    @property
    def d(self) -> int:
        return self.e - 1

    @property
    def n_psi_E(self) -> Fraction:
        return Fraction(-self.d, self.f)

    @property
    def kappa_E(self) -> int:
        return -(-self.e // (self.p - 1))

    @property
    def zeta(self) -> int:
        return smallest_nonresidue(self.p)

    @property
    def residue_units(self) -> int:
        """Order of the multiplicative group of the residue ring of O_E."""
        return self.p * self.p - 1 if self.kind == "unramified" else self.p - 1

    def mul_ints(self, a1: int, a2: int, b1: int, b2: int, m: int) -> tuple[int, int]:
        if self.kind == "split":
            return a1 * b1 % m, a2 * b2 % m
        c = self.zeta if self.kind == "unramified" else self.p
        return (a1 * b1 + c * a2 * b2) % m, (a1 * b2 + a2 * b1) % m

    def pow_ints(self, a1: int, a2: int, e: int, m: int) -> tuple[int, int]:
        r1, r2 = (1, 1) if self.kind == "split" else (1, 0)
        while e:
            if e & 1:
                r1, r2 = self.mul_ints(r1, r2, a1, a2, m)
            a1, a2 = self.mul_ints(a1, a2, a1, a2, m)
            e >>= 1
        return r1, r2

    def element(self, x1, x2=0, precision: int = 40) -> "AlgebraElement":
        if not isinstance(x1, PadicScalar):
            x1 = PadicScalar.from_rational(self.p, x1, precision)
        if not isinstance(x2, PadicScalar):
            x2 = PadicScalar.from_rational(self.p, x2, precision)
        return AlgebraElement(self, x1, x2)

    def from_F(self, x: PadicScalar) -> "AlgebraElement":
        if self.kind == "split":
            return AlgebraElement(self, x, x)
        return AlgebraElement(self, x, PadicScalar.zero(self.p))

    def omega(self, precision: int = 40) -> "AlgebraElement":
        if self.kind == "split":
            return self.element(self.p, self.p, precision)
        if self.kind == "unramified":
            return self.element(self.p, 0, precision)
        return self.element(0, 1, precision)


class AlgebraElement:
    """Element of E: components (split) or coordinates in {1, sqrt zeta} / {1, Omega}."""

    __slots__ = ("desc", "x1", "x2")

    def __init__(self, desc: AlgebraDescriptor, x1: PadicScalar, x2: PadicScalar):
        self.desc = desc
        self.x1 = x1
        self.x2 = x2

    def _coerce(self, other):
        if isinstance(other, AlgebraElement):
            return other
        if isinstance(other, (int, Fraction)):
            other = self.x1._coerce(other) if not self.x1.is_zero() else self.x2._coerce(other)
        if isinstance(other, PadicScalar):
            return self.desc.from_F(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return AlgebraElement(self.desc, self.x1 + o.x1, self.x2 + o.x2)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.desc, -self.x1, -self.x2)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a1, a2, b1, b2 = self.x1, self.x2, o.x1, o.x2
        kind = self.desc.kind
        if kind == "split":
            return AlgebraElement(self.desc, a1 * b1, a2 * b2)
        c = self.desc.zeta if kind == "unramified" else self.desc.p
        return AlgebraElement(self.desc, a1 * b1 + a2 * b2 * c, a1 * b2 + a2 * b1)

    __rmul__ = __mul__

    def conj(self) -> "AlgebraElement":
        if self.desc.kind == "split":
            return AlgebraElement(self.desc, self.x2, self.x1)
        return AlgebraElement(self.desc, self.x1, -self.x2)

    def trace(self) -> PadicScalar:
        if self.desc.kind == "split":
            return self.x1 + self.x2
        return self.x1 * 2

    def norm(self) -> PadicScalar:
        if self.desc.kind == "split":
            return self.x1 * self.x2
        c = self.desc.zeta if self.desc.kind == "unramified" else self.desc.p
        return self.x1 * self.x1 - self.x2 * self.x2 * c

    def inverse(self) -> "AlgebraElement":
        if self.desc.kind == "split":
            return AlgebraElement(self.desc, self.x1.inverse(), self.x2.inverse())
        nrm = self.norm()
        if nrm.is_zero():
            raise DivisionByZero("element is not invertible")
        inv = nrm.inverse()
        c = self.conj()
        return AlgebraElement(self.desc, c.x1 * inv, c.x2 * inv)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.desc.from_F(PadicScalar.from_int(self.desc.p, 1, 60))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def valuation_E(self):
        """Normalized valuation of E (a pair for the split algebra)."""
        if self.desc.kind == "split":
            return (self.x1.valuation, self.x2.valuation)
        if self.desc.kind == "unramified":
            return min(self.x1.valuation, self.x2.valuation)
        return min(2 * self.x1.valuation, 2 * self.x2.valuation + 1)

    def is_unit(self) -> bool:
        v = self.valuation_E()
        return v == (0, 0) if self.desc.kind == "split" else v == 0

    def unit_part(self) -> "AlgebraElement":
        """Divide out the uniformizer powers (componentwise when split)."""
        kind = self.desc.kind
        if kind == "split":
            if self.x1.is_zero() or self.x2.is_zero():
                raise DivisionByZero("zero divisor has no unit part")
            return AlgebraElement(self.desc, self.x1.unit_part(), self.x2.unit_part())
        k = self.valuation_E()
        if k == INF:
            raise DivisionByZero("unit part of zero")
        if kind == "unramified":
            return AlgebraElement(self.desc, self.x1.shift(-k), self.x2.shift(-k))
        # Omega^-k: even k divides by p^(k/2); odd k additionally by Omega = p/Omega
        h = k // 2
        y1, y2 = self.x1.shift(-h), self.x2.shift(-h)
        if k % 2:
            y1, y2 = y2, y1.shift(-1)
        return AlgebraElement(self.desc, y1, y2)

    def to_ints(self, k: int) -> tuple[int, int]:
        """Coordinates reduced modulo p^k (requires an integral element)."""
        return self.x1.residue(k), self.x2.residue(k)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.x1 == o.x1 and self.x2 == o.x2

    __hash__ = None

    def __repr__(self):
        return f"AlgebraElement({self.desc.kind}, {self.x1!r}, {self.x2!r})"


# logarithms


def _log_terms(p: int, vw: int, e_ram: int, N: int) -> int:
    """Number of series terms needed so that dropped terms vanish mod p^N."""
    i = 1
    while i * vw - e_ram * math.log(i, p) < e_ram * N + 1:
        i += 1
    return i


def log_principal_ints(desc_or_p, a1: int, a2: int, N: int) -> tuple[int, int]:
    """log of the principal unit with integer coordinates (a1, a2) modulo p^N.

    desc_or_p may be a prime (then F itself; a2 is ignored) or an
    AlgebraDescriptor.
    """
    if isinstance(desc_or_p, int):
        p = desc_or_p
        desc = None
    else:
        desc = desc_or_p
        p = desc.p
    if desc is None or desc.kind == "split":
        if desc is None:
            comps = [a1]
        else:
            comps = [a1, a2]
        out = []
        for a in comps:
            w = (a - 1) % p**N
            if w % p:
                raise OutOfDomain("not a principal unit")
            out.append(_log_series_F(p, w, N))
        return (out[0], 0) if desc is None else (out[0], out[1])
    w1, w2 = (a1 - 1) % p**N, a2 % p**N
    if desc.kind == "unramified":
        if w1 % p or w2 % p:
            raise OutOfDomain("not a principal unit")
        vw, e_ram = min(_vp0(w1, p, N), _vp0(w2, p, N)), 1
    else:
        if w1 % p:
            raise OutOfDomain("not a principal unit")
        vw, e_ram = min(2 * _vp0(w1, p, N), 2 * _vp0(w2, p, N) + 1), 2
    if vw >= e_ram * N:
        return 0, 0
    nterms = _log_terms(p, vw, e_ram, N)
    emax = max(vp(i, p) for i in range(1, nterms + 1))
    m = p ** (N + emax)
    out = p**N
    s1 = s2 = 0
    t1, t2 = 1, 0
    for i in range(1, nterms + 1):
        t1, t2 = desc.mul_ints(t1, t2, w1, w2, m)
        e = vp(i, p)
        inv = pow(i // p**e, -1, out)
        q1, q2 = t1 // p**e, t2 // p**e
        sign = 1 if i % 2 else -1
        s1 = (s1 + sign * q1 * inv) % out
        s2 = (s2 + sign * q2 * inv) % out
    return s1, s2


def _vp0(w: int, p: int, N: int) -> int:
    return N if w == 0 else vp(w, p)


def _log_series_F(p: int, w: int, N: int) -> int:
    if w == 0:
        return 0
    vw = vp(w, p)
    if vw >= N:
        return 0
    nterms = _log_terms(p, vw, 1, N)
    emax = max(vp(i, p) for i in range(1, nterms + 1))
    m = p ** (N + emax)
    out = p**N
    s = 0
    t = 1
    for i in range(1, nterms + 1):
        t = t * w % m
        e = vp(i, p)
        q = t // p**e
        term = q * pow(i // p**e, -1, out)
        s = (s + term) % out if i % 2 else (s - term) % out
    return s


def padic_log(x):
    """Logarithm of a principal unit of F or of E."""
    if isinstance(x, PadicScalar):
        if x.is_zero() or x.valuation != 0 or x.unit % x.p != 1:
            raise OutOfDomain("log needs a principal unit")
        N = x.precision
        L, _ = log_principal_ints(x.p, x.unit, 0, N)
        return PadicScalar.from_residue(x.p, L, N)
    if isinstance(x, AlgebraElement):
        desc = x.desc
        p = desc.p
        if not x.is_unit():
            raise OutOfDomain("log needs a principal unit")
        N = min(x.x1.abs_precision, x.x2.abs_precision)
        if N == INF:
            N = 40
        N = int(N)
        a1, a2 = x.to_ints(N)
        if desc.kind == "split":
            if a1 % p != 1 or a2 % p != 1:
                raise OutOfDomain("log needs a principal unit")
        elif a1 % p != 1 or (desc.kind == "unramified" and a2 % p):
            raise OutOfDomain("log needs a principal unit")
        L1, L2 = log_principal_ints(desc, a1, a2, N)
        return AlgebraElement(
            desc, PadicScalar.from_residue(p, L1, N), PadicScalar.from_residue(p, L2, N)
        )
    raise TypeError("padic_log expects a PadicScalar or AlgebraElement")


# quadratic roots


def _as_F_square(B) -> PadicScalar:
    if isinstance(B, PadicScalar):
        return B * B
    if isinstance(B, AlgebraElement):
        sq = B * B
        if B.desc.kind == "split":
            if not (sq.x1 == sq.x2):
                raise NoSuchRoot("B^2 does not lie in F")
            return sq.x1
        if not sq.x2.is_zero():
            raise NoSuchRoot("B^2 does not lie in F")
        return sq.x1
    raise TypeError("B must be a PadicScalar or AlgebraElement")


def small_root(t: PadicScalar, c: PadicScalar, max_iter: int = 400) -> PadicScalar:
    """The root of R^2 + tR - c = 0 with |R| < |t| (requires |c| < |t|^2)."""
    if c.is_zero():
        return c
    if t.is_zero() or not c.valuation > 2 * t.valuation:
        raise NoSuchRoot("no small root: need v(c) > 2 v(t)")
    x = c / t
    for _ in range(max_iter):
        nxt = c / (t + x)
        if nxt == x and nxt.precision == x.precision:
            return nxt
        x = nxt
    return x


def solve_quadratic_root(t: PadicScalar, B, branch) -> PadicScalar:
    """A root of R^2 + tR - B^2 = 0.

    branch is "small" (the root of smaller absolute value), "unit" /
    "large" (the other one), ("sqrt", r) for (-t + s)/2 where s is the
    square root of the discriminant with leading digit r, or an integer
    residue r selecting the root congruent to r mod p.
    """
    c = _as_F_square(B)
    if branch in ("small", "unit", "large"):
        r = small_root(t, c)
        root = r if branch == "small" else -t - r
    else:
        disc = t * t + c * 4
        if disc.is_zero():
            root = -t / 2
        else:
            if disc.valuation % 2 or legendre(disc.unit, t.p) != 1:
                raise NoSuchRoot("discriminant is not a square")
            if isinstance(branch, tuple) and branch[0] == "sqrt":
                s = sqrt_hensel(disc, branch[1])
                root = (-t + s) / 2
            else:
                r = int(branch) % t.p
                s = sqrt_hensel(disc)
                cands = [(-t + s) / 2, (-t - s) / 2]
                hits = [x for x in cands if x.valuation >= 0 and x.residue(1) == r]
                if not hits:
                    raise NoSuchRoot(f"no root congruent to {r}")
                if len(hits) == 2 and not (hits[0] == hits[1]):
                    raise BadBranch("both roots share that residue; use a sqrt branch")
                root = hits[0]
    check = root * root + t * root - c
    if not check.is_zero() and check.valuation < min(
        root.abs_precision, c.abs_precision, t.abs_precision + max(0, root.valuation)
    ) - 1:
        raise NoSuchRoot("root failed verification")
    return root


# power series


def eval_power_series(coeffs: Sequence[PadicScalar], z: PadicScalar) -> PadicScalar:
    """Sum c_k z^k over the given coefficients, certified as a convergent truncation."""
    if not coeffs:
        raise ValueError("empty series")
    p = z.p
    vals = []
    for k, c in enumerate(coeffs):
        if c.is_zero() or (z.is_zero() and k > 0):
            continue
        vals.append((k, c.valuation + (k * z.valuation if k else 0)))
    if len(vals) >= 2 and vals[-1][1] <= vals[0][1]:
        raise Divergent("term valuations do not grow")
    total = PadicScalar.zero(p)
    zk = None
    for k, c in enumerate(coeffs):
        zk = PadicScalar.from_int(p, 1, 60) if k == 0 else zk * z
        if c.is_zero():
            continue
        total = total + c * zk
    return total
