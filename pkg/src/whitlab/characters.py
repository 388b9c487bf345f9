"""Additive character psi, multiplicative characters chi of Q_p^x, characters xi of E^x.

Values are returned as exact angles theta in Q/Z standing for exp(2 pi i theta).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import ConductorTooSmall, NotAUnit, PrecisionExhausted
from .padic_core import (
    INF,
    AlgebraDescriptor,
    AlgebraElement,
    PadicScalar,
    log_principal_ints,
    vp,
)


@dataclass(frozen=True)
class AngleQZ:
    """An element of Q/Z, kept reduced in [0, 1)."""

    value: Fraction = Fraction(0)

    def __post_init__(self):
        v = Fraction(self.value)
        object.__setattr__(self, "value", v - math.floor(v))

    @property
    def numerator(self) -> int:
        return self.value.numerator

    @property
    def denominator(self) -> int:
        return self.value.denominator

    def __add__(self, other):
        if isinstance(other, AngleQZ):
            return AngleQZ(self.value + other.value)
        if isinstance(other, (int, Fraction)):
            return AngleQZ(self.value + other)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return AngleQZ(-self.value)

    def __sub__(self, other):
        if isinstance(other, AngleQZ):
            return AngleQZ(self.value - other.value)
        return AngleQZ(self.value - Fraction(other))

    def __mul__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        return AngleQZ(self.value * k)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.value == 0

    def to_complex(self) -> complex:
        return cmath.exp(2j * math.pi * float(self.value))

    def __repr__(self):
        return f"AngleQZ({self.value})"


def psi_eval(x, p: int | None = None) -> AngleQZ:
    """psi(x) = exp(2 pi i {x}_p), trivial on Z_p.

    Rationals need p unless the denominator is already a power of a prime.
    """
    if isinstance(x, PadicScalar):
        return AngleQZ(x.frac())
    x = Fraction(x)
    if x == 0:
        return AngleQZ()
    if p is None:
        p = _prime_of_denominator(x.denominator)
    return AngleQZ(frac_p(x, p))


def _prime_of_denominator(d: int) -> int:
    for q in range(2, d + 1):
        if d % q == 0:
            return q
    return 2


def frac_p(x: Fraction, p: int) -> Fraction:
    """p-adic fractional part of a rational."""
    den = x.denominator
    k = 0
    while den % p == 0:
        den //= p
        k += 1
    m = p**k
    if m == 1:
        return Fraction(0)
    return Fraction(x.numerator * pow(den, -1, m) % m, m)


def psi_scalar_angle(p: int, x: PadicScalar) -> AngleQZ:
    return AngleQZ(x.frac())


# multiplicative characters


@lru_cache(maxsize=None)
def primitive_root(p: int, a: int = 2) -> int:
    """Smallest generator of (Z/p^a)^x (the same g works for every a >= 2)."""
    phi = p - 1
    factors = [q for q in range(2, phi + 1) if phi % q == 0 and all(q % r for r in range(2, q))]
    for g in range(2, p * p):
        if g % p == 0:
            continue
        if all(pow(g, phi // q, p) != 1 for q in factors):
            if a == 1 or pow(g, p - 1, p * p) != 1:
                return g
    raise ValueError("no primitive root")


@lru_cache(maxsize=64)
def discrete_log_table(p: int, a: int) -> tuple:
    """ind[r] = discrete log of r modulo p^a to the base primitive_root(p); -1 off units."""
    m = p**a
    g = primitive_root(p, max(a, 2)) % m
    ind = [-1] * m
    x = 1
    for j in range((p - 1) * p ** (a - 1)):
        ind[x] = j
        x = x * g % m
    return tuple(ind)


@dataclass(frozen=True)
class MultiplicativeCharacter:
    """chi(g^j) = k j / phi(p^a) on units, chi(p) = value_at_p."""

    p: int
    a: int
    k: int
    value_at_p: Fraction = Fraction(0)

    def __post_init__(self):
        if self.a < 1:
            raise ConductorTooSmall("conductor exponent must be positive")
        phi = (self.p - 1) * self.p ** (self.a - 1)
        object.__setattr__(self, "k", self.k % phi)
        object.__setattr__(self, "value_at_p", AngleQZ(self.value_at_p).value)
        if self.a == 1:
            if self.k == 0:
                raise ConductorTooSmall("trivial on units")
        elif self.k % self.p == 0:
            raise ValueError("character is trivial on 1 + p^(a-1); conductor not exact")

    @property
    def phi(self) -> int:
        return (self.p - 1) * self.p ** (self.a - 1)

    @property
    def generator(self) -> int:
        return primitive_root(self.p, max(self.a, 2))

    def angle_of_residue(self, r: int) -> AngleQZ:
        ind = discrete_log_table(self.p, self.a)[r % self.p**self.a]
        if ind < 0:
            raise NotAUnit(f"{r} is not a unit mod p")
        return AngleQZ(Fraction(self.k * ind, self.phi))

    def inverse(self) -> "MultiplicativeCharacter":
        return MultiplicativeCharacter(self.p, self.a, -self.k, -self.value_at_p)

    def to_json(self) -> dict:
        return {"p": self.p, "a": self.a, "k": self.k, "value_at_p": str(self.value_at_p)}


def chi_eval(chi: MultiplicativeCharacter, u) -> AngleQZ:
    if isinstance(u, int):
        if u == 0:
            raise NotAUnit("chi(0)")
        v = vp(u, chi.p)
        return chi.angle_of_residue(u // chi.p**v) + AngleQZ(v * chi.value_at_p)
    if u.is_zero():
        raise NotAUnit("chi(0)")
    if u.precision < chi.a:
        raise PrecisionExhausted("unit known to fewer digits than the conductor")
    return chi.angle_of_residue(u.unit) + AngleQZ(u.valuation * chi.value_at_p)


def derive_b_chi(chi: MultiplicativeCharacter) -> PadicScalar:
    """The unit b with chi(1+zp) = psi(b p^-a log(1+zp)), unique mod p^(a-1)."""
    p, a = chi.p, chi.a
    if a < 1:
        raise ConductorTooSmall("a(chi) < kappa_F")
    if a == 1:
        return PadicScalar.from_int(p, 1, 1)
    m = p ** (a - 1)
    theta = chi.angle_of_residue(1 + p).value
    num = theta * m
    assert num.denominator == 1
    L, _ = log_principal_ints(p, 1 + p, 0, a)
    ell = L // p
    b = int(num) * pow(ell, -1, m) % m
    for z in range(m):
        u = 1 + z * p
        Lz, _ = log_principal_ints(p, u, 0, a)
        lhs = chi.angle_of_residue(u)
        rhs = AngleQZ(Fraction(b * Lz, p**a))
        if lhs != rhs:
            raise AssertionError("b_chi identity failed")
    return PadicScalar.from_int(p, b, a - 1)


# characters of E^x


@dataclass(frozen=True)
class XiCharacterData:
    """xi on E^x from the unit b0 and the conductor a(xi).

    On principal units xi is given by the logarithm formula; on all units
    it is extended as xi(z) = xi(z^Q)^(1/Q) with Q the order of the residue
    unit group, which makes xi trivial on roots of unity (the base point).
    """

    descriptor: AlgebraDescriptor
    b0: int
    a_xi: int
    value_at_p: Fraction = Fraction(0)
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        p = self.descriptor.p
        if self.b0 % p == 0:
            raise NotAUnit("b0 must be a unit")
        if self.a_xi < 1:
            raise ConductorTooSmall("a(xi) must be positive")
        if self.descriptor.kind == "ramified" and self.a_xi % 2:
            from .errors import BadConductor

            raise BadConductor("a(xi) must be even for ramified E")

    @property
    def p(self) -> int:
        return self.descriptor.p

    @property
    def kind(self) -> str:
        return self.descriptor.kind

    def b_element(self, precision: int = 40) -> AlgebraElement:
        D = self.descriptor
        if D.kind == "split":
            return D.element(self.b0, -self.b0, precision)
        if D.kind == "unramified":
            return D.element(0, self.b0, precision)
        return D.element(self.b0, 0, precision)

    def b_squared(self) -> int:
        """b^2 as an element of F (an integer)."""
        if self.kind == "unramified":
            return self.b0 * self.b0 * self.descriptor.zeta
        return self.b0 * self.b0

    @property
    def conductor(self) -> int:
        """Conductor exponent n of the attached representation."""
        D = self.descriptor
        if D.kind == "split":
            return 2 * self.a_xi
        return D.f * self.a_xi + D.d

    def angle_principal(self, L1: int, L2: int) -> Fraction:
        """psi(Tr(b Omega^-(a - n_psi) L)) for L = L1 + L2*basis (or (L1, L2) if split)."""
        p, a = self.p, self.a_xi
        if self.kind == "split":
            return Fraction(self.b0 * (L1 - L2), p**a)
        if self.kind == "unramified":
            return Fraction(2 * self.b0 * self.descriptor.zeta * L2, p**a)
        return Fraction(2 * self.b0 * L2, p ** (a // 2))

    def digits(self) -> int:
        return self.a_xi if self.kind != "ramified" else self.a_xi // 2 + 1

    def angle_unit_ints(self, a1: int, a2: int) -> AngleQZ:
        """xi of the unit with integer coordinates (a1, a2), read modulo p^digits."""
        D = self.descriptor
        p = self.p
        N = self.digits()
        m = p**N
        key = (a1 % m, a2 % m)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        Q = D.residue_units
        w1, w2 = D.pow_ints(key[0], key[1], Q, m)
        L1, L2 = log_principal_ints(D, w1, w2, N)
        qinv = pow(Q, -1, m)
        ang = AngleQZ(self.angle_principal(L1 * qinv % m, L2 * qinv % m))
        if len(self._cache) < 1_000_000:
            self._cache[key] = ang
        return ang

    def to_json(self) -> dict:
        return {"algebra_kind": self.kind, "b0": self.b0, "a_xi": self.a_xi}


def xi_eval(xi: XiCharacterData, z: AlgebraElement) -> AngleQZ:
    """xi(z) for z in E^x; uniformizer components contribute value_at_p (split) or 1."""
    p = xi.p
    N = xi.digits()
    if xi.kind == "split":
        if z.x1.is_zero() or z.x2.is_zero():
            raise NotAUnit("zero divisor")
        shift = (z.x1.valuation - z.x2.valuation) * xi.value_at_p
        u1, u2 = z.x1.unit_part(), z.x2.unit_part()
        return xi.angle_unit_ints(u1.residue(N), u2.residue(N)) + AngleQZ(shift)
    if z.x1.is_zero() and z.x2.is_zero():
        raise NotAUnit("xi(0)")
    u = z.unit_part()
    return xi.angle_unit_ints(u.x1.residue(N), u.x2.residue(N))


def teichmuller(p: int, r: int, N: int) -> int:
    """The (p-1)-th root of unity congruent to r mod p, modulo p^N."""
    m = p**N
    x = r % m
    for _ in range(N + 1):
        x = pow(x, p, m)
    return x
