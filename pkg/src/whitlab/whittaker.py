"""The Whittaker newvector on the matrices a(y) kappa, its balanced variant and support tables.

Every unimodular constant that the closed formulas leave unspecified is set to 1.
Values carry their magnitude as an explicit power q^(r/12).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .characters import (
    AngleQZ,
    MultiplicativeCharacter,
    XiCharacterData,
    derive_b_chi,
    xi_eval,
)
from .errors import (
    BadConductor,
    CentralCharacterNotTrivial,
    IncompatibleSelector,
    UnsupportedCase,
)
from .exp_sums import ExactExponentialSum, QMonomial, airy_bound, integerize, poly_histogram
from .padic_core import (
    INF,
    AlgebraDescriptor,
    AlgebraElement,
    PadicScalar,
    legendre,
    small_root,
    sqrt_hensel,
)


# data types


@dataclass(frozen=True)
class CosetRep:
    family: str  # "Lower" or "Weyl"
    gamma: float  # int, or math.inf

    def __post_init__(self):
        if self.family not in ("Lower", "Weyl"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.gamma != INF and (int(self.gamma) != self.gamma or self.gamma < 0):
            raise ValueError("gamma must be a non-negative integer or inf")
        if self.family == "Weyl" and self.gamma < 1:
            raise ValueError("Weyl representatives need gamma >= 1")
        if self.gamma != INF:
            object.__setattr__(self, "gamma", int(self.gamma))

    def matrix(self, p: int) -> tuple:
        g = 0 if self.gamma == INF else p**self.gamma
        if self.family == "Lower":
            return (1, 0, g, 1)
        return (0, 1, 1, g)

    def __str__(self):
        g = "inf" if self.gamma == INF else str(self.gamma)
        return f"{self.family}({g})"


def Lower(gamma) -> CosetRep:
    return CosetRep("Lower", gamma)


def Weyl(gamma) -> CosetRep:
    return CosetRep("Weyl", gamma)


@dataclass(frozen=True)
class RepresentationSpec:
    """A representation of PGL2(Q_p) given by (E/F, xi), with derived n, n1, n2, d."""

    p: int
    n: int
    kind: str
    xi: XiCharacterData
    chi: MultiplicativeCharacter | None = None
    airy_U_variant: str = "trace"
    airy_phase_variant: str = "derived"

    @property
    def n1(self) -> int:
        return self.n // 2

    @property
    def n2(self) -> int:
        return (self.n + 1) // 2

    @property
    def d(self) -> int:
        return 1 if self.kind == "ramified" else 0

    @property
    def b0(self) -> int:
        return self.xi.b0

    @property
    def b_squared(self) -> int:
        return self.xi.b_squared()

    @property
    def v3(self) -> int:
        return 1 if self.p == 3 else 0

    @property
    def angle_level(self) -> int:
        return self.n + 2

    def work_precision(self, kappa: CosetRep | None = None) -> int:
        g = self.n if kappa is None or kappa.gamma == INF else min(kappa.gamma, self.n + 2)
        return self.n + g + 6

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "kind": self.kind, "xi": self.xi.to_json()}


def rep_derive(kind: str, p: int, *, chi: MultiplicativeCharacter | None = None, b0: int | None = None,
               a_xi: int | None = None, value_at_p=0, **options) -> RepresentationSpec:
    """Build a RepresentationSpec from a principal-series chi or dihedral data (b0, a(xi))."""
    if kind in ("split", "principal"):
        if chi is None:
            if b0 is None or a_xi is None:
                raise ValueError("principal series needs chi or (b0, a_xi)")
            D = AlgebraDescriptor("split", p)
            xi = XiCharacterData(D, b0 % p**a_xi, a_xi, Fraction(value_at_p))
        else:
            bb = derive_b_chi(chi)
            D = AlgebraDescriptor("split", p)
            b = bb.unit if bb.precision else 1
            xi = XiCharacterData(D, b, chi.a, chi.value_at_p)
        return RepresentationSpec(p, 2 * xi.a_xi, "split", xi, chi, **options)
    if kind not in ("unramified", "ramified"):
        raise ValueError(f"unknown kind {kind!r}")
    if b0 is None or a_xi is None:
        raise ValueError("dihedral representations need b0 and a_xi")
    if Fraction(value_at_p) % 1:
        raise CentralCharacterNotTrivial("xi must be trivial on p for a trivial central character")
    D = AlgebraDescriptor(kind, p)
    if kind == "ramified" and a_xi % 2:
        raise BadConductor("a(xi) must be even for ramified E")
    xi = XiCharacterData(D, b0, a_xi)
    n = D.f * a_xi + D.d
    return RepresentationSpec(p, n, kind, xi, None, **options)


@dataclass
class WhittakerValue:
    """scale * q^(q12/12) * sum_j terms[j] exp(2 pi i j / modulus)."""

    case: str
    support_flag: bool
    terms: dict = field(default_factory=dict)
    modulus: int = 1
    scale: Fraction = Fraction(1)
    q12: int = 0
    q: int = 2
    branches: dict = field(default_factory=dict)

    def branch(self, sign: str) -> "WhittakerValue":
        """The single x_+ or x_- term of a two-term value."""
        if not self.support_flag:
            return self
        if sign not in self.branches:
            raise KeyError(f"no branch {sign!r} in case {self.case}")
        return WhittakerValue(self.case, True, {self.branches[sign]: 1}, self.modulus, self.scale, self.q12, self.q)

    @property
    def value(self) -> ExactExponentialSum:
        if not self.support_flag or not self.terms:
            return ExactExponentialSum.zero()
        s = ExactExponentialSum(self.modulus, self.terms, q=self.q) * self.scale
        return s.scale_q(self.q, self.q12) if self.q12 else s

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def magnitude(self) -> float:
        return abs(self.value.to_complex())

    def to_json(self) -> dict:
        v = self.value
        return {
            "case": self.case,
            "support_flag": self.support_flag,
            "magnitude_q12": self.q12,
            "scale": str(self.scale),
            "value": v.to_json(),
            "constants_policy": "unimodular constants = 1",
        }


def _zero(case: str, p: int) -> WhittakerValue:
    return WhittakerValue(case, False, q=p)


def _single(case: str, spec: RepresentationSpec, angle: Fraction, scale=Fraction(1), q12: int = 0) -> WhittakerValue:
    m = spec.p**spec.angle_level
    return WhittakerValue(case, True, {_exp(angle, m): 1}, m, Fraction(scale), q12, spec.p)


def _exp(angle, m: int) -> int:
    a = angle.value if isinstance(angle, AngleQZ) else Fraction(angle)
    x = a * m
    if x.denominator != 1:
        raise ValueError("angle finer than the working modulus")
    return int(x) % m


# helpers


def _scalar(spec: RepresentationSpec, y, prec: int) -> PadicScalar:
    if isinstance(y, PadicScalar):
        return y
    return PadicScalar.from_rational(spec.p, Fraction(y), prec)


def _F(spec: RepresentationSpec, x, prec: int) -> PadicScalar:
    return PadicScalar.from_rational(spec.p, Fraction(x), prec)


def _xi(spec: RepresentationSpec, c1: PadicScalar, c2: PadicScalar) -> AngleQZ:
    return xi_eval(spec.xi, AlgebraElement(spec.xi.descriptor, c1, c2))


def _elem_x_plus_b(spec: RepresentationSpec, x: PadicScalar, bscale: PadicScalar, omega_d: bool) -> tuple:
    """Coordinates of Omega^d x + bscale * b (omega_d) or x + Omega^d bscale * b."""
    b0 = bscale * spec.b0
    if spec.kind == "split":
        return x + b0, x - b0
    if spec.kind == "unramified":
        return x, b0
    # ramified, basis {1, Omega}
    if omega_d:
        return b0, x
    return x, b0


def delta_of(spec: RepresentationSpec, y) -> PadicScalar:
    """Delta(y) = 1 + 4 b^2 y^-2."""
    if spec.kind == "ramified":
        raise UnsupportedCase("Delta is only defined for split or unramified E")
    y = _scalar(spec, y, spec.work_precision())
    return 1 + (y * y).inverse() * (4 * spec.b_squared)


def delta_is_square(spec: RepresentationSpec, D: PadicScalar) -> bool:
    """Square test for Delta; valuations >= n/2 lie below the resolution of W and count as square."""
    if D.is_zero() or D.valuation >= (spec.n + 1) // 2:
        return True
    return D.valuation % 2 == 0 and legendre(D.unit, spec.p) == 1


def _sqrt_branch(D: PadicScalar) -> PadicScalar:
    """Square root whose leading digit lies in [1, (p-1)/2]."""
    p = D.p
    u0 = D.unit % p
    r = min(x for x in range(1, p) if x * x % p == u0)
    if r > (p - 1) // 2:
        r = p - r
    return sqrt_hensel(D, r)


# the six cases


def whittaker_eval(spec: RepresentationSpec, y, kappa: CosetRep) -> WhittakerValue:
    """W_pi(a(y) kappa)."""
    p, n = spec.p, spec.n
    N = spec.work_precision(kappa)
    y = _scalar(spec, y, N)
    if y.is_zero():
        raise ValueError("y must be nonzero")
    s = y.valuation
    if kappa.family == "Weyl":
        if s != -n:
            return _zero("case6", p)
        return _single("case6", spec, Fraction(0))
    g = kappa.gamma
    if g == 0:
        if s != -n:
            return _zero("case1", p)
        return _single("case1", spec, y.frac())
    if g >= n:
        if s != 0:
            return _zero("case5", p)
        return _single("case5", spec, Fraction(0))
    if 2 * g < n:
        return _case2(spec, y, g, N)
    if 2 * g == n:
        return _case3(spec, y, N)
    return _case4(spec, y, g, N)


def _case2(spec: RepresentationSpec, y: PadicScalar, g: int, N: int) -> WhittakerValue:
    p, n, n1, n2 = spec.p, spec.n, spec.n1, spec.n2
    if y.valuation != 2 * g - n:
        return _zero("case2", p)
    sign = 1 if n % 2 == 0 else -1
    t = y.shift(n1 - g) * sign
    c = _F(spec, Fraction(spec.b_squared) * Fraction(p) ** (n1 - n2), N)
    x0 = small_root(t, c)
    c1, c2 = _elem_x_plus_b(spec, x0, _F(spec, 1, N), omega_d=True)
    ang = -_xi(spec, c1, c2).value + y.shift(-g).frac() + x0.shift(-n1).frac()
    return _single("case2", spec, ang)


def _case4(spec: RepresentationSpec, y: PadicScalar, g: int, N: int) -> WhittakerValue:
    p, n, n2 = spec.p, spec.n, spec.n2
    if y.valuation != 0:
        return _zero("case4", p)
    c = _F(spec, Fraction(spec.b_squared) * Fraction(p) ** (2 * g - n), N)
    r = small_root(y, c)
    x0 = -y - r
    c1, c2 = _elem_x_plus_b(spec, x0, _F(spec, Fraction(p) ** (g - n2), N), omega_d=False)
    ang = -_xi(spec, c1, c2).value + (-r).shift(-g).frac()
    return _single("case4", spec, ang)


def _xi_x_plus_b(spec: RepresentationSpec, x: PadicScalar, N: int) -> Fraction:
    c1, c2 = _elem_x_plus_b(spec, x, _F(spec, 1, N), omega_d=False)
    return _xi(spec, c1, c2).value


def _two_terms(spec, y, sq, half, m, N):
    """Terms xi^-1(x + b) psi((x + y) p^-half) for x = (-y +- sq)/2, labelled "+" and "-"."""
    terms, br = {}, {}
    for sign, x in (("+", (-y + sq) / 2), ("-", (-y - sq) / 2)):
        a = -_xi_x_plus_b(spec, x, N) + (x + y).shift(-half).frac()
        j = _exp(a, m)
        terms[j] = terms.get(j, 0) + 1
        br[sign] = j
    return terms, br


def _case3(spec: RepresentationSpec, y: PadicScalar, N: int) -> WhittakerValue:
    p, n = spec.p, spec.n
    half = n // 2
    if spec.kind == "ramified":
        raise UnsupportedCase("gamma = n/2 needs n even")
    s = y.valuation
    m = p**spec.angle_level
    if spec.kind == "unramified" and s != 0:
        return _zero("case3", p)
    if s < 0:
        return _zero("case3", p)
    if s > 0:
        # split, 0 < |y| < 1
        if s >= half:
            chi = _xi(spec, y, _F(spec, 1, N)).value
            terms = {}
            for a in (chi, -chi):
                j = _exp(a, m)
                terms[j] = terms.get(j, 0) + 1
            return WhittakerValue("case3.1", True, terms, m, Fraction(1), -6 * s, p)
        disc = y * y + 4 * spec.b_squared
        sq = sqrt_hensel(disc, (-2 * spec.b0) % p)
        terms, br = _two_terms(spec, y, sq, half, m, N)
        return WhittakerValue("case3.2", True, terms, m, Fraction(1), -6 * s, p, br)
    D = delta_of(spec, y)
    if not delta_is_square(spec, D):
        return _zero("case3.3" if D.valuation < n // 4 else "case3.4", p)
    r = n // 4
    if not D.is_zero() and D.valuation < r:
        u = D.valuation
        sq = _sqrt_branch(D) * y
        terms, br = _two_terms(spec, y, sq, half, m, N)
        return WhittakerValue("case3.3", True, terms, m, Fraction(1), 3 * u, p, br)
    return _case3_airy(spec, y, N)


def airy_parameters(spec: RepresentationSpec, y: PadicScalar, variant: str | None = None) -> tuple:
    """(U, W) of the Airy regime, as PadicScalars."""
    p, n = spec.p, spec.n
    half = n // 2
    r, rho = divmod(half, 2)
    delta = r // 2
    N = max(y.precision, spec.work_precision())
    variant = variant or spec.airy_U_variant
    b2 = spec.b_squared
    y2 = y * y
    num_w = y2 + 4 * b2
    den = y2 - 4 * b2
    W = (num_w / den).shift(-r - delta)
    e = r + 2 * rho - 3 * delta
    if variant == "trace":
        U = (y2 * 3 + 4 * b2) * b2 * Fraction(32, 3) / (den * den * den)
    elif variant == "stated384":
        U = (y2 * 3 + 4 * b2) * b2 / (den * 384)
    elif variant == "proof348":
        U = (y2 * 3 + 4 * b2) * b2 / (den * 348)
    elif variant == "trace_direct":
        D = spec.xi.descriptor
        A = D.element(-y / 2, 0) if spec.kind != "split" else D.element(-y / 2, -y / 2)
        A = A + spec.xi.b_element(N)
        bb = spec.xi.b_element(N)
        U = -((bb / (A * A * A)).trace()) / 3
    else:
        raise ValueError(f"unknown U variant {variant!r}")
    return U.shift(e), W


def validate_airy_variant(spec: RepresentationSpec, y: PadicScalar, variant: str) -> bool:
    """Check v(U) = r + 2 rho - 3 delta - v(3) and v(W) = v(Delta) - r - delta."""
    half = spec.n // 2
    r, rho = divmod(half, 2)
    delta = r // 2
    U, W = airy_parameters(spec, y, variant)
    D = delta_of(spec, y)
    okU = U.valuation == r + 2 * rho - 3 * delta - spec.v3
    okW = W.is_zero() if D.is_zero() else W.valuation == D.valuation - r - delta
    return okU and okW


def _case3_airy(spec: RepresentationSpec, y: PadicScalar, N: int) -> WhittakerValue:
    p, n = spec.p, spec.n
    half = n // 2
    m = p**spec.angle_level
    U, W = airy_parameters(spec, y)
    x = -y / 2
    xi_part = -_xi_x_plus_b(spec, x, N)
    b2 = spec.b_squared
    if spec.airy_phase_variant == "derived":
        ph = (y / 4 - y.inverse() * b2).shift(-half).frac()
    else:
        ph = (-y * Fraction(3, 2) - y.inverse() * b2).shift(-half).frac()
    # Ai(U, W) = q^(-v(U)/3) * integral over O of psi(U t^3 + W t)
    P, K = integerize(p, [0, W.to_fraction() if not W.is_zero() else 0, 0, U.to_fraction()])
    counts, mod, den = poly_histogram(p, P, K)
    base = _exp(xi_part + ph, m)
    f = m // mod
    terms = {}
    for j, c in counts.items():
        jj = (base + j * f) % m
        terms[jj] = terms.get(jj, 0) + c
    q12 = -4 * spec.v3 + n - 4 * U.valuation
    return WhittakerValue("case3.4", True, terms, m, Fraction(2, den), q12, p)


def airy_factor(spec: RepresentationSpec, y) -> tuple:
    """(Ai(U, W) as an exact sum, its magnitude bound) for a unit y in the Airy regime."""
    from .exp_sums import airy_eval

    y = _scalar(spec, y, spec.work_precision())
    U, W = airy_parameters(spec, y)
    if W.is_zero():
        W = PadicScalar.zero(spec.p)
    val = airy_eval(U, W)
    Wb = W if not W.is_zero() else PadicScalar.from_int(spec.p, spec.p ** (spec.n + 4), 4)
    return val, airy_bound(U, Wb)


# balanced newvector


def balanced_eval(spec: RepresentationSpec, t, kappa: CosetRep) -> WhittakerValue:
    """W_b(a(t) kappa) through the balancing relations."""
    p, n2 = spec.p, spec.n2
    N = spec.work_precision(kappa) + n2
    t = _scalar(spec, t, N)
    g = kappa.gamma
    if kappa.family == "Lower":
        return whittaker_eval(spec, t, Lower(g + n2 if g != INF else INF))
    if g > n2:
        return whittaker_eval(spec, t.shift(-2 * n2), Weyl(g - n2 if g != INF else INF))
    inner = whittaker_eval(spec, (-t).shift(-2 * g), Lower(n2 - g))
    if not inner.support_flag:
        return inner
    pre = t.shift(-n2 - g).frac()
    return _shift_terms(inner, pre)


def _shift_terms(w: WhittakerValue, angle: Fraction) -> WhittakerValue:
    j0 = _exp(angle, w.modulus)
    terms = {(j + j0) % w.modulus: c for j, c in w.terms.items()}
    br = {k: (j + j0) % w.modulus for k, j in w.branches.items()}
    return WhittakerValue(w.case, w.support_flag, terms, w.modulus, w.scale, w.q12, w.q, br)


def decompose_matrix(p: int, h: tuple) -> tuple:
    """Write h = z n(x) a(y) kappa k with k in K_1(n) (up to centre); returns (x, y, kappa)."""
    a, b, c, d = h
    vc = c.valuation
    vd = d.valuation
    if d.is_zero() or (not c.is_zero() and vc < vd):
        # Weyl cell
        if d.is_zero():
            return a / c, b / c, Weyl(INF), None
        gamma = vd - vc
        x = a / c
        z = d.shift(-gamma)  # z = c/u with u = c p^gamma / d
        u = c / z
        y = b / z - x.shift(gamma)
        return x, y, Weyl(gamma), u
    if c.is_zero():
        return b / d, a / d, Lower(INF), None
    gamma = vc - vd
    x = b / d
    u = (c / d).shift(-gamma)
    y = a / (d * u) - x.shift(gamma)
    return x, y, Lower(gamma), u


def balanced_direct(spec: RepresentationSpec, t, kappa: CosetRep) -> WhittakerValue:
    """W_b(a(t) kappa) = W_p(a(p^-n2) a(t) kappa a(p^n2)) by decomposing the conjugated matrix."""
    p, n2 = spec.p, spec.n2
    N = spec.work_precision(kappa) + 2 * n2 + 4
    t = _scalar(spec, t, N)
    one = _F(spec, 1, N)
    zero = PadicScalar.zero(p)
    e, f, g_, h = kappa.matrix(p)
    kap = [_F(spec, v, N) if v else zero for v in (e, f, g_, h)]
    # a(p^-n2) a(t) kappa a(p^n2)
    a = (t * kap[0])
    b = (t * kap[1]).shift(-n2)
    c = kap[2].shift(n2)
    d = kap[3]
    x, y, kap2, _u = decompose_matrix(p, (a, b, c, d))
    inner = whittaker_eval(spec, y, kap2)
    if not inner.support_flag:
        return inner
    return _shift_terms(inner, x.frac() if not x.is_zero() else Fraction(0))


# dyadic selectors


@dataclass(frozen=True)
class DyadicSelector:
    kind: str  # "S", "SInfinity", "U", "UInfinity"
    value: int | None = None


def _selector_check(spec: RepresentationSpec, kappa: CosetRep, sel: DyadicSelector):
    if kappa.family != "Lower" or kappa.gamma != 0:
        raise IncompatibleSelector("dyadic selectors refine only the Lower(0) cell")
    if sel.kind == "S":
        if sel.value is None or not 0 <= sel.value < spec.n:
            raise IncompatibleSelector("S(s) needs 0 <= s < n")
    elif sel.kind in ("U", "UInfinity"):
        if spec.n % 2 or spec.kind == "ramified":
            raise IncompatibleSelector("U-selectors need n even and E split or unramified")
        if sel.kind == "U" and (sel.value is None or not 0 <= sel.value < spec.n2):
            raise IncompatibleSelector("U(u) needs 0 <= u < n2")
    elif sel.kind != "SInfinity":
        raise IncompatibleSelector(f"unknown selector {sel.kind!r}")


def selector_indicator(spec: RepresentationSpec, sel: DyadicSelector, t: PadicScalar) -> bool:
    v = t.valuation
    if sel.kind == "S":
        return v == sel.value
    if sel.kind == "SInfinity":
        return v >= spec.n
    if v != 0:
        return False
    D = delta_of(spec, t)
    u = INF if D.is_zero() else D.valuation
    if sel.kind == "U":
        return u == sel.value
    return u >= spec.n2


def dyadic_component(spec: RepresentationSpec, kappa: CosetRep, selector: DyadicSelector, t) -> WhittakerValue:
    _selector_check(spec, kappa, selector)
    t = _scalar(spec, t, spec.work_precision(kappa) + spec.n2)
    if not selector_indicator(spec, selector, t):
        return WhittakerValue("selector", False, q=spec.p)
    return balanced_eval(spec, t, kappa)


# support tables


@dataclass
class ProfileRow:
    support: str
    type_tag: str
    cap: str
    in_support: Callable[[PadicScalar], bool]
    cap_value: Callable[[PadicScalar], float]


@dataclass
class SupportProfile:
    kappa: CosetRep
    balanced: bool
    rows: list

    def row_for(self, y: PadicScalar):
        for row in self.rows:
            if row.in_support(y):
                return row
        return None

    def in_support(self, y: PadicScalar) -> bool:
        return self.row_for(y) is not None

    def cap(self, y: PadicScalar) -> float:
        row = self.row_for(y)
        return 0.0 if row is None else row.cap_value(y)

    def to_json(self) -> list:
        return [{"support": r.support, "type": r.type_tag, "cap": r.cap} for r in self.rows]


def _rows_unbalanced(spec: RepresentationSpec, kappa: CosetRep) -> list:
    p, n = spec.p, spec.n
    q = float(p)
    one = lambda y: 1.0  # noqa: E731
    if kappa.family == "Weyl":
        return [ProfileRow(f"|y| = q^{n}", "Const", "1", lambda y: y.valuation == -n, one)]
    g = kappa.gamma
    if 2 * g < n:
        return [ProfileRow(f"|y| = q^{n - 2 * g}", "Osc", "1", lambda y: y.valuation == 2 * g - n, one)]
    if 2 * g > n:
        tag = "Osc" if g < n else "Const"
        return [ProfileRow("|y| = 1", tag, "1", lambda y: y.valuation == 0, one)]
    if spec.kind == "ramified":
        return []
    r = n // 4
    rows = []
    if spec.kind == "split":
        rows.append(ProfileRow("0 < |y| < 1", "Osc", "2|y|^(1/2)", lambda y: y.valuation > 0,
                               lambda y: 2 * q ** (-y.valuation / 2)))

    def dsq(y, lo, hi):
        if y.valuation != 0:
            return False
        D = delta_of(spec, y)
        u = INF if D.is_zero() else D.valuation
        return lo <= u and (u < hi or hi == INF) and delta_is_square(spec, D)

    rows.append(ProfileRow(f"|y| = 1, Delta square, |Delta| > q^-{r}", "Osc", "2|Delta|^(-1/4)",
                           lambda y: dsq(y, 0, r),
                           lambda y: 2 * q ** (delta_of(spec, y).valuation / 4)))
    cap = 2 * q ** (2 + spec.v3) * q ** (n / 12)
    rows.append(ProfileRow(f"|y| = 1, Delta square, |Delta| <= q^-{r}", "Airy", "2q^(2+v(3)) q^(n/12)",
                           lambda y: dsq(y, r, INF), lambda y: cap))
    return rows


def _balanced_map(spec: RepresentationSpec, kappa: CosetRep):
    """(unbalanced kappa, t -> y) realising the balancing relations."""
    n2 = spec.n2
    g = kappa.gamma
    if kappa.family == "Lower":
        return Lower(g + n2 if g != INF else INF), lambda t: t
    if g > n2:
        return Weyl(g - n2 if g != INF else INF), lambda t: t.shift(-2 * n2)
    return Lower(n2 - g), lambda t: (-t).shift(-2 * g)


def support_profile(spec: RepresentationSpec, kappa: CosetRep, selector: DyadicSelector | None = None,
                    balanced: bool = False) -> SupportProfile:
    """Table row(s) for kappa: support predicate, type tag and magnitude cap."""
    if not balanced:
        if selector is not None:
            raise IncompatibleSelector("selectors apply to the balanced newvector")
        return SupportProfile(kappa, False, _rows_unbalanced(spec, kappa))
    k2, tmap = _balanced_map(spec, kappa)
    base = _rows_unbalanced(spec, k2)
    rows = []
    for r in base:
        rows.append(ProfileRow(r.support.replace("y", "t") + " (after balancing)", r.type_tag, r.cap,
                               (lambda rr: lambda t: rr.in_support(tmap(t)))(r),
                               (lambda rr: lambda t: rr.cap_value(tmap(t)))(r)))
    if selector is not None:
        _selector_check(spec, kappa, selector)
        rows = [ProfileRow(r.support + f" & {selector.kind}({selector.value})", r.type_tag, r.cap,
                           (lambda rr: lambda t: rr.in_support(t) and selector_indicator(spec, selector, t))(r),
                           r.cap_value) for r in rows]
    return SupportProfile(kappa, True, rows)
