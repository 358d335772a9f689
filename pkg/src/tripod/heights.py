"""Heights and radicals of abc sums over number fields.

A height splits into an exact finite part (a formal sum of q * log p over
primes) and an archimedean interval part.  Archimedean contributions are
counted per embedding of the field into C, complex-conjugate pairs entering
once with weight two.  Comparisons that matter are made on certified
intervals; nothing is ever rounded to floats internally.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _gcd

from . import intfactor
from .balls import RealBall, ball_max, log_ball
from .errors import DomainError, PrecisionExhaustedError
from .numfield import FieldElement, NumberField, min_poly_of
from .polys import Poly, resultant

_Q = Fraction

_RATIONALS = NumberField([0, 1], check_irreducible=False)


def rationals() -> NumberField:
    """The degree-1 field used for plain rational triples."""
    return _RATIONALS


class HeightValue:
    """Exact formal sum of q*log(p) plus an archimedean interval."""

    __slots__ = ("finite", "arch")

    def __init__(self, finite=None, arch=None):
        items = tuple(sorted((int(p), _Q(q)) for p, q in (finite or {}).items()
                             if q != 0))
        object.__setattr__(self, "finite", items)
        object.__setattr__(self, "arch", arch if arch is not None else RealBall.exact(0))

    def __setattr__(self, *a):
        raise AttributeError("HeightValue is immutable")

    def finite_dict(self) -> dict[int, Fraction]:
        return dict(self.finite)

    def total(self, prec: int) -> RealBall:
        acc = self.arch
        for p, q in self.finite:
            acc = acc + log_ball(p, prec) * q
        return acc

    def factored_string(self) -> str:
        """Exact finite part like 'log(2^3*5)'; '0' when empty."""
        if not self.finite:
            return "0"
        parts = []
        for p, q in self.finite:
            if q == 1:
                parts.append(str(p))
            elif q.denominator == 1:
                parts.append(f"{p}^{q}")
            else:
                parts.append(f"{p}^({q})")
        return "log(" + "*".join(parts) + ")"

    def decimal_string(self, prec: int = 128, digits: int = 6) -> str:
        return self.total(prec).decimal(digits)

    def __repr__(self):
        return f"HeightValue({self.factored_string()} + {self.arch!r})"

    def __add__(self, other):
        if not isinstance(other, HeightValue):
            return NotImplemented
        fin = self.finite_dict()
        for p, q in other.finite:
            fin[p] = fin.get(p, _Q(0)) + q
        return HeightValue(fin, self.arch + other.arch)

    def scale(self, k) -> "HeightValue":
        k = _Q(k)
        return HeightValue({p: q * k for p, q in self.finite}, self.arch * k)


class AbcPoint:
    """Projective point (a : b : c) with a + b = c over a number field."""

    __slots__ = ("field", "a", "b", "c")

    def __init__(self, field: NumberField, a, b, c):
        a, b, c = field.coerce(a), field.coerce(b), field.coerce(c)
        if a is None or b is None or c is None:
            raise ValueError("coordinates must live in the given field")
        if a + b != c:
            raise ValueError("abc condition a + b = c violated")
        if a.is_zero() and b.is_zero() and c.is_zero():
            raise ValueError("projective point needs a nonzero coordinate")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    def __setattr__(self, *a):
        raise AttributeError("AbcPoint is immutable")

    @classmethod
    def from_rational_triple(cls, a, b, c) -> "AbcPoint":
        K = rationals()
        return cls(K, K.from_rational(a), K.from_rational(b), K.from_rational(c))

    @classmethod
    def from_x(cls, x, field: NumberField | None = None) -> "AbcPoint":
        """The point (x : 1-x : 1)."""
        if isinstance(x, FieldElement):
            K = x.field
        else:
            K = field or rationals()
            x = K.from_rational(_Q(x))
        return cls(K, x, K.one() - x, K.one())

    def coords(self):
        return (self.a, self.b, self.c)

    def scaled(self, x) -> "AbcPoint":
        return AbcPoint(self.field, self.a * x, self.b * x, self.c * x)

    def x(self) -> FieldElement:
        if self.c.is_zero():
            raise DomainError("x = a/c undefined: c = 0")
        return self.a / self.c

    def in_tripod(self) -> bool:
        """True when (a:b:c) is one of the three degenerate points 0, 1, oo."""
        return self.a.is_zero() or self.b.is_zero() or self.c.is_zero()

    def __repr__(self):
        return f"AbcPoint({self.a!r} : {self.b!r} : {self.c!r})"


class TripodDivisorSpec:
    """The divisor {0, 1, oo} cut out by z, z - 1 and 1/z on the projective line."""

    def equations(self) -> list[tuple[Poly, Poly]]:
        z = Poly.x()
        one = Poly.const(1)
        return [(z, one), (z - 1, one), (one, z)]

    def pulled_back(self, num: Poly, den: Poly) -> list[tuple[Poly, Poly]]:
        """Defining equations of the preimage divisor under num/den."""
        return [(num, den), (num - den, den), (den, num)]


TRIPOD = TripodDivisorSpec()


# -- local data ------------------------------------------------------------------


def _support_primes(a: FieldElement) -> set[int]:
    """Primes p that can carry a nonzero valuation of a at some prime above p."""
    K = a.field
    if a.is_zero():
        raise ValueError("support of zero")
    if K.is_rationals() or a.is_rational():
        q = a.as_fraction()
        return ({p for p, _ in intfactor.factorint(q.numerator)}
                | {p for p, _ in intfactor.factorint(q.denominator)})
    # rewrite over the integral generator so valuations cannot cancel in the norm
    scale = K._scale
    coords = [a.coords[i] / _Q(scale) ** i for i in range(K.degree)]
    den = 1
    for c in coords:
        den = den * c.denominator // _gcd(den, c.denominator)
    B = Poly([c * den for c in coords])
    M = Poly(K._int_poly_coeffs)
    n = resultant(M, B)
    assert n.denominator == 1 and n != 0
    out = {p for p, _ in intfactor.factorint(int(n))}
    out |= {p for p, _ in intfactor.factorint(den)}
    return out


def _min_valuation(K: NumberField, P, coords) -> Fraction | int:
    vals = [K.valuation(P, u) for u in coords if not u.is_zero()]
    return min(vals)


# -- the global quantities ---------------------------------------------------------


def projective_height(field: NumberField, coords, prec: int = 128) -> HeightValue:
    """Global height of a projective point with the max formula at infinity."""
    coords = [field.coerce(u) for u in coords]
    nonzero = [u for u in coords if not u.is_zero()]
    if not nonzero:
        raise ValueError("projective point needs a nonzero coordinate")

    arch = RealBall.exact(0)
    for theta, w in field.embeddings(prec):
        sq = [u.to_poly().eval_ball(theta, prec).abs_squared() for u in nonzero]
        m = ball_max(*sq)
        if m.lo <= 0:
            raise PrecisionExhaustedError(
                "archimedean coordinate enclosure touches zero; raise precision")
        arch = arch + m.log(prec) * _Q(w, 2)

    finite: dict[int, Fraction] = {}
    candidates = set()
    for u in nonzero:
        candidates |= _support_primes(u)
    for p in sorted(candidates):
        coeff = _Q(0)
        for P in field.split_prime(p):
            mv = _min_valuation(field, P, nonzero)
            if mv:
                coeff -= _Q(P.f * mv)
        if coeff:
            finite[p] = coeff
    return HeightValue(finite, arch)


def global_height(point: AbcPoint, prec: int = 128) -> HeightValue:
    """h_K(a : b : c): archimedean log-max plus minus-min-valuation terms."""
    return projective_height(point.field, point.coords(), prec)


def is_root_of_unity(u: FieldElement) -> bool:
    if u.is_zero():
        return False
    d = u.field.degree
    bound = 2 * d * d + 2
    power = u.field.one()
    for _ in range(bound):
        power = power * u
        if power == u.field.one():
            return True
    return False


def global_radical(point: AbcPoint, prec: int = 128,
                   radical_exception: bool = False) -> HeightValue:
    """r_K(a : b : c): degree term plus log N(p) over places with unequal orders.

    With radical_exception enabled, archimedean places where the three
    coordinates all have unit modulus (certified via pairwise root-of-unity
    quotients) contribute 0 instead of 1 per embedding.
    """
    K = point.field
    a, b, c = point.coords()
    if a.is_zero() or b.is_zero() or c.is_zero():
        raise DomainError("radical needs all three coordinates nonzero")

    arch_weight = K.degree
    if radical_exception:
        if (is_root_of_unity(a / b) and is_root_of_unity(b / c)
                and is_root_of_unity(a / c)):
            arch_weight = 0

    finite: dict[int, Fraction] = {}
    candidates = set()
    for u in (a, b, c):
        candidates |= _support_primes(u)
    for p in sorted(candidates):
        coeff = _Q(0)
        for P in K.split_prime(p):
            vals = {K.valuation(P, u) for u in (a, b, c)}
            if len(vals) >= 2:
                coeff += P.f
        if coeff:
            finite[p] = coeff
    return HeightValue(finite, RealBall.exact(arch_weight))


def absolute_height(point: AbcPoint, prec: int = 128) -> RealBall:
    """h(a:b:c) = h_K / [K:Q]; independent of the field of definition."""
    return global_height(point, prec).total(prec) / point.field.degree


def minimal_field_point(point: AbcPoint) -> AbcPoint:
    """The same point rewritten over its minimal field of definition Q[a/c].

    Coordinates are normalized so that c = 1 (b = 1 - a), which is always
    possible off the tripod.
    """
    if point.in_tripod():
        raise DomainError("tripod points have no abc normalization")
    x = point.x()
    if x.is_rational():
        return AbcPoint.from_x(x.as_fraction())
    q = min_poly_of(x)
    F = NumberField(q, check_irreducible=False)
    return AbcPoint.from_x(F.generator())


def absolute_radical(point: AbcPoint, prec: int = 128,
                     radical_exception: bool = False) -> RealBall:
    """r(a:b:c) over the minimal field of definition, divided by its degree."""
    mp = minimal_field_point(point)
    r = global_radical(mp, prec, radical_exception)
    return r.total(prec) / mp.field.degree


def log_different(point: AbcPoint, prec: int = 128) -> RealBall:
    """log |disc F| / [F:Q] for the minimal field of definition F."""
    mp = minimal_field_point(point)
    disc = mp.field.field_discriminant()
    if abs(disc) == 1:
        return RealBall.exact(0)
    return log_ball(abs(disc), prec) / mp.field.degree


def radical_wrt_divisor(x: FieldElement, equations=None, prec: int = 128) -> HeightValue:
    """r_D(x): (1/[F:Q]) sum of log N(p) over places where some defining
    equation of D takes positive valuation at x; each place counts once.

    `equations` is a list of (numerator, denominator) rational polynomials;
    defaults to the tripod equations z, z-1, 1/z.
    """
    if equations is None:
        equations = TRIPOD.equations()
    K = x.field
    values = []
    for num, den in equations:
        dv = den(x)
        dv = K.coerce(dv)
        if dv is None or dv.is_zero():
            raise DomainError("x is a pole of a defining equation")
        nv = K.coerce(num(x))
        if nv is None or nv.is_zero():
            raise DomainError("x lies in the support of the divisor")
        values.append(nv / dv)

    finite: dict[int, Fraction] = {}
    candidates = set()
    for v in values:
        candidates |= _support_primes(v)
    deg = K.degree
    for p in sorted(candidates):
        coeff = _Q(0)
        for P in K.split_prime(p):
            if any(K.valuation(P, v) > 0 for v in values):
                coeff += _Q(P.f, deg)
        if coeff:
            finite[p] = coeff
    return HeightValue(finite, RealBall.exact(0))


def product_formula_defect(x: FieldElement, prec: int = 128) -> RealBall:
    """sum_i -log|i(x)| (per embedding) + sum_v v(x) log N(p); zero for x != 0."""
    if x.is_zero():
        raise ValueError("product formula needs a nonzero element")
    K = x.field
    acc = RealBall.exact(0)
    for theta, w in K.embeddings(prec):
        img = x.to_poly().eval_ball(theta, prec)
        acc = acc - img.log_abs(prec) * w
    for p in sorted(_support_primes(x)):
        for P in K.split_prime(p):
            v = K.valuation(P, x)
            if v:
                acc = acc + log_ball(p, prec) * (v * P.f)
    return acc
