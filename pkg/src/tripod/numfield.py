"""Number fields Q[x]/(m): elements, prime splitting, valuations, discriminants.

Splitting works in the equation order Z[theta].  For p not dividing the
polynomial discriminant the mod-p factorization is lifted directly.  For
difficult primes a p-adic recursion runs: coprime parts are Hensel-split,
repeated parts are translated onto their root and analyzed through the
Newton polygon (Eisenstein-type and irreducible-residual segments are
certified irreducible; integer-slope clusters are rescaled by x -> p^s y
and recursed).  Anything beyond that budget raises
UnsupportedSplittingError rather than guessing.

Quadratic fields additionally carry the classical closed-form override
(discriminant by d mod 4, splitting by Legendre symbol), which also covers
their wild prime p = 2.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import gcd as int_gcd, inf

from . import intfactor, modpoly, qfactor
from .balls import ComplexBall, RealBall
from .errors import (InternalInvariantError, PrecisionExhaustedError,
                     UnsupportedSplittingError, WildRamificationError)
from .polys import Poly, discriminant, poly_xgcd, resultant
from .roots import isolate_complex_roots

_Q = Fraction

_PADIC_START_DIGITS = 32
_PADIC_MAX_DOUBLINGS = 4
_SPLIT_DEPTH_BUDGET = 64


class FieldElement:
    """Element of a NumberField: coordinates over the power basis of theta."""

    __slots__ = ("field", "coords")

    def __init__(self, field: "NumberField", coords):
        coords = tuple(_Q(c) for c in coords)
        if len(coords) != field.degree:
            raise ValueError("coordinate vector has wrong length")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, *a):
        raise AttributeError("FieldElement is immutable")

    def to_poly(self) -> Poly:
        return Poly(self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    def __eq__(self, other):
        other = self.field.coerce(other)
        if other is None:
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash((id(self.field), self.coords))

    def __repr__(self):
        return f"FieldElement({self.to_poly()} @ theta)"

    def __add__(self, other):
        o = self.field.coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-c for c in self.coords])

    def __sub__(self, other):
        o = self.field.coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self.field.coerce(other)
        if o is None:
            return NotImplemented
        prod = (self.to_poly() * o.to_poly()) % self.field.min_poly
        return self.field.element(prod.coeffs)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        d, u, _ = poly_xgcd(self.to_poly(), self.field.min_poly)
        if d.degree != 0:
            raise InternalInvariantError("min_poly not irreducible?")
        inv = (u / d.coeffs[0]) % self.field.min_poly
        return self.field.element(inv.coeffs)

    def __truediv__(self, other):
        o = self.field.coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self.field.coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        r = self.field.one()
        base = self
        while n:
            if n & 1:
                r = r * base
            n >>= 1
            if n:
                base = base * base
        return r

    def norm(self) -> Fraction:
        """Field norm N(a) = product of conjugates = Res(min_poly, coord poly)."""
        if self.is_rational():
            return self.coords[0] ** self.field.degree
        return resultant(self.field.min_poly, self.to_poly())

    def embed(self, prec: int) -> list[ComplexBall]:
        """Images under every representative embedding (see NumberField.embeddings)."""
        return [self.to_poly().eval_ball(theta, prec)
                for theta, _w in self.field.embeddings(prec)]


class PrimeIdeal:
    """Prime of the field above p, with ramification index e and residue degree f.

    local_factor(digits) returns the p-adically lifted factor of the
    (integralized) minimal polynomial, as integer coefficients known
    modulo p**digits.
    """

    __slots__ = ("field", "p", "e", "f", "label", "_factors", "_lock")

    def __init__(self, field, p, e, f, label, factor_coeffs, known_digits):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "_factors", {known_digits: tuple(factor_coeffs)})
        object.__setattr__(self, "_lock", threading.Lock())

    def __setattr__(self, *a):
        raise AttributeError("PrimeIdeal is immutable")

    @property
    def norm(self) -> int:
        return self.p ** self.f

    @property
    def residue_degree(self) -> int:
        return self.f

    def __repr__(self):
        return f"PrimeIdeal(p={self.p}, e={self.e}, f={self.f}, label={self.label})"

    def local_factor(self, digits: int) -> tuple[list[int], int]:
        with self._lock:
            best = max(self._factors)
            if best >= digits:
                return list(self._factors[best]), best
        refreshed = self.field._refresh_local_factors(self.p, digits)
        with self._lock:
            self._factors.update({digits: tuple(refreshed[self.label])})
            return list(refreshed[self.label]), digits


class NumberField:
    """Q[x]/(m) for monic irreducible m, with splitting and embedding caches."""

    def __init__(self, min_poly, disc_override: int | None = None,
                 check_irreducible: bool = True):
        if not isinstance(min_poly, Poly):
            min_poly = Poly(min_poly)
        if min_poly.degree < 1 or not min_poly.is_monic():
            raise ValueError("min_poly must be monic of degree >= 1")
        if check_irreducible and min_poly.degree > 1:
            if not qfactor.is_irreducible_over_Q(min_poly):
                raise ValueError(f"min_poly {min_poly} is reducible over Q")
        self.min_poly = min_poly
        self.degree = min_poly.degree
        self.disc_override = disc_override
        # integralized generator: theta_int = scale * theta has monic integer min poly
        d = self.degree
        scale = min_poly.denominator_lcm()
        self._scale = scale
        self._int_poly_coeffs = [int(min_poly[i] * scale ** (d - i)) for i in range(d)] + [1]
        self._poly_disc: int | None = None
        self._splittings: dict[int, tuple[PrimeIdeal, ...]] = {}
        self._embeddings: dict[int, tuple] = {}
        self._lock = threading.Lock()

    # -- identity ------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, NumberField)
                and self.min_poly == other.min_poly
                and self.disc_override == other.disc_override)

    def __hash__(self):
        return hash((self.min_poly.coeffs, self.disc_override))

    def __repr__(self):
        return f"NumberField(x^{self.degree}: {self.min_poly})"

    def is_rationals(self) -> bool:
        return self.degree == 1

    # -- elements ------------------------------------------------------------

    def element(self, coords) -> FieldElement:
        coords = list(coords)[: self.degree]
        coords += [0] * (self.degree - len(coords))
        return FieldElement(self, coords)

    def from_rational(self, q) -> FieldElement:
        return self.element([_Q(q)] + [0] * (self.degree - 1))

    def generator(self) -> FieldElement:
        if self.degree == 1:
            return self.from_rational(-self.min_poly[0])
        return self.element([0, 1] + [0] * (self.degree - 2))

    def one(self) -> FieldElement:
        return self.from_rational(1)

    def zero(self) -> FieldElement:
        return self.from_rational(0)

    def coerce(self, x) -> FieldElement | None:
        if isinstance(x, FieldElement):
            return x if x.field == self else None
        if isinstance(x, (int, Fraction)):
            return self.from_rational(x)
        return None

    # -- invariants ------------------------------------------------------------

    @property
    def poly_disc(self) -> int:
        if self._poly_disc is None:
            if self.degree == 1:
                self._poly_disc = 1
            else:
                value = discriminant(Poly(self._int_poly_coeffs))
                assert value.denominator == 1
                self._poly_disc = int(value)
        return self._poly_disc

    def field_discriminant(self) -> int:
        """disc(K); tame primes via sum f_i (e_i - 1), quadratics via the d mod 4 table."""
        if self.disc_override is not None:
            return self.disc_override
        if self.degree == 1:
            return 1
        if self.degree == 2:
            d = intfactor.squarefree_kernel(self.poly_disc)
            return d if d % 4 == 1 else 4 * d
        disc = 1
        for p, _e in intfactor.factorint(self.poly_disc):
            ideals = self.split_prime(p)
            vp = 0
            for P in ideals:
                if P.e > 1 and P.e % p == 0:
                    raise WildRamificationError(
                        f"prime {p} is wildly ramified in {self}; "
                        "supply disc_override to proceed")
                vp += P.f * (P.e - 1)
            disc *= p ** vp
        return disc if self.poly_disc > 0 else -disc

    # -- embeddings ---------------------------------------------------------------

    def embeddings(self, prec: int) -> list[tuple[ComplexBall, int]]:
        """Representative embeddings as (ball, weight): real ones weight 1,
        one member of each complex-conjugate pair weight 2."""
        with self._lock:
            cached = self._embeddings.get(prec)
        if cached is not None:
            return list(cached)
        balls = isolate_complex_roots(self.min_poly, prec)
        reps = []
        for b in balls:
            if b.im.is_exact() and b.im.lo == 0:
                reps.append((b, 1))
            elif b.im.lo > 0:
                reps.append((b, 2))
        if sum(w for _, w in reps) != self.degree:
            raise InternalInvariantError("embedding weights do not sum to degree")
        with self._lock:
            self._embeddings[prec] = tuple(reps)
        return reps

    def signature(self) -> tuple[int, int]:
        reps = self.embeddings(64)
        r1 = sum(1 for _, w in reps if w == 1)
        return r1, (self.degree - r1) // 2

    # -- prime splitting -------------------------------------------------------------

    def split_prime(self, p: int) -> list[PrimeIdeal]:
        if not intfactor.is_prime(p):
            raise ValueError(f"{p} is not prime")
        with self._lock:
            got = self._splittings.get(p)
        if got is not None:
            return list(got)
        ideals = self._split(p, _PADIC_START_DIGITS)
        with self._lock:
            ideals = self._splittings.setdefault(p, tuple(ideals))
        return list(ideals)

    def _split(self, p: int, digits: int) -> list[PrimeIdeal]:
        if self.degree == 1:
            return [PrimeIdeal(self, p, 1, 1, 0, [0, 1], 10 ** 6)]
        for attempt in range(_PADIC_MAX_DOUBLINGS + 1):
            try:
                pieces = _padic_split(self._int_poly_coeffs, p, digits, 0)
                break
            except PrecisionExhaustedError:
                digits *= 2
        else:
            raise UnsupportedSplittingError(
                f"p-adic splitting of {p} in {self} exhausted the precision budget")
        pieces.sort(key=lambda t: (t[0], t[1], t[2]))
        ideals = [PrimeIdeal(self, p, e, f, i, coeffs, known)
                  for i, (e, f, coeffs, known) in enumerate(pieces)]
        if sum(P.e * P.f for P in ideals) != self.degree:
            raise InternalInvariantError("sum e_i f_i != degree")
        return ideals

    def _refresh_local_factors(self, p: int, digits: int) -> dict[int, list[int]]:
        """Recompute all local factors of p at higher precision, keyed by label."""
        fresh = self._split(p, digits)
        old = self.split_prime(p)
        if len(fresh) != len(old):
            raise InternalInvariantError("splitting changed with precision")
        out = {}
        used = set()
        for P in old:
            best, best_match = None, -1
            coeffs_old, known_old = P._factors[max(P._factors)], None
            for Q in fresh:
                if Q.label in used or Q.e != P.e or Q.f != P.f:
                    continue
                match = _agreement_digits(list(coeffs_old), Q._factors[max(Q._factors)], p)
                if match > best_match:
                    best, best_match = Q, match
            if best is None:
                raise InternalInvariantError("could not rematch local factors")
            used.add(best.label)
            out[P.label] = list(best._factors[max(best._factors)])
        return out

    # -- valuations ------------------------------------------------------------------

    def valuation(self, P: PrimeIdeal, a: FieldElement | int | Fraction):
        """v_P(a), normalized with v_P(p) = e; +inf for a = 0."""
        a = self.coerce(a)
        if a is None:
            raise ValueError("element not in this field")
        if a.is_zero():
            return inf
        if a.is_rational():
            q = a.as_fraction()
            return P.e * (intfactor.valuation_int(q.numerator, P.p)
                          - intfactor.valuation_int(q.denominator, P.p))
        digits = max(max(P._factors), _PADIC_START_DIGITS)
        for attempt in range(_PADIC_MAX_DOUBLINGS + 1):
            v = self._valuation_attempt(P, a, digits)
            if v is not None:
                return v
            digits *= 2
        raise PrecisionExhaustedError(
            f"valuation of {a} at {P} not certified at {digits} digits")

    def _valuation_attempt(self, P, a, digits):
        coeffs, known = P.local_factor(digits)
        p = P.p
        # coordinate polynomial rewritten in the integral generator, denominators cleared
        d = self.degree
        scale = self._scale
        A = [a.coords[i] / _Q(scale) ** i for i in range(d)]
        den = 1
        for c in A:
            den = den * c.denominator // int_gcd(den, c.denominator)
        t = intfactor.valuation_int(den, p) if den > 1 else 0
        A_int = Poly([c * den for c in A])
        g = Poly(coeffs)
        r = resultant(g, A_int)
        if r == 0:
            return None  # truncation swallowed the resultant; escalate
        assert r.denominator == 1
        vr = intfactor.valuation_int(int(r), p)
        if vr >= known:
            return None  # cannot certify: true valuation may exceed precision
        ef = P.e * P.f
        num = vr - ef * t
        if num % P.f:
            raise InternalInvariantError(
                f"resultant valuation {num} not divisible by f={P.f}")
        return num // P.f


def _agreement_digits(a: list[int], b, p: int) -> int:
    if len(a) != len(b):
        return -1
    k = 0
    mod = p
    while k < 64:
        if any((x - y) % mod for x, y in zip(a, b)):
            return k
        k += 1
        mod *= p
    return k


# -- the p-adic splitting recursion ------------------------------------------------


def _padic_split(G: list[int], p: int, digits: int, depth: int):
    """Split monic integer G (squarefree over Q) into p-adic irreducibles.

    Returns a list of (e, f, factor_coeffs, known_digits).  Raises
    UnsupportedSplittingError outside the supported shapes and
    PrecisionExhaustedError when `digits` is insufficient to certify.
    """
    if depth > _SPLIT_DEPTH_BUDGET:
        raise UnsupportedSplittingError("p-adic recursion depth exceeded")
    modulus = p ** digits
    G = [c % modulus for c in G[:-1]] + [1]
    fac = modpoly.gf_factor(G, p)
    if len(fac) > 1:
        parts = []
        for phi, mult in fac:
            part = [1]
            for _ in range(mult):
                part = modpoly.gf_mul(part, phi, p)
            parts.append(part)
        lifted = qfactor._lift_tree(G, parts, p, modulus)
        out = []
        for (phi, mult), Gi in zip(fac, lifted):
            Gi = [c % modulus for c in Gi]
            out.extend(_padic_split_single(Gi, phi, mult, p, digits, depth + 1))
        return out
    phi, mult = fac[0]
    return _padic_split_single(G, phi, mult, p, digits, depth + 1)


def _padic_split_single(G, phi, mult, p, digits, depth):
    """Handle G congruent to phi^mult mod p, phi irreducible."""
    if mult == 1:
        return [(1, len(phi) - 1, G, digits)]
    if len(phi) - 1 > 1:
        raise UnsupportedSplittingError(
            f"repeated nonlinear residue factor (degree {len(phi) - 1}) at p={p}: "
            "would need an unramified base extension")
    modulus = p ** digits
    d = len(G) - 1
    c = (-phi[0]) % p
    H = _shift_mod(G, c, modulus)
    hull = _newton_hull(H, p, digits)
    lo_slope_num, lo_slope_den = hull[0][2]  # slope of the first (shallowest) segment
    if len(hull) == 1 and lo_slope_den > 1:
        num, den = lo_slope_num, lo_slope_den
        length = hull[0][1] - hull[0][0]
        k = length // den
        if k == 1:
            return [(den, 1, _shift_mod(H, (-c) % modulus, modulus), digits)]
        R = _residual_poly(H, hull[0], p)
        if modpoly.gf_is_irreducible(R, p):
            return [(den, k, _shift_mod(H, (-c) % modulus, modulus), digits)]
        raise UnsupportedSplittingError(
            f"fractional slope {num}/{den} with reducible residual at p={p}")
    if lo_slope_den != 1:
        raise UnsupportedSplittingError(
            f"cannot separate fractional minimal slope at p={p}")
    s = lo_slope_num
    if s < 1:
        raise InternalInvariantError("repeated factor with non-positive slope")
    # x = p^s y; integral because the hull lies above the slope-s line
    if s * d >= digits - 2:
        raise PrecisionExhaustedError("rescaling would consume the precision budget")
    new_digits = digits - s * d
    new_modulus = p ** new_digits
    H2 = []
    for i, coeff in enumerate(H):
        shift = s * i - s * d
        value = coeff * p ** (s * i)
        if value % p ** (s * d):
            raise PrecisionExhaustedError("hull certified incorrectly under truncation")
        H2.append((value // p ** (s * d)) % new_modulus)
    pieces = _padic_split(H2, p, new_digits, depth + 1)
    out = []
    for e, f, B, known in pieces:
        degB = len(B) - 1
        mapped = [(B[i] * p ** (s * (degB - i))) % new_modulus for i in range(len(B))]
        back = _shift_mod(mapped, (-c) % new_modulus, new_modulus)
        out.append((e, f, back, known))
    return out


def _shift_mod(G, c, modulus):
    """G(x + c) with coefficients reduced mod modulus."""
    out = list(G)
    n = len(out)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            out[j] = (out[j] + c * out[j + 1]) % modulus
    return out


def _newton_hull(H, p, digits):
    """Lower Newton hull segments of H, shallowest first, as (i0, i1, slope).

    Points are (i, v_p(H_i)); the hull is read from the leading coefficient
    (degree d, valuation 0) leftwards.  Slopes are Fractions (num, den) in
    lowest terms, expressed as the root valuation of that cluster.
    """
    d = len(H) - 1
    pts = []
    for i, coeff in enumerate(H):
        if coeff % (p ** digits) == 0 and i != d:
            continue  # valuation at least `digits`: never on a certified hull
        v = 0 if i == d else intfactor.valuation_int(coeff, p)
        pts.append((i, v))
    # lower convex hull from (d, 0) to the leftmost point
    pts.sort()
    hull = [pts[-1]]
    rest = pts[:-1]
    while hull[-1][0] > pts[0][0]:
        base_i, base_v = hull[-1]
        best = None
        for i, v in rest:
            if i >= base_i:
                continue
            slope = _Q(v - base_v, base_i - i)
            if best is None or slope < best[0] or (slope == best[0] and i < best[1][0]):
                if best is None or slope < best[0]:
                    best = (slope, (i, v))
                elif i < best[1][0]:
                    best = (slope, (i, v))
        hull.append(best[1])
    segments = []
    for (i1, v1), (i0, v0) in zip(hull, hull[1:]):
        slope = _Q(v0 - v1, i1 - i0)
        if 2 * max(v0, v1) >= digits:
            raise PrecisionExhaustedError("hull heights too close to working precision")
        segments.append((i0, i1, (slope.numerator, slope.denominator)))
    return segments


def _residual_poly(H, segment, p):
    """Residual polynomial of a single hull segment (slope h/e, length k*e)."""
    i0, i1, (h, e) = segment
    length = i1 - i0
    k = length // e
    v0 = intfactor.valuation_int(H[i0], p)
    out = []
    for j in range(k + 1):
        i = i0 + j * e
        need = v0 - j * h
        coeff = H[i]
        if coeff == 0:
            out.append(0)
            continue
        v = intfactor.valuation_int(coeff, p)
        if v > need:
            out.append(0)
        elif v == need:
            out.append((coeff // p ** need) % p)
        else:
            raise InternalInvariantError("point below its own hull segment")
    return modpoly.gf_from_int_coeffs(out, p)


# -- minimal polynomial of an element ----------------------------------------------


def char_poly(a: FieldElement) -> Poly:
    """Characteristic polynomial prod (x - conj(a)) via resultant interpolation."""
    K = a.field
    d = K.degree
    A = a.to_poly()
    ts = []
    t = 0
    vals = []
    while len(ts) < d + 1:
        tv = resultant(K.min_poly, Poly.const(t) - A)
        ts.append(_Q(t))
        vals.append(tv)
        t = -t + (1 if t <= 0 else 0)  # 0, 1, -1, 2, -2, ...
    # Lagrange interpolation
    out = Poly()
    for i, (ti, vi) in enumerate(zip(ts, vals)):
        li = Poly([1])
        denom = _Q(1)
        for j, tj in enumerate(ts):
            if i == j:
                continue
            li = li * Poly([-tj, 1])
            denom *= ti - tj
        out = out + li * (vi / denom)
    return out.monic()


def min_poly_of(a: FieldElement) -> Poly:
    """Monic irreducible polynomial of a over Q (degree divides the field degree)."""
    K = a.field
    if a.is_rational():
        return Poly([-a.as_fraction(), 1])
    cp = char_poly(a)
    for q, _m in qfactor.factor_over_Q(cp):
        img = q(a)
        img = K.coerce(img) if not isinstance(img, FieldElement) else img
        if img is not None and img.is_zero():
            return q
    raise InternalInvariantError("no factor of the characteristic polynomial vanishes")
