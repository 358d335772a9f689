"""Dense univariate polynomials over Q: exact algebra, gcd, resultants, Sturm.

Coefficients are Fractions stored constant-term first with the leading zero
tail stripped.  The zero polynomial has degree -1 (sentinel).  Everything
here is exact; no floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

from .balls import ComplexBall, RealBall

_Q = Fraction


class Poly:
    """Immutable dense polynomial over Q, coefficients constant-first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_Q(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("Poly is immutable")

    # -- construction helpers ----------------------------------------------

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, n: int, c=1) -> "Poly":
        return cls([0] * n + [c])

    @classmethod
    def from_roots(cls, roots) -> "Poly":
        p = cls([1])
        for r in roots:
            p = p * cls([-_Q(r), 1])
        return p

    # -- basics --------------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else _Q(0)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                term = str(c)
            else:
                xi = "x" if i == 1 else f"x^{i}"
                if c == 1:
                    term = xi
                elif c == -1:
                    term = f"-{xi}"
                else:
                    term = f"{c}*{xi}"
            parts.append(term)
        s = parts[0]
        for t in parts[1:]:
            s += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return s

    # -- ring operations -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly([self[i] + o[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return Poly()
        out = [_Q(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        r = Poly([1])
        base = self
        while n:
            if n & 1:
                r = r * base
            n >>= 1
            if n:
                base = base * base
        return r

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(o.coeffs)
        if dq < 0:
            return Poly(), self
        quo = [_Q(0)] * (dq + 1)
        lc = o.leading()
        for k in range(dq, -1, -1):
            c = rem[k + o.degree] / lc
            quo[k] = c
            if c:
                for j, b in enumerate(o.coeffs):
                    rem[k + j] -= c * b
        return Poly(quo), Poly(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly([c / _Q(other) for c in self.coeffs])
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("inexact polynomial division")
        return q

    def divides(self, other: "Poly") -> bool:
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    # -- calculus & transforms ---------------------------------------------------

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def compose(self, other: "Poly") -> "Poly":
        r = Poly()
        for c in reversed(self.coeffs):
            r = r * other + Poly.const(c)
        return r

    def shift(self, a) -> "Poly":
        """Taylor shift: returns p(x + a)."""
        return self.compose(Poly([_Q(a), 1]))

    def scale_arg(self, a) -> "Poly":
        """Returns p(a*x)."""
        a = _Q(a)
        pw = _Q(1)
        out = []
        for c in self.coeffs:
            out.append(c * pw)
            pw *= a
        return Poly(out)

    def reverse(self) -> "Poly":
        """Coefficient reversal x^deg * p(1/x)."""
        return Poly(list(reversed(self.coeffs)))

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lc = self.leading()
        return self if lc == 1 else Poly([c / lc for c in self.coeffs])

    # -- evaluation ----------------------------------------------------------------

    def __call__(self, x):
        if isinstance(x, (int, Fraction)):
            acc = _Q(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        if isinstance(x, RealBall):
            acc = RealBall.exact(0)
            for c in reversed(self.coeffs):
                acc = acc * x + RealBall.exact(c)
            return acc
        if isinstance(x, ComplexBall):
            acc = ComplexBall.exact(0)
            for c in reversed(self.coeffs):
                acc = acc * x + ComplexBall.exact(c)
            return acc
        # generic ring element (e.g. FieldElement, Poly)
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return 0
        return acc

    def eval_ball(self, x: ComplexBall, prec: int) -> ComplexBall:
        """Horner with intermediate outward rounding to keep endpoints small."""
        acc = ComplexBall.exact(0)
        for c in reversed(self.coeffs):
            acc = (acc * x + ComplexBall.exact(c))._maybe_round(prec)
        return acc

    # -- integer normal forms ------------------------------------------------------

    def denominator_lcm(self) -> int:
        d = 1
        for c in self.coeffs:
            d = d * c.denominator // int_gcd(d, c.denominator)
        return d

    def int_coeffs(self) -> tuple[list[int], int]:
        """Return (integer coefficient list, clearing denominator)."""
        d = self.denominator_lcm()
        return [int(c * d) for c in self.coeffs], d

    def content_int(self) -> Fraction:
        """Rational content: primitive integer part = self / content."""
        if self.is_zero():
            return _Q(0)
        ics, den = self.int_coeffs()
        g = 0
        for c in ics:
            g = int_gcd(g, abs(c))
        sign = 1 if ics[-1] > 0 else -1
        return _Q(g * sign, den)

    def primitive(self) -> "Poly":
        """Integer-primitive associate with positive leading coefficient."""
        if self.is_zero():
            return self
        return self / self.content_int()

    def max_norm(self) -> Fraction:
        return max((abs(c) for c in self.coeffs), default=_Q(0))


# -- gcd family --------------------------------------------------------------


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd over Q (primitive PRS to tame coefficient growth)."""
    a, b = f, g
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    a, b = a.primitive(), b.primitive()
    while not b.is_zero():
        a, b = b, (a % b)
        if not b.is_zero():
            b = b.primitive()
    return a.monic()


def poly_xgcd(f: Poly, g: Poly) -> tuple[Poly, Poly, Poly]:
    """Extended gcd: returns (d, u, v) with u*f + v*g = d, d monic."""
    r0, r1 = f, g
    s0, s1 = Poly([1]), Poly()
    t0, t1 = Poly(), Poly([1])
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return Poly(), s0, t0
    lc = r0.leading()
    return r0.monic(), s0 / lc, t0 / lc


def squarefree_part(f: Poly) -> Poly:
    if f.degree <= 0:
        return f.monic()
    return (f / poly_gcd(f, f.derivative())).monic()


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: returns [(g_i, i)] with f = lc * prod g_i^i, g_i monic squarefree."""
    if f.degree <= 0:
        return []
    f = f.monic()
    out = []
    g = poly_gcd(f, f.derivative())
    c = f / g
    d = f.derivative() / g - c.derivative()
    i = 1
    while not c.is_constant():
        p = poly_gcd(c, d)
        if p.degree > 0:
            out.append((p.monic(), i))
        c = c / p
        d = d / p - c.derivative()
        i += 1
    return out


# -- resultants ---------------------------------------------------------------


def resultant(f: Poly, g: Poly) -> Fraction:
    """Res(f, g) over Q via a Euclidean PRS with exact scale tracking."""
    if f.is_zero() or g.is_zero():
        return _Q(0)
    if f.degree == 0:
        return f.leading() ** g.degree
    if g.degree == 0:
        return g.leading() ** f.degree
    res = _Q(1)
    a, b = f, g
    while True:
        da, db = a.degree, b.degree
        if da < db:
            a, b = b, a
            if da & 1 and db & 1:
                res = -res
            continue
        r = a % b
        if r.is_zero():
            return _Q(0)
        lb = b.leading()
        res *= lb ** (da - r.degree)
        if da & 1 and db & 1:
            res = -res
        a, b = b, r
        if b.degree == 0:
            res *= b.leading() ** a.degree
            return res


def discriminant(f: Poly) -> Fraction:
    """disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f)."""
    d = f.degree
    if d < 1:
        raise ValueError("discriminant needs degree >= 1")
    if d == 1:
        return _Q(1)
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative()) / f.leading()


# -- Sturm chains and exact real root location ---------------------------------


def sturm_chain(f: Poly) -> list[Poly]:
    chain = [f, f.derivative()]
    while not chain[-1].is_zero():
        chain.append(-(chain[-2] % chain[-1]))
    chain.pop()
    return chain


def _sign_variations(chain: list[Poly], x) -> int:
    signs = []
    for p in chain:
        v = p(x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_variations_inf(chain: list[Poly], positive: bool) -> int:
    signs = []
    for p in chain:
        if p.is_zero():
            continue
        s = 1 if p.leading() > 0 else -1
        if not positive and p.degree % 2:
            s = -s
        signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def root_bound(f: Poly) -> Fraction:
    """Cauchy bound: all complex roots have modulus below the returned value."""
    lc = abs(f.leading())
    m = max((abs(c) for c in f.coeffs[:-1]), default=_Q(0))
    return 1 + m / lc


def count_real_roots(f: Poly, lo=None, hi=None) -> int:
    """Number of distinct real roots of squarefree f in (lo, hi]."""
    chain = sturm_chain(f)
    vlo = _sign_variations(chain, lo) if lo is not None else _sign_variations_inf(chain, False)
    vhi = _sign_variations(chain, hi) if hi is not None else _sign_variations_inf(chain, True)
    return vlo - vhi


def isolate_real_roots(f: Poly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint isolating intervals (lo, hi] for all real roots of squarefree f.

    Exact endpoints; each interval contains exactly one root.  Rational roots
    may land on the hi endpoint.
    """
    if f.degree <= 0:
        return []
    chain = sturm_chain(f)
    bound = root_bound(f)
    out = []
    total = count_real_roots(f)

    def recurse(lo, hi, nlo, nhi):
        n = nlo - nhi
        if n == 0:
            return
        if n == 1:
            out.append((lo, hi))
            return
        mid = (lo + hi) / 2
        nmid = _sign_variations(chain, mid)
        recurse(lo, mid, nlo, nmid)
        recurse(mid, hi, nmid, nhi)

    recurse(-bound, bound, _sign_variations(chain, -bound), _sign_variations(chain, bound))
    assert len(out) == total
    return sorted(out)


def refine_root_interval(f: Poly, lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Bisect an isolating interval (lo, hi] of squarefree f down to the target width."""
    flo = f(lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        fmid = f(mid)
        if fmid == 0:
            # exact root: pin to degenerate interval
            return mid, mid
        if (flo > 0) != (fmid > 0):
            hi = mid
        else:
            lo, flo = mid, fmid
    return lo, hi
