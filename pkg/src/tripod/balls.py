"""Certified real and complex interval arithmetic on exact rational endpoints.

A RealBall is a closed interval [lo, hi] with Fraction endpoints; the exact
value it stands for is guaranteed to lie inside.  Field operations are
computed exactly, so rational data stays width zero until a transcendental
function enters.  log/exp/sqrt/pi go through mpmath's interval contexts
(one immutable context per precision), with endpoints converted exactly in
both directions, so every enclosure is sound.

ComplexBall is a rectangle: a pair of RealBalls.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from mpmath.ctx_iv import MPIntervalContext
from mpmath.libmp import from_rational, round_ceiling, round_floor, to_rational

from .errors import DomainError, PrecisionExhaustedError

_Q = Fraction


@lru_cache(maxsize=64)
def _ctx(prec: int) -> MPIntervalContext:
    # One context per precision; never mutated after creation.
    c = MPIntervalContext()
    c.prec = prec
    return c


def _raw_to_fraction(raw) -> Fraction:
    p, q = to_rational(raw)
    return _Q(int(p), int(q))


def _interval_via_mpmath(func_name: str, ball: "RealBall", prec: int) -> "RealBall":
    """Apply a univariate mpmath interval function to an exact interval."""
    ctx = _ctx(prec)
    lo = from_rational(ball.lo.numerator, ball.lo.denominator, prec, round_floor)
    hi = from_rational(ball.hi.numerator, ball.hi.denominator, prec, round_ceiling)
    r = getattr(ctx, func_name)(ctx.make_mpf((lo, hi)))
    rlo, rhi = r._mpi_
    return RealBall(_raw_to_fraction(rlo), _raw_to_fraction(rhi))


class RealBall:
    """Closed interval with exact Fraction endpoints, lo <= hi."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = _Q(lo)
        hi = lo if hi is None else _Q(hi)
        if lo > hi:
            raise ValueError(f"inverted interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, *a):
        raise AttributeError("RealBall is immutable")

    @classmethod
    def exact(cls, q) -> "RealBall":
        q = _Q(q)
        return cls(q, q)

    @classmethod
    def from_midrad(cls, mid, rad) -> "RealBall":
        mid, rad = _Q(mid), _Q(rad)
        if rad < 0:
            raise ValueError("negative radius")
        return cls(mid - rad, mid + rad)

    # -- inspection -------------------------------------------------------

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def rad(self) -> Fraction:
        return (self.hi - self.lo) / 2

    def contains(self, q) -> bool:
        q = _Q(q)
        return self.lo <= q <= self.hi

    def overlaps(self, other: "RealBall") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def is_exact(self) -> bool:
        return self.lo == self.hi

    def __repr__(self):
        if self.is_exact():
            return f"RealBall({self.lo})"
        return f"RealBall({float(self.mid)} ± {float(self.rad):.3g})"

    def decimal(self, digits: int = 6) -> str:
        return f"{float(self.mid):.{digits}f}±{float(self.rad):.1e}"

    # -- exact interval field operations ----------------------------------

    def _coerce(self, other):
        if isinstance(other, RealBall):
            return other
        if isinstance(other, (int, Rational)):
            return RealBall.exact(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RealBall(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return RealBall(-self.hi, -self.lo)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RealBall(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        cands = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RealBall(min(cands), max(cands))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.lo <= 0 <= o.hi:
            raise DomainError("division by an interval containing zero")
        cands = (self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi)
        return RealBall(min(cands), max(cands))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o.__truediv__(self)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        if n == 0:
            return RealBall.exact(1)
        r = self
        for _ in range(n - 1):
            r = r * self
        return r

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RealBall(_Q(0), max(-self.lo, self.hi))

    # -- rounding ----------------------------------------------------------

    def round(self, prec: int) -> "RealBall":
        """Round endpoints outward onto the dyadic grid 2**-prec."""
        scale = 1 << prec
        lo = _Q((self.lo * scale).__floor__(), scale)
        hi = _Q(-((-self.hi * scale).__floor__()), scale)
        return RealBall(lo, hi)

    def _maybe_round(self, prec: int) -> "RealBall":
        bits = max(
            self.lo.numerator.bit_length(), self.lo.denominator.bit_length(),
            self.hi.numerator.bit_length(), self.hi.denominator.bit_length(),
        )
        return self.round(prec) if bits > 4 * prec else self

    # -- certified comparisons (True / False / None = undecided) -----------

    def lt(self, other) -> bool | None:
        o = self._coerce(other)
        if self.hi < o.lo:
            return True
        if self.lo >= o.hi:
            return False
        return None

    def le(self, other) -> bool | None:
        o = self._coerce(other)
        if self.hi <= o.lo:
            return True
        if self.lo > o.hi:
            return False
        return None

    def ge(self, other) -> bool | None:
        r = self.lt(other)
        return None if r is None else not r

    def gt(self, other) -> bool | None:
        r = self.le(other)
        return None if r is None else not r

    # -- transcendental enclosures -----------------------------------------

    def log(self, prec: int) -> "RealBall":
        if self.lo <= 0:
            raise PrecisionExhaustedError(
                f"log of interval touching zero: [{float(self.lo)}, {float(self.hi)}]"
            )
        return _interval_via_mpmath("log", self, prec)

    def exp(self, prec: int) -> "RealBall":
        return _interval_via_mpmath("exp", self, prec)

    def sqrt(self, prec: int) -> "RealBall":
        if self.lo < 0:
            raise DomainError("sqrt of an interval with negative part")
        return _interval_via_mpmath("sqrt", self, prec)


def ball_max(*balls: RealBall) -> RealBall:
    return RealBall(max(b.lo for b in balls), max(b.hi for b in balls))


def ball_min(*balls: RealBall) -> RealBall:
    return RealBall(min(b.lo for b in balls), min(b.hi for b in balls))


def pi_ball(prec: int) -> RealBall:
    ctx = _ctx(prec)
    lo, hi = ctx.pi._mpi_
    return RealBall(_raw_to_fraction(lo), _raw_to_fraction(hi))


def log_ball(q, prec: int) -> RealBall:
    """Certified enclosure of log(q) for a positive rational q."""
    return RealBall.exact(q).log(prec)


class ComplexBall:
    """Rectangular complex interval: independent real and imaginary RealBalls."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=None):
        if not isinstance(re, RealBall):
            re = RealBall.exact(re)
        if im is None:
            im = RealBall.exact(0)
        elif not isinstance(im, RealBall):
            im = RealBall.exact(im)
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    def __setattr__(self, *a):
        raise AttributeError("ComplexBall is immutable")

    @classmethod
    def exact(cls, re, im=0) -> "ComplexBall":
        return cls(RealBall.exact(re), RealBall.exact(im))

    def __repr__(self):
        return f"ComplexBall({float(self.re.mid)} + {float(self.im.mid)}j ± {float(max(self.re.rad, self.im.rad)):.3g})"

    def is_real_exact(self) -> bool:
        return self.im.is_exact() and self.im.lo == 0

    def conjugate(self) -> "ComplexBall":
        return ComplexBall(self.re, -self.im)

    def _coerce(self, other):
        if isinstance(other, ComplexBall):
            return other
        if isinstance(other, RealBall):
            return ComplexBall(other)
        if isinstance(other, (int, Rational)):
            return ComplexBall.exact(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ComplexBall(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexBall(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ComplexBall(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ComplexBall(self.re * o.re - self.im * o.im,
                           self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = o.re * o.re + o.im * o.im
        if d.lo <= 0:
            raise DomainError("division by a complex interval containing zero")
        return ComplexBall((self.re * o.re + self.im * o.im) / d,
                           (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o.__truediv__(self)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        r = ComplexBall.exact(1)
        base = self
        while n:
            if n & 1:
                r = r * base
            n >>= 1
            if n:
                base = base * base
        return r

    def abs_squared(self) -> RealBall:
        re2 = self.re * self.re
        im2 = self.im * self.im
        # squares are nonnegative even if the interval product forgot
        return RealBall(max(_Q(0), re2.lo) + max(_Q(0), im2.lo), re2.hi + im2.hi)

    def abs(self, prec: int) -> RealBall:
        return self.abs_squared().sqrt(prec)

    def log_abs(self, prec: int) -> RealBall:
        """Certified log|z|; raises if the rectangle touches zero."""
        s = self.abs_squared()
        if s.lo <= 0:
            raise PrecisionExhaustedError("log|z| for a rectangle touching zero")
        return s.log(prec) / 2

    def round(self, prec: int) -> "ComplexBall":
        return ComplexBall(self.re.round(prec), self.im.round(prec))

    def _maybe_round(self, prec: int) -> "ComplexBall":
        return ComplexBall(self.re._maybe_round(prec), self.im._maybe_round(prec))

    def contains(self, re, im=0) -> bool:
        return self.re.contains(re) and self.im.contains(im)

    def overlaps(self, other: "ComplexBall") -> bool:
        return self.re.overlaps(other.re) and self.im.overlaps(other.im)

    def contained_in(self, other: "ComplexBall") -> bool:
        return (other.re.lo < self.re.lo and self.re.hi < other.re.hi
                and other.im.lo < self.im.lo and self.im.hi < other.im.hi)
