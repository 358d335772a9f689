"""Certified isolation of the complex roots of a rational polynomial.

Real roots come from exact Sturm bisection.  Nonreal roots start from
floating approximations (mpmath.polyroots at generous working precision)
and are then certified one by one with an interval Newton step: a box Z
with N(Z) = mid(Z) - f(mid)/f'(Z) strictly inside Z contains exactly one
root.  Certification failures double the working precision; running out of
budget raises RefinementFailedError.
"""

from __future__ import annotations

from fractions import Fraction

from mpmath.ctx_mp import MPContext

from .balls import ComplexBall, RealBall
from .errors import RefinementFailedError
from .polys import (Poly, isolate_real_roots, refine_root_interval,
                    squarefree_part)

_Q = Fraction


def _refine_real(f: Poly, lo, hi, width) -> tuple[Fraction, Fraction]:
    """Robust sign bisection on an isolating interval (lo, hi]."""
    fhi = f(hi)
    if fhi == 0:
        return hi, hi
    flo = f(lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        fmid = f(mid)
        if fmid == 0:
            return mid, mid
        if flo != 0:
            if (flo > 0) != (fmid > 0):
                hi, fhi = mid, fmid
            else:
                lo, flo = mid, fmid
        else:
            # lo sits on a root outside the interval; steer by the hi sign
            if (fmid > 0) != (fhi > 0):
                lo, flo = mid, fmid
            else:
                hi, fhi = mid, fmid
    return lo, hi


def _mpf_to_fraction(x) -> Fraction:
    from mpmath.libmp import to_rational
    p, q = to_rational(x._mpf_)
    return _Q(int(p), int(q))


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational with smallest denominator in [lo, hi] (Stern-Brocot walk)."""
    lo, hi = _Q(lo), _Q(hi)
    if lo > hi:
        raise ValueError("empty interval")
    if lo == hi:
        return lo
    fl = lo.__floor__()
    if fl + 1 <= hi:
        # an integer lies inside
        return _Q(max(fl + (0 if lo == fl else 1), lo.__ceil__()))
    frac_lo = lo - fl
    if frac_lo == 0:
        return _Q(fl)
    return fl + 1 / simplest_between(1 / (hi - fl), 1 / frac_lo)


def _approx_roots(f: Poly, dps: int):
    ctx = MPContext()
    ctx.dps = dps
    num, _ = f.int_coeffs()
    coeffs = [ctx.mpf(c) for c in reversed(num)]
    return ctx.polyroots(coeffs, maxsteps=200, extraprec=80)


def _certify_box(f: Poly, df: Poly, center: ComplexBall, rad: Fraction,
                 prec: int) -> ComplexBall | None:
    """Interval Newton: return a certified shrinking box around one root, or None."""
    box = ComplexBall(
        RealBall(center.re.lo - rad, center.re.hi + rad),
        RealBall(center.im.lo - rad, center.im.hi + rad),
    )
    cur = box
    for _ in range(prec.bit_length() + 30):
        c = ComplexBall.exact(cur.re.mid, cur.im.mid)
        fc = f.eval_ball(c, prec + 16)
        dfz = df.eval_ball(cur, prec + 16)
        if dfz.abs_squared().lo <= 0:
            return None
        n = (c - fc / dfz)._maybe_round(prec + 16)
        if not n.contained_in(cur):
            return None
        # intersect to keep shrinking
        new = ComplexBall(
            RealBall(max(n.re.lo, cur.re.lo), min(n.re.hi, cur.re.hi)),
            RealBall(max(n.im.lo, cur.im.lo), min(n.im.hi, cur.im.hi)),
        )
        tol = _Q(1, 1 << prec)
        scale = max(_Q(1), abs(new.re.mid), abs(new.im.mid))
        if new.re.rad <= tol * scale and new.im.rad <= tol * scale:
            return new
        if new.re.rad == cur.re.rad and new.im.rad == cur.im.rad:
            return new  # stalled but certified
        cur = new
    return cur


def isolate_complex_roots(f: Poly, prec: int = 64) -> list[ComplexBall]:
    """One certified, pairwise disjoint ball per distinct complex root of f.

    Works on the squarefree part.  Real roots are exact-real balls (zero
    imaginary part); nonreal roots come in adjacent conjugate pairs, the
    positive-imaginary representative first.
    """
    if prec < 32:
        raise ValueError("precision must be at least 32 bits")
    g = squarefree_part(f)
    if g.degree <= 0:
        return []
    deg = g.degree
    width = _Q(1, 1 << (prec + 8))

    real_balls = []
    for lo0, hi0 in isolate_real_roots(g):
        lo, hi = _refine_real(g, lo0, hi0, width)
        if lo != hi:
            # pin rational roots exactly: the simplest fraction in a tight
            # isolating interval is the root whenever the root is rational
            cand = simplest_between(lo, hi)
            if g(cand) == 0:
                lo = hi = cand
        real_balls.append(ComplexBall(RealBall(lo, hi), RealBall.exact(0)))
    n_upper, odd = divmod(deg - len(real_balls), 2)
    if odd:
        raise RefinementFailedError("real root count has wrong parity")
    if n_upper == 0:
        return real_balls

    dg = g.derivative()
    workprec = max(prec, 64)
    attempts = 0
    while attempts < 5:
        dps = int(workprec * 0.31) + 25
        try:
            approx = _approx_roots(g, dps)
        except Exception:
            workprec *= 2
            attempts += 1
            continue
        upper = [z for z in approx if z.imag > 0]
        if len(upper) != n_upper:
            workprec *= 2
            attempts += 1
            continue
        certified = []
        ok = True
        for z in upper:
            cre = _mpf_to_fraction(z.real)
            cim = _mpf_to_fraction(z.imag)
            center = ComplexBall.exact(cre, cim)
            ball = None
            for shift in (workprec, workprec // 2, workprec // 4, 8):
                rad = _Q(1, 1 << max(shift, 4)) * max(_Q(1), abs(cre), abs(cim))
                ball = _certify_box(g, dg, center, rad, prec)
                if ball is not None:
                    break
            if ball is None or ball.im.lo <= 0:
                ok = False
                break
            certified.append(ball)
        if ok:
            balls = real_balls + [b for u in certified for b in (u, u.conjugate())]
            if _pairwise_disjoint(balls):
                return _ordered(real_balls, certified)
        workprec *= 2
        attempts += 1
    raise RefinementFailedError(
        f"could not certify all roots of {f} within the precision budget")


def _pairwise_disjoint(balls: list[ComplexBall]) -> bool:
    for i in range(len(balls)):
        for j in range(i + 1, len(balls)):
            if balls[i].overlaps(balls[j]):
                return False
    return True


def _ordered(real_balls, upper_balls) -> list[ComplexBall]:
    real_sorted = sorted(real_balls, key=lambda b: b.re.mid)
    upper_sorted = sorted(upper_balls, key=lambda b: (b.re.mid, b.im.mid))
    out = list(real_sorted)
    for u in upper_sorted:
        out.append(u)
        out.append(u.conjugate())
    return out
