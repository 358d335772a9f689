"""Factorization over Q: factor mod a good prime, Hensel lift, recombine.

Degrees in this project stay small (tens), so naive subset recombination
against a Landau-Mignotte bound is acceptable.  Non-monic input is handled
through the classic monic rescaling F(y) = lc^(n-1) * f(y/lc).
"""

from __future__ import annotations

from itertools import combinations
from math import gcd as int_gcd, isqrt

from . import modpoly
from .polys import Poly, squarefree_decomposition


def _int_primitive(f: Poly) -> list[int]:
    """Primitive integer coefficients with positive leading coefficient."""
    ics, _ = f.int_coeffs()
    g = 0
    for c in ics:
        g = int_gcd(g, abs(c))
    if ics[-1] < 0:
        g = -g
    return [c // g for c in ics]


def _make_primitive(cs: list[int]) -> list[int]:
    g = 0
    for c in cs:
        g = int_gcd(g, abs(c))
    if g == 0:
        return list(cs)
    if cs[-1] < 0:
        g = -g
    return [c // g for c in cs]


def _symmetric(c: int, m: int) -> int:
    c %= m
    return c - m if 2 * c > m else c


def _mul_mod(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % m
    while out and out[-1] == 0:
        out.pop()
    return out


def _exact_int_div(f, g):
    """f // g over Z if the division is exact, else None."""
    if not g or len(g) > len(f):
        return None
    rem = list(f)
    dq = len(rem) - len(g)
    quo = [0] * (dq + 1)
    for k in range(dq, -1, -1):
        num = rem[k + len(g) - 1]
        if num % g[-1]:
            return None
        c = num // g[-1]
        quo[k] = c
        if c:
            for j, y in enumerate(g):
                rem[k + j] -= c * y
    if any(rem):
        return None
    return quo


def _next_prime(p: int) -> int:
    p += 1
    while not modpoly._is_probable_prime(p):
        p += 1
    return p


# -- Hensel machinery ----------------------------------------------------------


def _gf_xgcd(a, b, p):
    r0 = modpoly.gf_from_int_coeffs(a, p)
    r1 = modpoly.gf_from_int_coeffs(b, p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = modpoly.gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, modpoly.gf_sub(s0, modpoly.gf_mul(q, s1, p), p)
        t0, t1 = t1, modpoly.gf_sub(t0, modpoly.gf_mul(q, t1, p), p)
    inv = pow(r0[-1], p - 2, p)
    return (modpoly.gf_scalar(r0, inv, p), modpoly.gf_scalar(s0, inv, p),
            modpoly.gf_scalar(t0, inv, p))


def _hensel_step(f, g, h, s, t, m):
    """Quadratic Hensel step (von zur Gathen & Gerhard, alg. 15.10).

    Given f = g*h and s*g + t*h = 1 (mod m) with g, h monic, returns the
    lifted (g, h, s, t) valid mod m**2.
    """
    m2 = m * m

    def red(cs):
        out = [c % m2 for c in cs]
        while out and out[-1] == 0:
            out.pop()
        return out

    def mul(a, b):
        return _mul_mod(a, b, m2)

    def add(a, b):
        n = max(len(a), len(b))
        return red([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                    for i in range(n)])

    def sub(a, b):
        n = max(len(a), len(b))
        return red([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)
                    for i in range(n)])

    def divmod_monic(a, b):
        rem = list(a)
        dq = len(rem) - len(b)
        if dq < 0:
            return [], red(rem)
        quo = [0] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + len(b) - 1] % m2
            quo[k] = c
            if c:
                for j, y in enumerate(b):
                    rem[k + j] = (rem[k + j] - c * y) % m2
        return red(quo), red(rem)

    e = sub(f, mul(g, h))
    q, r = divmod_monic(mul(s, e), h)
    g1 = add(g, add(mul(t, e), mul(q, g)))
    h1 = add(h, r)
    b = sub(add(mul(s, g1), mul(t, h1)), [1])
    c, d = divmod_monic(mul(s, b), h1)
    s1 = sub(s, d)
    t1 = sub(t, add(mul(t, b), mul(c, g1)))
    return g1, h1, s1, t1


def hensel_lift_pair(f, g, h, p, modulus):
    """Lift f = g*h from mod p to the given modulus (a 2-power tower of p)."""
    _, s, t = _gf_xgcd(g, h, p)
    g = [c % p for c in g]
    h = [c % p for c in h]
    m = p
    while m < modulus:
        fm = [c % (m * m) for c in f]
        g, h, s, t = _hensel_step(fm, g, h, s, t, m)
        m = m * m
    return g, h


def _lift_tree(F, factors, p, modulus):
    """Lift a coprime monic mod-p factorization of monic F to the modulus."""
    if len(factors) == 1:
        return [[c % modulus for c in F]]
    half = len(factors) // 2
    left, right = factors[:half], factors[half:]
    g = [1]
    for u in left:
        g = modpoly.gf_mul(g, u, p)
    h = [1]
    for u in right:
        h = modpoly.gf_mul(h, u, p)
    G, H = hensel_lift_pair(F, g, h, p, modulus)
    return _lift_tree(G, left, p, modulus) + _lift_tree(H, right, p, modulus)


def _modulus_for(p: int, bound: int) -> int:
    m = p
    while m < bound:
        m *= m
    return m


# -- the main routine -----------------------------------------------------------


def factor_squarefree_primitive(f_int: list[int], seed: int = 0) -> list[list[int]]:
    """Factor a squarefree primitive integer polynomial into integer irreducibles."""
    n = len(f_int) - 1
    if n <= 1:
        return [list(f_int)]
    lc = f_int[-1]

    p = 1
    while True:
        p = _next_prime(p)
        if lc % p == 0:
            continue
        fp = modpoly.gf_from_int_coeffs(f_int, p)
        if len(fp) - 1 != n:
            continue
        if modpoly.gf_gcd(fp, modpoly.gf_derivative(fp, p), p) == [1]:
            break

    modular = [g for g, _ in modpoly.gf_factor(fp, p, seed)]
    if len(modular) == 1:
        return [list(f_int)]

    # monic rescale: F(y) = lc^(n-1) f(y/lc); roots scale by lc
    F = [f_int[i] * lc ** (n - 1 - i) for i in range(n)] + [1]
    # corresponding monic mod-p factors of F: b^deg * g(y/b), b = lc
    lci = pow(lc % p, p - 2, p)
    scaled = [modpoly.gf_monic([g[i] * pow(lci, i, p) % p for i in range(len(g))], p)
              for g in modular]

    norm2_F = isqrt(sum(c * c for c in F)) + 1
    bound = (1 << n) * norm2_F
    modulus = _modulus_for(p, 2 * bound + 1)
    lifted = _lift_tree(F, scaled, p, modulus)

    def candidate(combo):
        prod = [1]
        for i in combo:
            prod = _mul_mod(prod, lifted[i], modulus)
        cand = [_symmetric(c, modulus) for c in prod]
        # map factor of F back to a factor of f via y = lc*x
        mapped = [cand[i] * lc ** i for i in range(len(cand))]
        return _make_primitive(mapped)

    factors = []
    remaining = list(range(len(lifted)))
    f_cur = list(f_int)
    k = 1
    while 2 * k <= len(remaining):
        progress = True
        while progress and 2 * k <= len(remaining):
            progress = False
            for combo in combinations(remaining, k):
                cand = candidate(combo)
                if len(cand) - 1 != sum(len(lifted[i]) - 1 for i in combo):
                    continue
                q = _exact_int_div(f_cur, cand)
                if q is not None:
                    factors.append(cand)
                    f_cur = q
                    remaining = [i for i in remaining if i not in combo]
                    progress = True
                    break
        k += 1
    if len(f_cur) > 1:
        factors.append(_make_primitive(f_cur))
    return factors


def factor_over_Q(f: Poly, seed: int = 0) -> list[tuple[Poly, int]]:
    """Factor a nonzero rational polynomial into monic irreducibles over Q.

    Returns [(factor, multiplicity)] sorted by degree then coefficients; the
    product of factor^multiplicity reconstructs f up to its content constant.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if f.degree <= 0:
        return []
    out = []
    for sq, mult in squarefree_decomposition(f):
        f_int = _int_primitive(sq)
        for g in factor_squarefree_primitive(f_int, seed):
            out.append((Poly(g).monic(), mult))
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs))
    return out


def is_irreducible_over_Q(f: Poly, seed: int = 0) -> bool:
    if f.degree <= 0:
        return False
    facs = factor_over_Q(f, seed)
    return len(facs) == 1 and facs[0][1] == 1 and facs[0][0].degree == f.degree
