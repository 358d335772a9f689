"""Polynomials over F_p and their factorization.

Squarefree decomposition, then distinct-degree, then randomized equal-degree
splitting (Cantor-Zassenhaus; trace splitting at p = 2).  The splitting RNG
is always explicitly seeded so factorizations are reproducible.
"""

from __future__ import annotations

import random

from .errors import InvalidModulusError

# low-level routines work on plain lists of ints in [0, p), constant term first


def _trim(cs: list[int]) -> list[int]:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def gf_from_int_coeffs(coeffs, p: int) -> list[int]:
    return _trim([int(c) % p for c in coeffs])


def gf_add(f, g, p):
    n = max(len(f), len(g))
    return _trim([((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p
                  for i in range(n)])


def gf_sub(f, g, p):
    n = max(len(f), len(g))
    return _trim([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p
                  for i in range(n)])


def gf_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] = (out[i + j] + a * b) % p
    return _trim(out)


def gf_scalar(f, c, p):
    c %= p
    return _trim([a * c % p for a in f])


def gf_monic(f, p):
    if not f:
        return []
    inv = pow(f[-1], p - 2, p)
    return gf_scalar(f, inv, p)


def gf_divmod(f, g, p):
    if not g:
        raise ZeroDivisionError("mod-p division by zero")
    rem = list(f)
    dq = len(rem) - len(g)
    if dq < 0:
        return [], _trim(rem)
    inv = pow(g[-1], p - 2, p)
    quo = [0] * (dq + 1)
    for k in range(dq, -1, -1):
        c = rem[k + len(g) - 1] * inv % p
        quo[k] = c
        if c:
            for j, b in enumerate(g):
                rem[k + j] = (rem[k + j] - c * b) % p
    return _trim(quo), _trim(rem)


def gf_mod(f, g, p):
    return gf_divmod(f, g, p)[1]


def gf_gcd(f, g, p):
    a, b = list(f), list(g)
    while b:
        a, b = b, gf_mod(a, b, p)
    return gf_monic(a, p)


def gf_pow_mod(f, e: int, m, p):
    r = [1]
    base = gf_mod(f, m, p)
    while e:
        if e & 1:
            r = gf_mod(gf_mul(r, base, p), m, p)
        e >>= 1
        if e:
            base = gf_mod(gf_mul(base, base, p), m, p)
    return r


def gf_derivative(f, p):
    return _trim([i * c % p for i, c in enumerate(f)][1:])


def gf_eval(f, x, p):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def _gf_pth_root(f, p):
    # f = g(x^p) over F_p implies g has the same coefficients (Frobenius fixes F_p)
    return _trim([f[i] for i in range(0, len(f), p)])


def gf_squarefree_decomposition(f, p):
    """Yun over F_p with the p-th power fallback; returns [(g, multiplicity)]."""
    out = []
    f = gf_monic(f, p)

    def rec(f, mult):
        if len(f) <= 1:
            return
        df = gf_derivative(f, p)
        if not df:
            rec(_gf_pth_root(f, p), mult * p)
            return
        g = gf_gcd(f, df, p)
        w = gf_divmod(f, g, p)[0]
        i = 1
        while len(w) > 1:
            y = gf_gcd(w, g, p)
            z = gf_divmod(w, y, p)[0]
            if len(z) > 1:
                out.append((z, mult * i))
            g = gf_divmod(g, y, p)[0]
            w = y
            i += 1
        if len(g) > 1:
            rec(g, mult * p)

    rec(f, 1)
    # merge duplicates (possible when the p-th power branch recurses)
    merged: dict[tuple, int] = {}
    for g, m in out:
        merged[tuple(g)] = merged.get(tuple(g), 0) + m
    return [(list(g), m) for g, m in sorted(merged.items())]


def gf_distinct_degree(f, p):
    """Distinct-degree factorization of squarefree monic f: [(product, degree)]."""
    out = []
    h = [0, 1]  # x
    g = list(f)
    d = 0
    while len(g) - 1 >= 2 * (d + 1):
        d += 1
        h = gf_pow_mod(h, p, g, p)
        factor = gf_gcd(gf_sub(h, [0, 1], p), g, p)
        if len(factor) > 1:
            out.append((factor, d))
            g = gf_divmod(g, factor, p)[0]
            h = gf_mod(h, g, p)
    if len(g) > 1:
        out.append((g, len(g) - 1))
    return out


def gf_equal_degree_split(f, d: int, p: int, rng: random.Random):
    """Cantor-Zassenhaus split of monic squarefree f, all factors of degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = [rng.randrange(p) for _ in range(n)]
        a = _trim(a)
        if len(a) <= 1:
            continue
        g = gf_gcd(a, f, p)
        if 1 < len(g) < len(f):
            pass  # lucky split
        elif p == 2:
            t = list(a)
            acc = list(a)
            for _ in range(d - 1):
                acc = gf_mod(gf_mul(acc, acc, p), f, p)
                t = gf_add(t, acc, p)
            g = gf_gcd(t, f, p)
        else:
            e = (p ** d - 1) // 2
            b = gf_pow_mod(a, e, f, p)
            g = gf_gcd(gf_sub(b, [1], p), f, p)
        if 1 < len(g) < len(f):
            left = gf_equal_degree_split(g, d, p, rng)
            right = gf_equal_degree_split(gf_divmod(f, g, p)[0], d, p, rng)
            return left + right


def gf_factor(coeffs, p: int, seed: int = 0) -> list[tuple[list[int], int]]:
    """Full factorization over F_p: list of (monic irreducible, multiplicity).

    Factors are sorted by (degree, coefficients) so output is deterministic
    for a fixed seed.
    """
    f = gf_from_int_coeffs(coeffs, p)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    out = []
    for g, mult in gf_squarefree_decomposition(f, p):
        for h, d in gf_distinct_degree(g, p):
            for irr in gf_equal_degree_split(h, d, p, rng):
                out.append((gf_monic(irr, p), mult))
    out.sort(key=lambda t: (len(t[0]), t[0]))
    return out


def gf_is_irreducible(coeffs, p: int) -> bool:
    f = gf_monic(gf_from_int_coeffs(coeffs, p), p)
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    if not gf_gcd(f, gf_derivative(f, p), p) == [1]:
        return False
    h = gf_pow_mod([0, 1], p ** n, f, p)
    if gf_sub(h, [0, 1], p):
        return False
    # x^(p^(n/q)) - x must be coprime to f for every prime divisor q of n
    q = 2
    m = n
    seen = set()
    while q * q <= m:
        if m % q == 0:
            seen.add(q)
            while m % q == 0:
                m //= q
        q += 1
    if m > 1:
        seen.add(m)
    for q in seen:
        h = gf_pow_mod([0, 1], p ** (n // q), f, p)
        if len(gf_gcd(gf_sub(h, [0, 1], p), f, p)) > 1:
            return False
    return True


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for sp in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class ModPoly:
    """Polynomial over F_p with a validated prime modulus."""

    __slots__ = ("p", "coeffs")

    def __init__(self, coeffs, p: int):
        if not _is_probable_prime(p):
            raise InvalidModulusError(f"modulus {p} is not prime")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", tuple(gf_from_int_coeffs(coeffs, p)))

    def __setattr__(self, *a):
        raise AttributeError("ModPoly is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other):
        return (isinstance(other, ModPoly) and self.p == other.p
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        return f"ModPoly({list(self.coeffs)}, p={self.p})"

    def __mul__(self, other):
        if not isinstance(other, ModPoly) or other.p != self.p:
            return NotImplemented
        return ModPoly(gf_mul(list(self.coeffs), list(other.coeffs), self.p), self.p)

    def __pow__(self, n: int):
        r = ModPoly([1], self.p)
        base = self
        while n:
            if n & 1:
                r = r * base
            n >>= 1
            if n:
                base = base * base
        return r


def factor_mod_p(f: ModPoly, seed: int = 0) -> list[tuple[ModPoly, int]]:
    """Factor a nonzero ModPoly into monic irreducibles with multiplicities."""
    if not f.coeffs:
        raise ValueError("cannot factor the zero polynomial")
    return [(ModPoly(g, f.p), m) for g, m in gf_factor(list(f.coeffs), f.p, seed)]
