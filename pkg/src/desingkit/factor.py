"""Factorization over Q by the Zassenhaus method.

Squarefree parts are factored modulo a small good prime (Cantor-Zassenhaus
with a fixed seed), lifted with quadratic Hensel steps past a Mignotte-type
coefficient bound, and recombined by trial division in Z[x]. Everything
stays exact; the prime-side randomness only affects speed, never results.

Integer polynomials here are lists of ints, lowest degree first.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import gcd, isqrt

from .exactmath import DomainError
from .poly import RatPoly, squarefree_decomposition

_PRIMES = [p for p in range(3, 2000) if all(p % q for q in range(2, isqrt(p) + 1))]


# --- arithmetic in F_p[x] -------------------------------------------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, p):
    return _trim([x % p for x in a])


def _psub(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pmod(out, p)


def _pdivmod(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        f = a[-1] * inv % p
        s = len(a) - len(b)
        q[s] = f
        for i, c in enumerate(b):
            a[s + i] = (a[s + i] - f * c) % p
        _trim(a)
    return _trim(q), a


def _pmonic(a, p):
    inv = pow(a[-1], -1, p)
    return [x * inv % p for x in a]


def _pgcd(a, b, p):
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    return _pmonic(a, p) if a else a


def _pgcdex(a, b, p):
    """``s a + t b = g`` over F_p with ``g`` monic."""
    r0, r1 = a, b
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1, p), p)
        t0, t1 = t1, _psub(t0, _pmul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    return [x * inv % p for x in s0], [x * inv % p for x in t0], _pmonic(r0, p)


def _ppowmod(base, e, mod, p):
    out = [1]
    base = _pdivmod(base, mod, p)[1]
    while e:
        if e & 1:
            out = _pdivmod(_pmul(out, base, p), mod, p)[1]
        base = _pdivmod(_pmul(base, base, p), mod, p)[1]
        e >>= 1
    return out


def _distinct_degree(f, p):
    out = []
    x = [0, 1]
    h = x
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = _ppowmod(h, p, f, p)
        g = _pgcd(f, _psub(h, x, p), p)
        if len(g) > 1:
            out.append((g, d))
            f = _pdivmod(f, g, p)[0]
            h = _pdivmod(h, f, p)[1]
    if len(f) > 1:
        out.append((_pmonic(f, p), len(f) - 1))
    return out


def _equal_degree(f, d, p, rng):
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = _pmod([rng.randrange(p) for _ in range(n)], p)
        if len(a) < 2:
            continue
        b = _psub(_ppowmod(a, (p**d - 1) // 2, f, p), [1], p)
        g = _pgcd(f, b, p)
        if 1 < len(g) < len(f):
            return _equal_degree(g, d, p, rng) + _equal_degree(_pdivmod(f, g, p)[0], d, p, rng)


def factor_mod_p(f, p, seed=0):
    """Monic irreducible factors of a squarefree polynomial over F_p (odd p)."""
    rng = random.Random(seed)
    f = _pmonic(_pmod(f, p), p)
    out = []
    for g, d in _distinct_degree(f, p):
        out.extend(_equal_degree(g, d, p, rng))
    return sorted(out)


# --- Hensel lifting -------------------------------------------------------

def _zmod(a, m):
    return _trim([x % m for x in a])


def _symmetric(a, m):
    half = m // 2
    return _trim([x - m if x > half else x for x in (y % m for y in a)])


def _zmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _zsub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _zadd(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _zdivmod_monic(a, b, m):
    """Division by a monic ``b`` modulo ``m``."""
    a = [x % m for x in a]
    _trim(a)
    q = [0] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        f = a[-1]
        s = len(a) - len(b)
        q[s] = f
        for i, c in enumerate(b):
            a[s + i] = (a[s + i] - f * c) % m
        _trim(a)
    return _trim(q), a


def _hensel_step(m, f, g, h, s, t):
    """From ``f = g h``, ``s g + t h = 1`` mod ``m`` produce the same mod ``m^2``.

    ``h`` is monic; ``g`` carries the leading coefficient of ``f``.
    """
    M = m * m
    e = _zmod(_zsub(f, _zmul(g, h)), M)
    q, r = _zdivmod_monic(_zmul(s, e), h, M)
    g2 = _zmod(_zadd(_zadd(g, _zmul(t, e)), _zmul(q, g)), M)
    h2 = _zmod(_zadd(h, r), M)
    b = _zmod(_zsub(_zadd(_zmul(s, g2), _zmul(t, h2)), [1]), M)
    c, d = _zdivmod_monic(_zmul(s, b), h2, M)
    s2 = _zmod(_zsub(s, d), M)
    t2 = _zmod(_zsub(_zsub(t, _zmul(t, b)), _zmul(c, g2)), M)
    return g2, h2, s2, t2


def hensel_lift(f, factors, p, k):
    """Lift monic factors of ``f / lc(f)`` mod ``p`` to factors mod ``p^k``.

    Returns monic lifted factors whose product times ``lc(f)`` is ``f`` mod ``p^k``.
    """
    r = len(factors)
    if r == 1:
        lc = f[-1]
        inv = pow(lc, -1, p**k)
        return [_zmod([c * inv for c in f], p**k)]
    left, right = factors[: r // 2], factors[r // 2:]
    g = [f[-1] % p]
    for a in left:
        g = _pmul(g, a, p)
    h = [1]
    for a in right:
        h = _pmul(h, a, p)
    s, t, one = _pgcdex(g, h, p)
    assert one == [1]
    m = p
    while m < p**k:
        g, h, s, t = _hensel_step(m, f, g, h, s, t)
        m *= m
    mk = p**k
    g = _zmod(g, mk)
    h = _zmod(h, mk)
    # g has leading coefficient lc(f); h is monic
    return hensel_lift(g, left, p, k) + hensel_lift(h, right, p, k)


# --- Zassenhaus recombination ---------------------------------------------

def _zdivides(b, a):
    """Exact division in Z[x]; returns quotient or None."""
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        lead = a[-1]
        if lead % b[-1]:
            return None
        f = lead // b[-1]
        s = len(a) - len(b)
        q[s] = f
        for i, c in enumerate(b):
            a[s + i] -= f * c
        _trim(a)
    return None if a else _trim(q)


def _content(a):
    g = 0
    for x in a:
        g = gcd(g, x)
    return g


def _primitive(a):
    g = _content(a)
    if a[-1] < 0:
        g = -g
    return [x // g for x in a]


def zassenhaus(f: list[int]) -> list[list[int]]:
    """Irreducible factors in Z[x] of a primitive squarefree ``f`` with positive leading coefficient."""
    n = len(f) - 1
    if n <= 1:
        return [f]
    lc = f[-1]
    df = [k * c for k, c in enumerate(f)][1:]
    for p in _PRIMES:
        if lc % p == 0:
            continue
        fp = _pmod(f, p)
        if len(_pgcd(fp, _pmod(df, p), p)) == 1:
            break
    else:
        raise DomainError("no good prime found")
    modular = factor_mod_p(f, p)
    if len(modular) == 1:
        return [f]
    norm = isqrt(sum(c * c for c in f)) + 1
    bound = 2 * abs(lc) * (2**n) * norm
    k = 1
    while p**k <= 2 * bound:
        k += 1
    lifted = hensel_lift(f, modular, p, k)
    mod = p**k
    result = []
    remaining = list(range(len(lifted)))
    size = 1
    while 2 * size <= len(remaining):
        found = False
        for subset in combinations(remaining, size):
            g = [lc]
            for i in subset:
                g = _zmod(_zmul(g, lifted[i]), mod)
            g = _primitive(_symmetric(g, mod))
            q = _zdivides(g, f)
            if q is None:
                continue
            result.append(g)
            f = _primitive(q)
            lc = f[-1]
            remaining = [i for i in remaining if i not in subset]
            found = True
            break
        if not found:
            size += 1
    result.append(f)
    return result


def factorize(f: RatPoly) -> tuple[Fraction, list[tuple[RatPoly, int]]]:
    """``f = unit * prod g_i^{e_i}`` with monic irreducible ``g_i`` over Q.

    Factors are sorted by (degree, coefficients).
    """
    if not f:
        raise DomainError("cannot factor the zero polynomial")
    unit = f.lc
    out = []
    for part, mult in squarefree_decomposition(f):
        _, ints = part.integer_primitive()
        for g in zassenhaus(ints):
            out.append((RatPoly(g).monic(), mult))
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs))
    return unit, out


def irreducible_factors(f: RatPoly) -> list[RatPoly]:
    """Distinct monic irreducible factors, multiplicities dropped."""
    return [g for g, _ in factorize(f)[1]]
