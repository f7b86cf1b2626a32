"""Dense univariate polynomials over Q."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .exactmath import DomainError, det, to_fraction


def _strip(cs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True, order=True)
class RatPoly:
    """Coefficients lowest degree first; the zero polynomial has no coefficients."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _strip(to_fraction(c) for c in coeffs))

    @classmethod
    def x(cls) -> "RatPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "RatPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        return f"RatPoly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)}*{mono}" if mono else f"{abs(c)}"
            terms.append(("-" if c < 0 else "+", s))
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, s in terms[1:]:
            out += f" {sign} {s}"
        return out

    def __add__(self, other: "RatPoly") -> "RatPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RatPoly(x + y for x, y in zip(a, b))

    def __neg__(self) -> "RatPoly":
        return RatPoly(-c for c in self.coeffs)

    def __sub__(self, other: "RatPoly") -> "RatPoly":
        return self + (-other)

    def __mul__(self, other) -> "RatPoly":
        if not isinstance(other, RatPoly):
            return RatPoly(c * to_fraction(other) for c in self.coeffs)
        if not self or not other:
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RatPoly":
        out = RatPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, other: "RatPoly") -> tuple["RatPoly", "RatPoly"]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        q = [Fraction(0)] * max(len(r) - other.degree, 1)
        inv = 1 / other.lc
        while len(r) - 1 >= other.degree and any(r):
            shift = len(r) - 1 - other.degree
            f = r[-1] * inv
            q[shift] = f
            for i, c in enumerate(other.coeffs):
                r[shift + i] -= f * c
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        return RatPoly(q), RatPoly(r)

    def __floordiv__(self, other: "RatPoly") -> "RatPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "RatPoly") -> "RatPoly":
        return self.divmod(other)[1]

    def exact_div(self, other: "RatPoly") -> "RatPoly":
        q, r = self.divmod(other)
        if r:
            raise DomainError(f"{other} does not divide {self}")
        return q

    def derivative(self) -> "RatPoly":
        return RatPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def monic(self) -> "RatPoly":
        if not self:
            return self
        inv = 1 / self.lc
        return RatPoly(c * inv for c in self.coeffs)

    def compose(self, other: "RatPoly") -> "RatPoly":
        out = RatPoly()
        for c in reversed(self.coeffs):
            out = out * other + RatPoly.const(c)
        return out

    def integer_primitive(self) -> tuple[Fraction, list[int]]:
        """``self == content * P`` with ``P`` a primitive integer polynomial, ``lc(P) > 0``."""
        if not self:
            raise DomainError("zero polynomial")
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), [v // g for v in ints]

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]


def poly_gcd(f: RatPoly, g: RatPoly) -> RatPoly:
    """Monic gcd by the Euclidean algorithm."""
    if not f and not g:
        raise DomainError("gcd of two zero polynomials")
    a, b = f, g
    while b:
        a, b = b, a % b
    return a.monic()


def squarefree_part(f: RatPoly) -> RatPoly:
    if not f:
        raise DomainError("squarefree part of the zero polynomial")
    if f.degree == 0:
        return RatPoly.const(1)
    return f.exact_div(poly_gcd(f, f.derivative())).monic()


def squarefree_decomposition(f: RatPoly) -> list[tuple[RatPoly, int]]:
    """Yun's algorithm: monic pairwise coprime squarefree ``a_i`` with ``f ~ prod a_i^i``."""
    if not f:
        raise DomainError("zero polynomial")
    out = []
    if f.degree == 0:
        return out
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f.exact_div(a)
    c = df.exact_div(a)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        ai = poly_gcd(b, d)
        b = b.exact_div(ai)
        c = d.exact_div(ai)
        d = c - b.derivative()
        if ai.degree > 0:
            out.append((ai.monic(), i))
        i += 1
    return out


def _sylvester(f: list[int], g: list[int]) -> list[list[int]]:
    """Sylvester matrix from coefficient lists given highest degree first."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + f + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + g + [0] * (size - n - 1 - i))
    return rows


def resultant(f: RatPoly, g: RatPoly) -> Fraction:
    """Resultant as the Sylvester determinant (f rows first)."""
    if not f or not g:
        raise DomainError("resultant with the zero polynomial")
    cf, F = f.integer_primitive()
    cg, G = g.integer_primitive()
    m, n = f.degree, g.degree
    if m == 0 and n == 0:
        return Fraction(1)
    d = det(_sylvester(F[::-1], G[::-1]))
    return cf**n * cg**m * d


def interpolate(points: Sequence[tuple[Fraction, Fraction]]) -> RatPoly:
    """Lagrange interpolation through distinct abscissae."""
    out = RatPoly()
    for i, (xi, yi) in enumerate(points):
        if yi == 0:
            continue
        term = RatPoly.const(yi)
        for j, (xj, _) in enumerate(points):
            if j != i:
                term = term * RatPoly((-Fraction(xj) / (xi - xj), Fraction(1) / (xi - xj)))
        out = out + term
    return out
