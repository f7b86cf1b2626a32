from fractions import Fraction

import sympy
from hypothesis import given, strategies as st
from sympy.polys.subresultants_qq_zz import sylvester

from desingkit.factor import factorize, irreducible_factors
from desingkit.poly import (
    RatPoly,
    interpolate,
    poly_gcd,
    resultant,
    squarefree_decomposition,
    squarefree_part,
)

x = RatPoly.x()
one = RatPoly.const(1)
X = sympy.Symbol("x")


def P(*coeffs):
    """Coefficients lowest degree first."""
    return RatPoly(coeffs)


def to_sympy(f):
    return sympy.Poly(list(reversed(f.coeffs)) or [0], X, domain="QQ")


def from_sympy(p):
    cs = [Fraction(int(c.p), int(c.q)) for c in reversed(p.all_coeffs())]
    return RatPoly(cs)


polys = st.lists(st.integers(-6, 6), min_size=1, max_size=6).map(RatPoly).filter(bool)


def test_gcd_examples():
    assert poly_gcd(P(-1, 0, 1), P(-1, 1)) == P(-1, 1)
    assert poly_gcd(P(-2, 0, 1), P(-3, 0, 1)) == one
    f = P(2, 0, 4)
    assert poly_gcd(f, f) == f.monic()


def test_squarefree_examples():
    assert squarefree_part(x * x) == x
    f = (x - one) ** 2 * (x + RatPoly.const(2))
    assert squarefree_part(f) == (x - one) * (x + RatPoly.const(2))
    assert squarefree_part(P(-4, 0, 2)) == P(-2, 0, 1)


def test_resultant_examples():
    assert resultant(P(-1, 1), P(-2, 1)) == -1
    # product of g over the roots of f: g(-1)^1 with g = x^3
    assert resultant(P(1, 1), P(0, 0, 0, 1)) == -1
    assert resultant(x, x) == 0
    assert resultant(P(-2, 0, 1), P(-2, 0, 1)) == 0


def test_factor_examples():
    assert factorize(P(-1, 0, 1))[1] == [(P(-1, 1), 1), (P(1, 1), 1)]
    assert irreducible_factors(P(-2, 0, 1)) == [P(-2, 0, 1)]
    assert sorted(irreducible_factors(P(-1, 0, 0, 0, 1)), key=lambda f: (f.degree, f.coeffs)) == [
        P(-1, 1), P(1, 1), P(1, 0, 1)
    ]


def test_factor_with_multiplicity_and_unit():
    f = RatPoly.const(3) * (x - one) ** 3 * P(1, 0, 1)
    unit, facs = factorize(f)
    assert unit == 3
    assert sorted(facs, key=lambda p: p[0].degree) == [(P(-1, 1), 3), (P(1, 0, 1), 1)]


def test_swinnerton_dyer_stays_irreducible():
    # x^4 - 10x^2 + 1 splits modulo every prime
    assert irreducible_factors(P(1, 0, -10, 0, 1)) == [P(1, 0, -10, 0, 1)]


def test_interpolate():
    pts = [(Fraction(k), Fraction(k * k - 3)) for k in range(4)]
    assert interpolate(pts) == P(-3, 0, 1)


@given(polys, polys)
def test_gcd_matches_sympy(f, g):
    ref = sympy.gcd(to_sympy(f), to_sympy(g))
    assert poly_gcd(f, g) == from_sympy(ref.monic())


@given(polys, polys)
def test_resultant_matches_sympy(f, g):
    if f.degree >= 1 and g.degree >= 1:
        # sympy.resultant can differ in sign from the Sylvester determinant
        # (e.g. x + 1, x^3), so the exact oracle is sympy's own Sylvester matrix
        fs, gs = to_sympy(f).as_expr(), to_sympy(g).as_expr()
        ours = resultant(f, g)
        assert ours == Fraction(str(sylvester(fs, gs, X).det()))
        assert abs(ours) == abs(Fraction(str(sympy.resultant(fs, gs, X))))


@given(polys, polys)
def test_divmod_identity(f, g):
    q, r = f.divmod(g)
    assert q * g + r == f
    assert not r or r.degree < g.degree


@given(polys)
def test_squarefree_decomposition_recomposes(f):
    if f.degree >= 1:
        prod = RatPoly.const(1)
        for p, k in squarefree_decomposition(f):
            prod = prod * p ** k
        assert prod == f.monic()
        assert poly_gcd(squarefree_part(f), squarefree_part(f).derivative()) == one


@given(st.lists(polys, min_size=1, max_size=3))
def test_factorize_matches_sympy(ps):
    f = RatPoly.const(1)
    for p in ps:
        f = f * p
    if f.degree < 1:
        return
    unit, facs = factorize(f)
    _, ref = sympy.factor_list(to_sympy(f))
    ours = sorted((p.coeffs, k) for p, k in facs)
    theirs = sorted((from_sympy(p.monic()).coeffs, k) for p, k in ref)
    assert ours == theirs
    prod = RatPoly.const(unit)
    for p, k in facs:
        prod = prod * p ** k
    assert prod == f
