import random
from fractions import Fraction

import mpmath
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from desingkit.acceptance import random_squarefree
from desingkit.belyi import (
    BelyiState,
    DegreeMeasure,
    belyi_run,
    belyi_step,
    critical_values,
    image_poly,
)
from desingkit.exactmath import DomainError
from desingkit.poly import RatPoly, squarefree_part

x = RatPoly.x()
X, Y = sp.symbols("x y")


def P(*coeffs):
    return RatPoly(coeffs)


def expr(f, var=X):
    return sum(sp.Rational(c.numerator, c.denominator) * var**k for k, c in enumerate(f.coeffs))


def sympy_image(f, g):
    """Independent image polynomial: squarefree part of Res_x(f, y - g) via sympy."""
    r = sp.resultant(expr(f), Y - expr(g), X)
    return sp.Poly(sp.sqf_part(r), Y).monic()


def test_image_examples():
    assert image_poly(x, x * x) == x
    assert image_poly(P(-2, 0, 1), P(-2, 0, 1)) == x
    assert image_poly(P(-2, 0, 1), x * x) == P(-2, 1)


def test_critical_examples():
    assert critical_values(x * x) == x
    assert critical_values(P(-2, 0, 1)) == P(2, 1)
    assert critical_values(P(0, -3, 0, 1)) == P(-4, 0, 1)


def test_critical_needs_degree_two():
    with pytest.raises(DomainError):
        critical_values(P(1, 1))


def test_step_x2_minus_2():
    s = BelyiState((P(-2, 0, 1),))
    assert s.measure == DegreeMeasure(2, 1)
    t, rec = belyi_step(s)
    assert t.factors == () and t.sections == (-2, 0)
    assert rec.before.as_tuple() == (2, 1) and rec.after.as_tuple() == (1, 0)


def test_step_x3_minus_2():
    t, rec = belyi_step(BelyiState((P(-2, 0, 0, 1),)))
    assert t.factors == () and t.sections == (-2, 0)
    assert rec.after.as_tuple() == (1, 0)


def test_linear_component_is_never_stored():
    with pytest.raises(DomainError):
        BelyiState((x,))
    # read as a polynomial it becomes a section, and stepping is refused
    s = BelyiState.from_polynomials([x])
    assert s.sections == (0,)
    with pytest.raises(DomainError, match="already separated"):
        belyi_step(s)


def test_run_on_sectioned_state_is_identity():
    s = BelyiState((), (Fraction(1, 2),))
    assert belyi_run(s) == (s, [])


def test_run_x2_minus_2_is_one_step():
    final, trace = belyi_run(BelyiState.from_polynomials([P(-2, 0, 1)]))
    assert len(trace) == 1
    assert final.sections == (-2, 0)


def test_run_x4_x_1():
    # frozen from an independent sympy computation of the same descent
    final, trace = belyi_run(BelyiState.from_polynomials([P(1, 1, 0, 0, 1)]))
    cubic = P(Fraction(-229, 256), 3, -3, 1)
    assert [r.chosen for r in trace] == [P(1, 1, 0, 0, 1), cubic]
    assert [r.critical for r in trace] == [cubic, P(Fraction(-27, 256), 1)]
    assert [r.after.as_tuple() for r in trace] == [(3, 1), (1, 0)]
    assert final.sections == (Fraction(-229, 256), 0, Fraction(27, 256))


def test_reducible_input_is_split():
    s = BelyiState.from_polynomials([P(-1, 0, 0, 0, 1)])
    assert s.factors == (P(1, 0, 1),)
    assert s.sections == (-1, 1)


def test_json_roundtrip():
    s = BelyiState.from_polynomials([P(1, 1, 0, 0, 1), P(-3, 1)])
    assert BelyiState.from_json(s.to_json()) == s


squarefree = st.builds(lambda seed: random_squarefree(random.Random(seed), 4, 6), st.integers(0, 10**9))
small = st.lists(st.integers(-4, 4), min_size=2, max_size=4).map(RatPoly).filter(lambda p: p.degree >= 1)


@settings(max_examples=30)
@given(small, small)
def test_image_matches_sympy(f, g):
    ours = image_poly(f, g)
    ref = sympy_image(f, g)
    assert [sp.Rational(c.numerator, c.denominator) for c in reversed(ours.coeffs)] == ref.all_coeffs()


@settings(max_examples=30)
@given(small, small)
def test_image_roots_numerically(f, g):
    mpmath.mp.dps = 40
    sf = squarefree_part(f)
    roots = mpmath.polyroots([mpmath.mpf(c.numerator) / c.denominator for c in reversed(sf.coeffs)],
                             maxsteps=200, extraprec=200)
    gf = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(g.coeffs)]
    hf = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(image_poly(f, g).coeffs)]
    for a in roots:
        assert abs(mpmath.polyval(hf, mpmath.polyval(gf, a))) < mpmath.mpf(10) ** -15


@settings(max_examples=30)
@given(squarefree)
def test_descent(f):
    s = BelyiState.from_polynomials([f])
    final, trace = belyi_run(s)
    assert final.factors == ()
    prev = s.measure
    for rec in trace:
        assert rec.before == prev and rec.after < rec.before
        assert rec.critical.degree <= rec.before.d - 1
        prev = rec.after
    assert prev == DegreeMeasure(1, 0)
