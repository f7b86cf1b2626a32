from fractions import Fraction

import numpy as np
import scipy.optimize
from hypothesis import given, strategies as st

from desingkit.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, linprog


def test_small_optimum():
    # max x + y  s.t.  x + 2y <= 4, 3x + y <= 6
    res = linprog([1, 1], [[1, 2], [3, 1]], [4, 6])
    assert res.status == OPTIMAL
    assert res.value == Fraction(14, 5)
    assert res.x == (Fraction(8, 5), Fraction(6, 5))


def test_infeasible():
    assert linprog([1], [[1]], [-1]).status == INFEASIBLE


def test_unbounded():
    assert linprog([1, 0], [[0, 1]], [1]).status == UNBOUNDED


def test_equality_rows():
    res = linprog([-1, -1], A_eq=[[1, 1]], b_eq=[3])
    assert res.status == OPTIMAL and res.value == -3


@st.composite
def problems(draw):
    n = draw(st.integers(1, 4))
    m = draw(st.integers(1, 5))
    small = st.integers(-5, 5)
    c = [draw(small) for _ in range(n)]
    A = [[draw(small) for _ in range(n)] for _ in range(m)]
    b = [draw(st.integers(-3, 10)) for _ in range(m)]
    return c, A, b


@given(problems())
def test_agrees_with_scipy(p):
    c, A, b = p
    ours = linprog(c, A, b)
    ref = scipy.optimize.linprog(-np.array(c, float), A_ub=np.array(A, float), b_ub=np.array(b, float),
                                 bounds=[(0, None)] * len(c), method="highs")
    if ref.status == 2:
        assert ours.status == INFEASIBLE
    elif ref.status == 3:
        assert ours.status == UNBOUNDED
    else:
        assert ours.status == OPTIMAL
        assert abs(float(ours.value) + ref.fun) < 1e-7
        x = ours.x
        assert all(v >= 0 for v in x)
        assert all(sum(a * v for a, v in zip(row, x)) <= bi for row, bi in zip(A, b))
