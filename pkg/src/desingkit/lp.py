"""Exact rational linear programming (two-phase tableau simplex, Bland's rule).

Solves ``maximize c.x  s.t.  A_ub x <= b_ub,  A_eq x == b_eq,  x >= 0``
over ``Fraction``. Bland's rule rules out cycling, so the solver always
terminates with a definitive status.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None


def _pivot(T, basis, r, c):
    piv = T[r][c]
    T[r] = [v / piv for v in T[r]]
    for i, row in enumerate(T):
        if i != r and row[c] != 0:
            f = row[c]
            T[i] = [a - f * b for a, b in zip(row, T[r])]
    basis[r] = c


def _run(T, basis, obj, allowed):
    """Maximize the objective row ``obj`` (reduced costs) in place.

    ``obj`` holds ``c_j - z_j`` style coefficients: we keep it as an extra
    row and enter any allowed column with positive entry.
    """
    m = len(T)
    while True:
        enter = next((j for j in allowed if obj[0][j] > 0), None)
        if enter is None:
            return OPTIMAL
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return UNBOUNDED
        r = best[1]
        # update objective row together with the tableau
        rows = T + obj
        b = basis + [None]
        _pivot(rows, b, r, enter)
        T[:] = rows[:m]
        obj[0] = rows[m]
        basis[:] = b[:m]


def linprog(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
) -> LPResult:
    n = len(c)
    rows = []  # (coeffs, rhs, kind)
    for a, b in zip(A_ub, b_ub):
        rows.append(([Fraction(x) for x in a], Fraction(b), "ub"))
    for a, b in zip(A_eq, b_eq):
        rows.append(([Fraction(x) for x in a], Fraction(b), "eq"))

    n_slack = sum(1 for _, _, k in rows if k == "ub")
    n_art = 0
    layout = []
    for a, b, kind in rows:
        flip = b < 0
        needs_art = kind == "eq" or flip
        layout.append((flip, needs_art))
        n_art += needs_art
    width = n + n_slack + n_art
    T = []
    basis = []
    s_col = n
    a_col = n + n_slack
    art_cols = []
    for (a, b, kind), (flip, needs_art) in zip(rows, layout):
        row = a + [Fraction(0)] * (width - n) + [b]
        if kind == "ub":
            row[s_col] = Fraction(1)
            slack = s_col
            s_col += 1
        if flip:
            row = [-v for v in row]
        if needs_art:
            row[a_col] = Fraction(1)
            basis.append(a_col)
            art_cols.append(a_col)
            a_col += 1
        else:
            basis.append(slack)
        T.append(row)

    if art_cols:
        # phase 1: maximize -sum(artificials)
        obj = [Fraction(0)] * (width + 1)
        for i, bcol in enumerate(basis):
            if bcol in art_cols:
                obj = [o + v for o, v in zip(obj, T[i])]
        for j in art_cols:
            obj[j] = Fraction(0)
        objrow = [obj]
        _run(T, basis, objrow, list(range(width)))
        if objrow[0][-1] != 0:
            return LPResult(INFEASIBLE)
        # drive artificials out of the basis; drop redundant rows
        arts = set(art_cols)
        keep = []
        for i in range(len(T)):
            if basis[i] in arts:
                j = next((j for j in range(n + n_slack) if T[i][j] != 0), None)
                if j is None:
                    continue
                _pivot(T, basis, i, j)
            keep.append(i)
        T = [T[i] for i in keep]
        basis = [basis[i] for i in keep]
    allowed = list(range(n + n_slack))

    obj = [Fraction(0)] * (width + 1)
    for j in range(n):
        obj[j] = Fraction(c[j])
    for i, bcol in enumerate(basis):
        if obj[bcol] != 0:
            f = obj[bcol]
            obj = [o - f * v for o, v in zip(obj, T[i])]
    objrow = [obj]
    status = _run(T, basis, objrow, allowed)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * width
    for i, bcol in enumerate(basis):
        x[bcol] = T[i][-1]
    value = sum((Fraction(cj) * xj for cj, xj in zip(c, x)), Fraction(0))
    return LPResult(OPTIMAL, tuple(x[:n]), value)
