"""Projectivity certificates for subdivisions of a cone.

A subdivision is projective (regular, coherent) when it carries a strictly
convex piecewise-linear support function. We use the concave ("min of
linear forms") convention: the function is linear on every maximal cone,
and across each wall the neighbouring cone's linear form is strictly larger
on the far side.

The function is parametrized by its values at the rays of the fine fan, so
the unknowns are one rational per ray; linearity on non-simplicial cones is
imposed as equations. Strictness is handled by maximizing the least wall
slack ``t`` subject to ``t <= 1``: a certificate exists iff the optimum is
positive.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cone import Cone, contains
from .exactmath import DomainError, dot, rank, solve_rational
from .fan import Fan, is_refinement, validate_fan
from .lp import OPTIMAL, linprog


@dataclass(frozen=True)
class SupportCertificate:
    """Per-cone linear forms of a strictly convex support function."""

    cones: tuple[Cone, ...]
    functionals: tuple[tuple[Fraction, ...], ...]
    slack: Fraction
    coarse: Fan | None = None

    def to_json(self) -> dict:
        return {
            "slack": str(self.slack),
            "pieces": [
                {"cone": [[str(x) for x in r] for r in c.rays], "functional": [str(x) for x in u]}
                for c, u in zip(self.cones, self.functionals)
            ],
        }


def walls(f: Fan) -> list[tuple[int, int, frozenset]]:
    """Pairs of maximal cones meeting in a common codimension-one face."""
    out = []
    cs = f.cones
    for i in range(len(cs)):
        for j in range(i + 1, len(cs)):
            if cs[i].dim != cs[j].dim:
                continue
            shared = set(cs[i].rays) & set(cs[j].rays)
            if shared and rank(list(shared)) == cs[i].dim - 1:
                out.append((i, j, frozenset(shared)))
    return out


def _basis(c: Cone) -> list[tuple[int, ...]]:
    chosen = []
    for r in c.rays:
        if rank(chosen + [r]) > len(chosen):
            chosen.append(r)
    return chosen


def _coords(basis, v):
    Bt = [list(col) for col in zip(*basis)]
    return solve_rational(Bt, v)


def _home(f: Fan, coarse: Fan) -> list[int]:
    """Index of the coarse maximal cone containing each fine maximal cone."""
    out = []
    for c in f.cones:
        inner = tuple(sum(col) for col in zip(*c.rays))
        homes = [k for k, s in enumerate(coarse.cones) if s.dim == c.dim and contains(s, inner)]
        if len(homes) != 1:
            raise DomainError(f"fine cone {list(c.rays)} does not sit in exactly one coarse cone")
        out.append(homes[0])
    return out


def interior_walls(f: Fan, coarse: Fan) -> list[tuple[int, int, frozenset]]:
    """Walls of ``f`` whose two sides lie in the same coarse cone."""
    home = _home(f, coarse)
    return [(i, j, s) for i, j, s in walls(f) if home[i] == home[j]]


def _wall_rows(f: Fan, index, coarse: Fan):
    """Linear forms in the ray values giving each wall slack ``u_i(v) - h(v)``."""
    rows = []
    bases = [_basis(c) for c in f.cones]
    for i, j, shared in interior_walls(f, coarse):
        for a, b in ((i, j), (j, i)):
            for v in f.cones[b].rays:
                if v in shared:
                    continue
                coeffs = [Fraction(0)] * len(index)
                for mu, r in zip(_coords(bases[a], v), bases[a]):
                    coeffs[index[r]] += mu
                coeffs[index[v]] -= 1
                rows.append(coeffs)
    return rows


def _linearity_rows(f: Fan, index):
    rows = []
    for c in f.cones:
        basis = _basis(c)
        for r in c.rays:
            if r in basis:
                continue
            coeffs = [Fraction(0)] * len(index)
            for mu, b in zip(_coords(basis, r), basis):
                coeffs[index[b]] += mu
            coeffs[index[r]] -= 1
            rows.append(coeffs)
    return rows


def is_projective_subdivision(fine: Fan, coarse: Cone | Fan) -> SupportCertificate | None:
    """A strictly convex support function on ``fine``, or ``None`` if there is none.

    With a coarse fan, strict convexity is required only across walls interior
    to a coarse cone (projectivity relative to the coarse fan).
    """
    if isinstance(coarse, Cone):
        coarse = Fan.of_cone(coarse)
    ok, why = validate_fan(fine)
    if not ok:
        raise DomainError(f"fine fan is invalid: {why}")
    if not is_refinement(fine, coarse):
        raise DomainError("fine fan does not subdivide the coarse fan")
    rays = fine.rays
    index = {r: k for k, r in enumerate(rays)}
    n = len(rays)
    wall = _wall_rows(fine, index, coarse)
    lin = _linearity_rows(fine, index)
    # variables: h+ (n), h- (n), t ; all >= 0
    A_ub, b_ub = [], []
    for row in wall:
        A_ub.append([-x for x in row] + [x for x in row] + [Fraction(1)])
        b_ub.append(0)
    A_ub.append([0] * (2 * n) + [1])
    b_ub.append(1)
    A_eq = [list(row) + [-x for x in row] + [0] for row in lin]
    b_eq = [0] * len(A_eq)
    c = [0] * (2 * n) + [1]
    res = linprog(c, A_ub, b_ub, A_eq, b_eq)
    if res.status != OPTIMAL or res.value <= 0:
        return None
    h = [res.x[k] - res.x[n + k] for k in range(n)]
    funcs = []
    for cone in fine.cones:
        u = solve_rational([list(r) for r in cone.rays], [h[index[r]] for r in cone.rays])
        if u is None:
            raise AssertionError("ray values are not linear on a cone")
        funcs.append(tuple(u))
    return SupportCertificate(fine.cones, tuple(funcs), res.value, coarse)


def check_certificate(fine: Fan, cert: SupportCertificate) -> tuple[bool, str | None]:
    """Re-validate a certificate from its functionals alone."""
    if tuple(cert.cones) != tuple(fine.cones):
        return False, "certificate cones differ from the fan"
    u = dict(zip(fine.cones, cert.functionals))
    cs = fine.cones
    for i in range(len(cs)):
        for j in range(i + 1, len(cs)):
            for r in set(cs[i].rays) & set(cs[j].rays):
                if dot(u[cs[i]], r) != dot(u[cs[j]], r):
                    return False, f"functionals disagree at shared ray {r}"
    ws = walls(fine) if cert.coarse is None else interior_walls(fine, cert.coarse)
    for i, j, shared in ws:
        for a, b in ((i, j), (j, i)):
            for v in cs[b].rays:
                if v in shared:
                    continue
                if not dot(u[cs[a]], v) > dot(u[cs[b]], v):
                    return False, f"not strictly convex across wall {sorted(shared)}"
    return True, None
