"""Rational polyhedral cones in a lattice ``N = Z^k``.

A :class:`Cone` stores primitive, pairwise distinct, minimal ray generators
sorted lexicographically, so two cones are equal exactly when their ray
tuples are. Inequality descriptions are computed on demand by a
Fourier-Motzkin (double description) pass and cached.

Terminology: ``is_simplicial`` is the standard notion (linearly independent
rays). A cone whose rays extend to a lattice basis is ``is_smooth``; older
toric literature also calls that "simplicial".
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import prod
from typing import Iterable, Sequence

import numpy as np

from .exactmath import (
    DomainError,
    det,
    dot,
    elementary_divisors,
    integral_primitive,
    inverse_unimodular,
    primitive,
    rank,
    saturate,
    snf,
    solve_rational,
)

__all__ = [
    "Cone",
    "dual_cone",
    "faces",
    "facets",
    "contains",
    "hilbert_basis",
    "is_simplicial",
    "is_smooth",
    "multiplicity",
    "parallelepiped_points",
    "triangulate",
    "intersect",
    "is_face",
]


def _project_off(v: Sequence[int], lin: list[tuple[int, ...]]) -> tuple[Fraction, ...]:
    """Orthogonal projection of ``v`` onto the complement of ``span(lin)``."""
    if not lin:
        return tuple(Fraction(x) for x in v)
    # solve Gram system G c = L v, projection = v - L^T c
    G = [[dot(a, b) for b in lin] for a in lin]
    rhs = [dot(a, v) for a in lin]
    c = solve_rational(G, rhs)
    return tuple(Fraction(v[i]) - sum(ci * l[i] for ci, l in zip(c, lin)) for i in range(len(v)))


def _double_description(constraints: Iterable[Sequence[int]], k: int):
    """Generators of ``{x in Q^k : <a, x> >= 0 for all constraints a}``.

    Returns ``(lineality, rays)``: a saturated basis of the lineality space and
    the primitive extreme rays of the pointed part, each ray orthogonal to the
    lineality space. Redundant generators are pruned after every constraint.
    """
    lin = [tuple(int(i == j) for j in range(k)) for i in range(k)]
    rays: list[tuple[int, ...]] = []
    seen: list[tuple[int, ...]] = []
    for a in constraints:
        a = tuple(int(x) for x in a)
        if not any(a):
            continue
        a = primitive(a)
        if a in seen:
            continue
        seen.append(a)
        vals = [dot(a, l) for l in lin]
        idx = next((i for i, v in enumerate(vals) if v), None)
        if idx is not None:
            l0, s = lin[idx], vals[idx]
            if s < 0:
                l0, s = tuple(-x for x in l0), -s
            lin = [
                tuple(s * x - vals[i] * y for x, y in zip(l, l0))
                for i, l in enumerate(lin)
                if i != idx
            ]
            rays = [tuple(s * x - dot(a, r) * y for x, y in zip(r, l0)) for r in rays] + [l0]
        else:
            pos, neg, keep = [], [], []
            for r in rays:
                v = dot(a, r)
                if v > 0:
                    pos.append((r, v))
                    keep.append(r)
                elif v < 0:
                    neg.append((r, v))
                else:
                    keep.append(r)
            for (p, vp), (q, vq) in product(pos, neg):
                keep.append(tuple(vp * y - vq * x for x, y in zip(p, q)))
            rays = keep
        lin = [primitive(l) for l in lin if any(l)]
        rays = _prune(rays, lin, seen, k)
    lin = saturate(lin, k)
    return lin, sorted(rays)


def _prune(rays, lin, constraints, k):
    out = []
    target = k - len(lin) - 1
    for r in rays:
        pr = _project_off(r, lin)
        if not any(pr):
            continue
        pr = integral_primitive(pr)
        if pr in out:
            continue
        tight = [a for a in constraints if dot(a, pr) == 0]
        if (rank(tight) if tight else 0) == target:
            out.append(pr)
    return out


@dataclass(frozen=True)
class Cone:
    """A rational polyhedral cone given by ray generators.

    Pointed cones are canonicalized to their primitive extreme rays. Cones
    with a lineality space must be created with ``pointed=False``; their rays
    are then a saturated lineality basis with both signs plus the pointed part
    projected orthogonally to it.
    """

    rank: int
    rays: tuple[tuple[int, ...], ...]
    pointed: bool = True

    def __post_init__(self):
        if self.rank < 1:
            raise DomainError("ambient rank must be positive")
        raw = []
        for r in self.rays:
            r = tuple(int(x) for x in r)
            if len(r) != self.rank:
                raise DomainError(f"ray {r} has length {len(r)}, expected {self.rank}")
            if not any(r):
                raise DomainError("zero ray")
            r = primitive(r)
            if r not in raw:
                raw.append(r)
        lin_d, rays_d = _double_description(raw, self.rank)
        dual_gens = rays_d + lin_d + [tuple(-x for x in l) for l in lin_d]
        full_dual = (rank(dual_gens) if dual_gens else 0) == self.rank
        if self.pointed:
            if not full_dual:
                raise DomainError("cone contains a line; pass pointed=False to represent it")
            extreme = []
            for r in raw:
                tight = [h for h in dual_gens if dot(h, r) == 0]
                if (rank(tight) if tight else 0) == self.rank - 1:
                    extreme.append(r)
            canon = tuple(sorted(extreme))
        else:
            if full_dual:
                raise DomainError("cone flagged non-pointed but contains no line")
            lin, rays = _double_description(dual_gens, self.rank)
            canon = tuple(sorted(rays + lin + [tuple(-x for x in l) for l in lin]))
        object.__setattr__(self, "rays", canon)
        self.__dict__["_dual"] = (lin_d, rays_d)

    @classmethod
    def from_canonical(cls, rank: int, rays: Iterable[Sequence[int]], pointed: bool = True) -> "Cone":
        """Build without re-canonicalizing; ``rays`` must already be extreme and primitive."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "rank", rank)
        object.__setattr__(obj, "rays", tuple(sorted(tuple(r) for r in rays)))
        object.__setattr__(obj, "pointed", pointed)
        return obj

    @classmethod
    def zero(cls, rank: int) -> "Cone":
        return cls.from_canonical(rank, ())

    @cached_property
    def _dual(self):
        if self.pointed and self.rays and len(self.rays) == self.rank and self.dim == self.rank:
            # full-dimensional simplicial: the dual rays are the columns of the inverse
            inv_cols = _inverse_columns(self.rays)
            return [], sorted(integral_primitive(c) for c in inv_cols)
        return _double_description(self.rays, self.rank)

    @property
    def inequalities(self) -> list[tuple[int, ...]]:
        """Vectors ``h`` with ``cone = {x : <h, x> >= 0 for all h}``."""
        lin, rays = self._dual
        return rays + lin + [tuple(-x for x in l) for l in lin]

    @property
    def facet_normals(self) -> list[tuple[int, ...]]:
        """Primitive facet normals inside ``span(cone)`` (no equations)."""
        return list(self._dual[1])

    @property
    def equations(self) -> list[tuple[int, ...]]:
        """A basis of the linear forms vanishing on the cone."""
        return list(self._dual[0])

    @cached_property
    def dim(self) -> int:
        return rank(self.rays) if self.rays else 0

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def to_json(self) -> dict:
        out = {"rank": self.rank, "rays": [[str(x) for x in r] for r in self.rays]}
        if not self.pointed:
            out["pointed"] = False
        return out

    @classmethod
    def from_json(cls, doc: dict) -> "Cone":
        return cls(int(doc["rank"]), tuple(tuple(int(x) for x in r) for r in doc["rays"]),
                   pointed=doc.get("pointed", True))


def _inverse_columns(rays):
    n = len(rays)
    cols = []
    R = [list(r) for r in rays]
    for j in range(n):
        e = [int(i == j) for i in range(n)]
        cols.append(solve_rational(R, e))
    return cols


def dual_cone(c: Cone) -> Cone:
    """``{n : <n, m> >= 0 for every generator m of c}``."""
    lin, rays = c._dual
    gens = rays + lin + [tuple(-x for x in l) for l in lin]
    return Cone.from_canonical(c.rank, gens, pointed=not lin)


def contains(c: Cone, v: Sequence[int]) -> bool:
    if len(v) != c.rank:
        raise DomainError("rank mismatch")
    return all(dot(h, v) >= 0 for h in c.inequalities)


def _face_sets(c: Cone) -> list[frozenset]:
    """Ray-index sets of all faces of a pointed cone, the cone itself included."""
    full = frozenset(range(len(c.rays)))
    facet_sets = {frozenset(i for i, r in enumerate(c.rays) if dot(n, r) == 0) for n in c.facet_normals}
    found = {full}
    frontier = [full]
    while frontier:
        nxt = []
        for f in frontier:
            for g in facet_sets:
                h = f & g
                if h not in found:
                    found.add(h)
                    nxt.append(h)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def faces(c: Cone) -> list[Cone]:
    """All proper faces, the zero face included, ordered by size."""
    if not c.pointed:
        raise DomainError("faces() requires a pointed cone")
    out = []
    for s in _face_sets(c):
        if len(s) == len(c.rays):
            continue
        out.append(Cone.from_canonical(c.rank, [c.rays[i] for i in sorted(s)]))
    return out


def facets(c: Cone) -> list[Cone]:
    rays_of = lambda n: [r for r in c.rays if dot(n, r) == 0]
    out = {Cone.from_canonical(c.rank, rays_of(n)) for n in c.facet_normals}
    return sorted(out, key=lambda f: f.rays)


def is_simplicial(c: Cone) -> bool:
    return c.pointed and c.dim == len(c.rays)


def _ray_divisors(c: Cone) -> list[int]:
    if not c.rays:
        return []
    return elementary_divisors([list(r) for r in c.rays])


def multiplicity(c: Cone) -> int:
    """Index of the ray lattice in ``span(c) ∩ N``."""
    if not is_simplicial(c):
        raise DomainError("multiplicity is defined for simplicial cones only")
    cached = c.__dict__.get("_mult")
    if cached is None:
        if len(c.rays) == c.rank:
            cached = abs(det([list(r) for r in c.rays]))
        else:
            cached = prod(_ray_divisors(c))
        c.__dict__["_mult"] = cached
    return cached


def is_smooth(c: Cone) -> bool:
    """Rays form part of a lattice basis."""
    return is_simplicial(c) and multiplicity(c) == 1


def parallelepiped_points(c: Cone) -> list[tuple[tuple[Fraction, ...], tuple[int, ...]]]:
    """Lattice points ``sum q_i r_i`` with ``0 <= q_i < 1`` of a simplicial cone.

    Returns ``(q, point)`` pairs; the origin is included. The count equals the
    multiplicity. Coset representatives come from the Smith form of the ray
    matrix.
    """
    if not is_simplicial(c):
        raise DomainError("fundamental parallelepiped needs a simplicial cone")
    if not c.rays:
        return [((), tuple([0] * c.rank))]
    R = [list(r) for r in c.rays]
    d = len(R)
    S, _, V = snf(R)
    W = inverse_unimodular(V)
    divs = [S[i][i] for i in range(d)]
    Rt = [list(col) for col in zip(*R)]
    out = {}
    for coeffs in product(*(range(s) for s in divs)):
        x = [sum(a * W[i][j] for i, a in enumerate(coeffs)) for j in range(c.rank)]
        q = solve_rational(Rt, x)
        q = tuple(qi - (qi.numerator // qi.denominator) for qi in q)
        pt = tuple(int(sum(qi * r[j] for qi, r in zip(q, R))) for j in range(c.rank))
        out[q] = pt
    return sorted(out.items())


def triangulate(c: Cone) -> list[tuple[tuple[int, ...], ...]]:
    """Pulling triangulation using only the cone's own rays."""
    if not c.pointed:
        raise DomainError("cannot triangulate a cone with lineality")
    if is_simplicial(c):
        return [c.rays]
    v0 = c.rays[0]
    out = []
    for f in facets(c):
        if v0 in f.rays:
            continue
        for simplex in triangulate(f):
            out.append(tuple(sorted(simplex + (v0,))))
    return out


def _reduce_hilbert(c: Cone, cands: Iterable[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Drop candidates ``x`` with ``x - y`` in the cone for another candidate ``y``."""
    cands = sorted(set(cands))
    H = c.inequalities
    vals = [[dot(h, x) for h in H] for x in cands]
    big = max((abs(v) for row in vals for v in row), default=0) >= 2**60
    A = np.array(vals, dtype=object if big else np.int64)
    keep = []
    for i, x in enumerate(cands):
        ge = (A[i] >= A).all(axis=1)
        ge[i] = False
        if not ge.any():
            keep.append(x)
    return keep


def hilbert_basis(c: Cone) -> list[tuple[int, ...]]:
    """Minimal generating set of the monoid ``c ∩ N``."""
    if not c.pointed:
        raise DomainError("Hilbert basis requires a pointed cone")
    if not c.rays:
        return []
    cands = set()
    for simplex in triangulate(c):
        s = Cone.from_canonical(c.rank, simplex)
        cands.update(simplex)
        cands.update(pt for _, pt in parallelepiped_points(s) if any(pt))
    return _reduce_hilbert(c, cands)


def intersect(a: Cone, b: Cone) -> Cone:
    """Intersection of two pointed cones, via their combined inequalities."""
    if a.rank != b.rank:
        raise DomainError("rank mismatch")
    lin, rays = _double_description(a.inequalities + b.inequalities, a.rank)
    if lin:
        raise DomainError("intersection of pointed cones has a line")
    return Cone.from_canonical(a.rank, rays)


def is_face(f: Cone, c: Cone) -> bool:
    """Whether ``f`` is a face of the pointed cone ``c`` (``c`` itself counts)."""
    rays = set(c.rays)
    if not set(f.rays) <= rays:
        return False
    closure = set(c.rays)
    for n in c.facet_normals:
        if all(dot(n, r) == 0 for r in f.rays):
            closure &= {r for r in c.rays if dot(n, r) == 0}
    return closure == set(f.rays)
