"""Fans, subdivisions and toric desingularization.

A :class:`Fan` is a finite set of pointed cones (maximal cones only) that
should meet along common faces. The subdivision operations here always
return new fans; inputs are untouched.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .cone import (
    Cone,
    _face_sets,
    contains,
    intersect,
    is_face,
    multiplicity,
    parallelepiped_points,
    triangulate,
)
from .exactmath import DomainError, det, dot, integral_primitive, primitive, rank, saturate, solve_rational


@dataclass(frozen=True)
class Fan:
    """Maximal cones of a fan in ``Z^rank``; ``support`` is the subdivided cone, if any."""

    rank: int
    cones: tuple[Cone, ...]
    support: Cone | None = field(default=None, compare=False)

    def __post_init__(self):
        seen = set()
        cones = []
        for c in self.cones:
            if c.rank != self.rank:
                raise DomainError(f"cone of rank {c.rank} in a rank {self.rank} fan")
            if c not in seen:
                seen.add(c)
                cones.append(c)
        by_ray = {}
        for i, c in enumerate(cones):
            for r in c.rays:
                by_ray.setdefault(r, set()).add(i)
        maximal = []
        everyone = set(range(len(cones)))
        for i, c in enumerate(cones):
            holders = set(everyone)
            for r in c.rays:
                holders &= by_ray[r]
            if all(len(cones[j].rays) <= len(c.rays) for j in holders):
                maximal.append(c)
        object.__setattr__(self, "cones", tuple(sorted(maximal, key=lambda c: c.rays)))

    @property
    def rays(self) -> list[tuple[int, ...]]:
        return sorted({r for c in self.cones for r in c.rays})

    def to_json(self) -> dict:
        out = {"rank": self.rank, "cones": [c.to_json() for c in self.cones]}
        if self.support is not None:
            out["support"] = self.support.to_json()
        return out

    @classmethod
    def from_json(cls, doc: dict) -> "Fan":
        k = int(doc["rank"])
        support = Cone.from_json(doc["support"]) if doc.get("support") else None
        return cls(k, tuple(Cone.from_json(c) for c in doc["cones"]), support)

    @classmethod
    def of_cone(cls, c: Cone) -> "Fan":
        return cls(c.rank, (c,), support=c)


def _separated(f: Fan) -> set[tuple[int, int]]:
    """Pairs ``(i, j)`` certified to meet in a common face by a separating hyperplane.

    For a supporting hyperplane ``h`` of cone ``i`` with cone ``j`` on the other
    side, the intersection is ``cone(A0) & cone(B0)`` where ``A0, B0`` are the
    rays on ``h``. If ``B0`` is contained in ``A0`` and spans a face of cone
    ``i`` the pair is fine.
    """
    cs = f.cones
    rays = f.rays
    if not rays:
        return set()
    idx = {r: k for k, r in enumerate(rays)}
    R = np.array(rays, dtype=object if max(abs(x) for r in rays for x in r) > 2**20 else np.int64)
    M = np.zeros((len(cs), len(rays)), dtype=np.int64)
    for i, c in enumerate(cs):
        for r in c.rays:
            M[i, idx[r]] = 1
    ok = set()
    for i, c in enumerate(cs):
        simplicial = len(c.rays) == c.dim
        hs = c.facet_normals + c.equations + [tuple(-x for x in e) for e in c.equations]
        mine = M[i].astype(bool)
        for h in hs:
            vals = R @ np.array(h, dtype=R.dtype)
            pos = (vals > 0).astype(np.int64)
            zero = vals == 0
            behind = M @ pos == 0
            b0_outside = M @ (zero & ~mine).astype(np.int64) == 0
            b0_size = M @ zero.astype(np.int64)
            a0_size = int(zero[mine].sum())
            good = behind & b0_outside
            if not simplicial:
                good &= (b0_size <= 1) | (b0_size == a0_size)
            for j in np.nonzero(good)[0]:
                j = int(j)
                if j != i:
                    ok.add((min(i, j), max(i, j)))
    return ok


def validate_fan(f: Fan, certify: bool = True) -> tuple[bool, str | None]:
    """Check that cones are pointed and pairwise meet in a common face.

    With ``certify`` most pairs are settled by a separating hyperplane; the
    rest (or all pairs, when ``certify`` is off) go through exact intersection.
    """
    for c in f.cones:
        if not c.pointed:
            return False, f"cone {list(c.rays)} is not pointed"
    cs = f.cones
    certified = _separated(f) if certify else set()
    for i in range(len(cs)):
        for j in range(i + 1, len(cs)):
            if (i, j) in certified:
                continue
            meet = intersect(cs[i], cs[j])
            if not is_face(meet, cs[i]) or not is_face(meet, cs[j]):
                return False, (
                    f"cones {list(cs[i].rays)} and {list(cs[j].rays)} meet in "
                    f"{list(meet.rays)}, which is not a common face"
                )
    return True, None


def _span_basis(c: Cone) -> list[tuple[int, ...]]:
    return saturate([list(r) for r in c.rays], c.rank)


def _volume(simplices: Iterable[Sequence[Sequence[int]]], basis, w) -> Fraction:
    """Sum of cross-section volumes ``|det| / prod <w, r>`` (common constant dropped)."""
    Bt = [list(col) for col in zip(*basis)]
    total = Fraction(0)
    for rays in simplices:
        coords = [[int(x) for x in solve_rational(Bt, r)] for r in rays]
        denom = 1
        for r in rays:
            denom *= dot(w, r)
        total += Fraction(abs(det(coords)), denom)
    return total


def is_refinement(fine: Fan, coarse: Fan) -> bool:
    """Every fine cone sits in a coarse cone and the supports agree.

    Support equality is decided per coarse cone by comparing exact
    cross-section volumes of the fine cones it contains against its own.
    """
    if fine.rank != coarse.rank:
        return False
    homes = {}
    for s in fine.cones:
        hosts = [t for t in coarse.cones if all(contains(t, r) for r in s.rays)]
        if not hosts:
            return False
        homes[s] = hosts
    for t in coarse.cones:
        if not t.rays:
            continue
        basis = _span_basis(t)
        w = tuple(sum(col) for col in zip(*t.facet_normals))
        want = _volume(triangulate(t), basis, w)
        got = Fraction(0)
        for s in fine.cones:
            if t in homes[s] and s.dim == t.dim:
                got += _volume(triangulate(s), basis, w)
        if got != want:
            return False
    return True


def _maximal_flags(c: Cone) -> list[list[frozenset]]:
    sets = [s for s in _face_sets(c) if s]
    dim = {s: rank([c.rays[i] for i in s]) for s in sets}
    flags = []

    def walk(chain):
        top = chain[-1]
        if dim[top] == 1:
            flags.append(chain[::-1])
            return
        for s in sets:
            if s < top and dim[s] == dim[top] - 1:
                walk(chain + [s])

    full = frozenset(range(len(c.rays)))
    if c.rays:
        walk([full])
    return flags


def _barycenter(c: Cone, s: frozenset) -> tuple[int, ...]:
    return primitive([sum(c.rays[i][j] for i in s) for j in range(c.rank)])


def barycentric_subdivision(f: Fan) -> Fan:
    """Cones on the primitive barycenters of every maximal flag of faces."""
    out = []
    for c in f.cones:
        if not c.pointed:
            raise DomainError("barycentric subdivision needs pointed cones")
        for flag in _maximal_flags(c):
            out.append(Cone.from_canonical(f.rank, [_barycenter(c, s) for s in flag]))
    return Fan(f.rank, tuple(out), support=f.support)


def stellar_subdivision(f: Fan, v: Sequence[int]) -> Fan:
    """Star every cone containing ``v`` at the new ray ``v``.

    If ``v`` is already a ray of the fan, the fan is returned unchanged.
    """
    v = tuple(int(x) for x in v)
    if len(v) != f.rank:
        raise DomainError("rank mismatch")
    if primitive(v) != v:
        raise DomainError(f"{v} is not primitive")
    if v in set(f.rays):
        return f
    hit = [c for c in f.cones if contains(c, v)]
    if not hit:
        raise DomainError(f"{v} is outside the support of the fan")
    out = [c for c in f.cones if c not in hit]
    for c in hit:
        for n in c.facet_normals:
            if dot(n, v) > 0:
                base = [r for r in c.rays if dot(n, r) == 0]
                out.append(Cone.from_canonical(f.rank, base + [v]))
    return Fan(f.rank, tuple(out), support=f.support)


def _max_mult(f: Fan) -> int:
    return max((multiplicity(c) for c in f.cones), default=1)


def _reduction_point(c: Cone) -> tuple[int, ...]:
    pts = [(sum(q), pt) for q, pt in parallelepiped_points(c) if any(pt)]
    return primitive(min(pts)[1])


def resolve(f: Fan, trace: list | None = None) -> Fan:
    """Refine ``f`` until every cone is smooth.

    One barycentric pass makes every cone simplicial; then, while some cone
    has multiplicity above one, the lexicographically first such cone is
    starred at its fundamental-parallelepiped point of least coordinate sum
    (ties broken lexicographically). Each star strictly lowers the
    multiplicity of every cone it touches, so the loop terminates.

    Steps are appended to ``trace`` when a list is given.
    """
    for c in f.cones:
        if not c.pointed:
            raise DomainError("resolve needs pointed cones")
    g = barycentric_subdivision(f)
    step = 1
    if trace is not None:
        trace.append({"step": step, "kind": "barycentric", "ray": [], "max_multiplicity": str(_max_mult(g))})
    while True:
        bad = [c for c in g.cones if multiplicity(c) > 1]
        if not bad:
            return g
        target = min(bad, key=lambda c: c.rays)
        xi = _reduction_point(target)
        g = stellar_subdivision(g, xi)
        step += 1
        if trace is not None:
            trace.append({
                "step": step,
                "kind": "stellar",
                "ray": [str(x) for x in xi],
                "max_multiplicity": str(_max_mult(g)),
            })


def restrict_subdivision(big: Fan, inclusion: Sequence[Sequence[int]], small_support: Cone) -> Fan:
    """Pull back ``big`` along an injective lattice map onto a face of its support.

    ``inclusion`` is a ``big.rank x small.rank`` integer matrix whose columns
    are the images of the basis vectors of the small lattice.
    """
    M = [list(map(int, row)) for row in inclusion]
    ka = small_support.rank
    if len(M) != big.rank or any(len(row) != ka for row in M):
        raise DomainError("inclusion matrix has the wrong shape")
    if rank(M) != ka:
        raise DomainError("inclusion is not injective")
    image_rays = [primitive([dot(row, r) for row in M]) for r in small_support.rays]
    image = Cone(big.rank, tuple(image_rays)) if image_rays else Cone.zero(big.rank)
    support = big.support or Cone(big.rank, tuple(big.rays))
    if not is_face(image, support):
        raise DomainError("image of the small support is not a face of the big support")
    out = []
    for c in big.cones:
        meet = intersect(c, image)
        if meet.dim != image.dim:
            continue
        pulled = []
        for r in meet.rays:
            x = solve_rational(M, r)
            if x is None:
                raise DomainError("ray outside the image lattice")
            pulled.append(integral_primitive(x))
        out.append(Cone.from_canonical(ka, pulled))
    return Fan(ka, tuple(out), support=small_support)
