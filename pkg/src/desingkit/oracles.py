"""Brute-force reference computations used to cross-check the main engines.

Nothing here calls the double-description or triangulation code: cones of
rank <= 3 get their inequalities from cross products of generator pairs,
and Hilbert bases come from enumerating a box of lattice points.
"""
from __future__ import annotations

from itertools import combinations
from typing import Sequence

import numpy as np

from .exactmath import det, matmul


def _pad(v: Sequence[int]) -> tuple[int, int, int]:
    return tuple(v) + (0,) * (3 - len(v))


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


class SmallCone:
    """Cone in Z^3 (lower ranks are padded) given by generators."""

    def __init__(self, rays: Sequence[Sequence[int]]):
        self.rays = [_pad(r) for r in rays if any(r)]
        self.equations: list[tuple[int, int, int]] = []
        self.normals: list[tuple[int, int, int]] = []
        rs = self.rays
        crosses = [_cross(a, b) for a, b in combinations(rs, 2)]
        crosses = [n for n in crosses if any(n)]
        full = any(_dot(n, r) for n in crosses for r in rs)
        if full:
            self.dim = 3
            cands = crosses
        elif crosses:
            self.dim = 2
            N = crosses[0]
            self.equations = [N]
            cands = [_cross(N, r) for r in rs]
        elif rs:
            self.dim = 1
            r = rs[0]
            self.equations = [n for n in (_cross(r, e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))) if any(n)]
            cands = [r]
        else:
            self.dim = 0
            self.equations = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
            cands = []
        for n in cands:
            vals = [_dot(n, r) for r in rs]
            if all(v >= 0 for v in vals):
                self.normals.append(n)
            elif all(v <= 0 for v in vals):
                self.normals.append(tuple(-x for x in n))
        self.normals = sorted(set(self.normals))

    def contains(self, p: Sequence[int]) -> bool:
        p = _pad(p)
        return all(_dot(e, p) == 0 for e in self.equations) and all(_dot(n, p) >= 0 for n in self.normals)

    def mask(self, pts: np.ndarray) -> np.ndarray:
        ok = np.ones(len(pts), dtype=bool)
        for e in self.equations:
            ok &= pts @ np.array(e, dtype=np.int64) == 0
        for n in self.normals:
            ok &= pts @ np.array(n, dtype=np.int64) >= 0
        return ok


def brute_hilbert(rank: int, rays: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Hilbert basis of a pointed cone of rank <= 3 by box enumeration.

    Every Hilbert basis element lies in a half-open parallelepiped spanned by
    ``dim`` independent generators, so its coordinates are bounded by sums of
    ``dim`` generator coordinates and ``w(h) <= `` the largest such sum for a
    positive functional ``w``.
    """
    if rank > 3:
        raise ValueError("brute-force oracle only handles rank <= 3")
    C = SmallCone(rays)
    if C.dim == 0:
        return []
    d = C.dim
    rs = C.rays
    w = tuple(sum(col) for col in zip(*C.normals)) if C.dim > 1 else rs[0]
    wr = sorted((_dot(w, r) for r in rs), reverse=True)
    cap = sum(wr[:d])
    bound = [sum(sorted((abs(r[j]) for r in rs), reverse=True)[:d]) for j in range(3)]
    axes = [np.arange(-b, b + 1, dtype=np.int64) for b in bound]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, 3)
    grid = grid[np.any(grid != 0, axis=1)]
    grid = grid[C.mask(grid)]
    wv = grid @ np.array(w, dtype=np.int64)
    grid = grid[wv <= cap]
    out = []
    for v in grid:
        diff = v[None, :] - grid
        nz = np.any(diff != 0, axis=1)
        if not np.any(C.mask(diff) & nz):
            out.append(tuple(int(x) for x in v[:rank]))
    return sorted(out)


def check_snf(A, S, U, V) -> str | None:
    """Independent validation of ``U A V = S`` with unimodular ``U, V``."""
    if matmul(matmul(U, A), V) != S:
        return "U A V != S"
    if abs(det(U)) != 1 or abs(det(V)) != 1:
        return "transform not unimodular"
    m, n = len(S), len(S[0]) if S else 0
    diag = []
    for i in range(m):
        for j in range(n):
            if i != j and S[i][j]:
                return "S not diagonal"
    for i in range(min(m, n)):
        diag.append(S[i][i])
    nz = [x for x in diag if x]
    if any(x < 0 for x in diag):
        return "negative diagonal entry"
    if diag[: len(nz)] != nz:
        return "zeros before nonzero divisors"
    for a, b in zip(nz, nz[1:]):
        if b % a:
            return f"divisibility chain broken at {a} | {b}"
    if m == n:
        p = 1
        for x in diag:
            p *= x
        if abs(det(A)) != p:
            return "det(A) != +- product of divisors"
    return None


def check_hnf(A, H, U) -> str | None:
    if matmul(U, A) != H:
        return "U A != H"
    if abs(det(U)) != 1:
        return "transform not unimodular"
    row = 0
    last = -1
    for i, r in enumerate(H):
        nz = [j for j, x in enumerate(r) if x]
        if not nz:
            if any(any(rr) for rr in H[i:]):
                return "zero row above a nonzero row"
            break
        j = nz[0]
        if j <= last:
            return "pivots not strictly increasing"
        if r[j] <= 0:
            return "nonpositive pivot"
        for k in range(i):
            if not 0 <= H[k][j] < r[j]:
                return f"entry above pivot ({k},{j}) not reduced"
        last = j
        row += 1
    return None
