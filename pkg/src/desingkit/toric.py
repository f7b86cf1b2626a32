"""Affine toric models of monomial covers and compatible families of subdivisions.

``toric_from_monomials`` takes the exponent vectors ``m_1..m_r`` of a finite
monomial cover ``z_i -> m_i`` of a torus and builds the saturated monoid
``M+`` (as a Hilbert basis) and its dual cone ``N+``.

A :class:`StrataSystem` records, for a stratified toroidal space, one cone
``N_a+`` per stratum together with injective lattice maps ``N_a -> N_b``
whenever stratum ``b`` lies in the closure of stratum ``a``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .cone import Cone, dual_cone, hilbert_basis, is_face, is_smooth, multiplicity, is_simplicial
from .exactmath import DomainError, dot, elementary_divisors, matmul, primitive, rank
from .fan import Fan, barycentric_subdivision, restrict_subdivision


@dataclass(frozen=True)
class ToricModel:
    m_rank: int
    monomials: tuple[tuple[int, ...], ...]
    m_plus: tuple[tuple[int, ...], ...]
    n_plus: Cone
    extra_affine_rank: int = 0

    @property
    def smooth(self) -> bool:
        return is_smooth(self.n_plus)

    def to_json(self) -> dict:
        out = {
            "m_rank": self.m_rank,
            "monomials": [[str(x) for x in m] for m in self.monomials],
            "m_plus": [[str(x) for x in m] for m in self.m_plus],
            "n_plus": self.n_plus.to_json(),
            "extra_affine_rank": self.extra_affine_rank,
            "smooth": self.smooth,
        }
        if is_simplicial(self.n_plus):
            out["multiplicity"] = str(multiplicity(self.n_plus))
        return out


def toric_from_monomials(r: int, monomials: Sequence[Sequence[int]], extra_affine_rank: int = 0) -> ToricModel:
    mons = tuple(tuple(int(x) for x in m) for m in monomials)
    if r < 1:
        raise DomainError("lattice rank must be positive")
    if extra_affine_rank < 0:
        raise DomainError("extra affine rank must be nonnegative")
    if any(len(m) != r for m in mons):
        raise DomainError(f"monomial exponent vectors must have length {r}")
    divisors = elementary_divisors([list(m) for m in mons]) if mons else []
    if len(divisors) != r:
        raise DomainError(
            f"monomials span a sublattice of rank {len(divisors)} < {r}: "
            "infinite index, the cover is not finite"
        )
    try:
        m_cone = Cone(r, mons)
    except DomainError as exc:
        raise DomainError(f"cone of monomials is not pointed: {exc}") from None
    return ToricModel(r, mons, tuple(hilbert_basis(m_cone)), dual_cone(m_cone), extra_affine_rank)


@dataclass(frozen=True)
class Inclusion:
    """``N_source -> N_target``, columns are images of the source basis."""

    source: str
    target: str
    matrix: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class StrataSystem:
    supports: Mapping[str, Cone]
    codims: Mapping[str, int]
    inclusions: tuple[Inclusion, ...] = field(default=())

    def validate(self) -> tuple[bool, str | None]:
        for a, c in self.supports.items():
            if c.rank != self.codims[a]:
                return False, f"stratum {a}: lattice rank {c.rank} != codimension {self.codims[a]}"
        maps = {}
        for inc in self.inclusions:
            M = [list(row) for row in inc.matrix]
            src, dst = self.supports[inc.source], self.supports[inc.target]
            if len(M) != dst.rank or any(len(row) != src.rank for row in M) or rank(M) != src.rank:
                return False, f"inclusion {inc.source}->{inc.target} is not an injective map"
            image = [primitive([dot(row, ray) for row in M]) for ray in src.rays]
            if not is_face(Cone(dst.rank, tuple(image)) if image else Cone.zero(dst.rank), dst):
                return False, f"image of N_{inc.source}+ is not a face of N_{inc.target}+"
            maps[(inc.source, inc.target)] = M
        for (a, b), Mab in maps.items():
            for (b2, c), Mbc in maps.items():
                if b2 == b and (a, c) in maps and matmul(Mbc, Mab) != maps[(a, c)]:
                    return False, f"inclusions {a}->{b}->{c} do not compose to {a}->{c}"
        return True, None


def check_compatible_family(system: StrataSystem, family: Mapping[str, Fan]) -> tuple[bool, str | None]:
    """Each ``Sigma_b`` must restrict to ``Sigma_a`` along every inclusion ``a -> b``."""
    ok, why = system.validate()
    if not ok:
        return False, why
    for a in system.supports:
        if a not in family:
            return False, f"no subdivision given for stratum {a}"
    for inc in system.inclusions:
        restricted = restrict_subdivision(family[inc.target], inc.matrix, system.supports[inc.source])
        if restricted != family[inc.source]:
            return False, (
                f"relation {inc.source}->{inc.target}: Sigma_{inc.target} restricts to "
                f"{[list(c.rays) for c in restricted.cones]}, not Sigma_{inc.source}"
            )
    return True, None


def barycentric_family(system: StrataSystem) -> dict[str, Fan]:
    return {a: barycentric_subdivision(Fan.of_cone(c)) for a, c in system.supports.items()}


def orthant_chain(k: int = 3) -> StrataSystem:
    """Strata chain ``Z^1 -> Z^2 -> ... -> Z^k`` of coordinate-face inclusions of orthants."""
    supports = {}
    codims = {}
    for d in range(1, k + 1):
        label = f"T{d}"
        supports[label] = Cone(d, tuple(tuple(int(i == j) for j in range(d)) for i in range(d)))
        codims[label] = d
    incs = []
    for a in range(1, k + 1):
        for b in range(a + 1, k + 1):
            M = tuple(tuple(int(i == j) for j in range(a)) for i in range(b))
            incs.append(Inclusion(f"T{a}", f"T{b}", M))
    return StrataSystem(supports, codims, tuple(incs))
