"""Branch-locus degree descent on the fibre line over a point.

The branch divisor on the line is a finite set of points plus the point at
infinity. Points are grouped into Galois orbits: a rational point is a
*section*; an orbit of size ``d >= 2`` is a *component* stored as its monic
irreducible minimal polynomial. Folding the line by ``y = A(x)`` for a
component ``A`` of maximal degree ``d`` sends every root of ``A`` to 0, keeps
infinity fixed, and adds the finite critical values of ``A`` (at most
``d - 1`` of them). The measure ``(d, m)`` (maximal component degree, number
of components of that degree) drops lexicographically at every fold.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .exactmath import DomainError, to_fraction
from .factor import irreducible_factors
from .poly import RatPoly, interpolate, resultant, squarefree_part


@dataclass(frozen=True, order=True)
class DegreeMeasure:
    d: int
    m: int

    def as_tuple(self) -> tuple[int, int]:
        return (self.d, self.m)


@dataclass(frozen=True)
class BelyiState:
    factors: tuple[RatPoly, ...]
    sections: tuple[Fraction, ...] = ()
    infinity: bool = True

    def __post_init__(self):
        facs = tuple(sorted(self.factors, key=lambda f: (f.degree, f.coeffs)))
        for f in facs:
            if f.degree < 2:
                raise DomainError(f"component {f} has degree < 2; linear pieces must be sections")
            if f.lc != 1:
                raise DomainError(f"component {f} is not monic")
        if len(set(facs)) != len(facs):
            raise DomainError("repeated component")
        if not self.infinity:
            raise DomainError("the section at infinity is always present")
        object.__setattr__(self, "factors", facs)
        object.__setattr__(self, "sections", tuple(sorted(set(to_fraction(s) for s in self.sections))))

    @classmethod
    def from_polynomials(cls, polys: Iterable[RatPoly], sections: Iterable = ()) -> "BelyiState":
        """Split arbitrary nonzero polynomials into components and sections."""
        facs, secs = set(), set(to_fraction(s) for s in sections)
        for p in polys:
            if not p:
                raise DomainError("zero polynomial in branch divisor")
            for g in irreducible_factors(p) if p.degree > 0 else []:
                if g.degree == 1:
                    secs.add(-g.coeffs[0])
                else:
                    facs.add(g)
        return cls(tuple(facs), tuple(secs))

    @property
    def measure(self) -> DegreeMeasure:
        if not self.factors:
            return DegreeMeasure(1, 0)
        d = max(f.degree for f in self.factors)
        return DegreeMeasure(d, sum(1 for f in self.factors if f.degree == d))

    def to_json(self) -> dict:
        return {
            "factors": [f.to_json() for f in self.factors],
            "sections": [str(s) for s in self.sections],
            "infinity": self.infinity,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "BelyiState":
        polys = [RatPoly(to_fraction(c) for c in f) for f in doc.get("factors", [])]
        state = cls.from_polynomials(polys, doc.get("sections", []))
        if doc.get("infinity", True) is not True:
            raise DomainError("the section at infinity is always present")
        return state


def image_poly(f: RatPoly, g: RatPoly) -> RatPoly:
    """Monic squarefree polynomial whose roots are ``{g(a) : f(a) = 0}``.

    This is the squarefree part of ``Res_x(f(x), y - g(x))``, recovered by
    evaluating the resultant at ``deg f + 1`` values of ``y`` and
    interpolating.
    """
    if f.degree < 1 or g.degree < 1:
        raise DomainError("image_poly needs nonconstant polynomials")
    pts = []
    for k in range(f.degree + 1):
        yk = Fraction(k)
        pts.append((yk, resultant(f, RatPoly.const(yk) - g)))
    return squarefree_part(interpolate(pts))


def critical_values(g: RatPoly) -> RatPoly:
    """Polynomial of the finite critical values of ``x -> g(x)``."""
    if g.degree < 2:
        raise DomainError("critical values need degree >= 2")
    return image_poly(squarefree_part(g.derivative()), g)


@dataclass(frozen=True)
class StepRecord:
    chosen: RatPoly
    before: DegreeMeasure
    after: DegreeMeasure
    critical: RatPoly

    def to_json(self, step: int) -> dict:
        return {
            "step": step,
            "chosen": self.chosen.to_json(),
            "before": [self.before.d, self.before.m],
            "after": [self.after.d, self.after.m],
            "critical_values": self.critical.to_json(),
        }


def choose_component(state: BelyiState) -> RatPoly:
    d = state.measure.d
    return min((f for f in state.factors if f.degree == d), key=lambda f: f.coeffs)


def belyi_step(state: BelyiState) -> tuple[BelyiState, StepRecord]:
    """Fold the line by a component of maximal degree."""
    before = state.measure
    if not state.factors:
        raise DomainError("already separated: every branch component is a section")
    A = choose_component(state)
    crit = critical_values(A)
    polys = [image_poly(f, A) for f in state.factors]
    polys.append(crit)
    sections = [A(s) for s in state.sections]
    new = BelyiState.from_polynomials(polys, sections)
    after = new.measure
    if not after < before:
        raise AssertionError(f"measure did not drop: {before} -> {after}")
    return new, StepRecord(A, before, after, crit)


def belyi_run(state: BelyiState, max_steps: int = 10_000) -> tuple[BelyiState, list[StepRecord]]:
    trace = []
    while state.factors:
        if len(trace) >= max_steps:
            raise RuntimeError("step budget exhausted")
        state, rec = belyi_step(state)
        trace.append(rec)
    return state, trace
