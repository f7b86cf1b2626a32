"""Separating sections of a genus-0 fibration by blowing up contact centers.

Over each base component ``C`` the sections ``1..m`` that meet along ``C``
form contact classes, and two sections ``i, j`` in a class meet with
multiplicity ``m(i, j) >= 1``. Blowing up the common image of a class of
maximal size lowers every pairwise multiplicity in it by exactly one; pairs
that reach zero no longer meet. The fibre over the component is a tree of
projective lines, which gains one exceptional vertex per blowup.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .exactmath import DomainError


def _pair(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class ContactClass:
    members: tuple[int, ...]
    mult: tuple[tuple[tuple[int, int], int], ...]

    @classmethod
    def make(cls, members: Iterable[int], mult: Mapping[tuple[int, int], int]) -> "ContactClass":
        table = {}
        for (i, j), v in mult.items():
            key = _pair(int(i), int(j))
            if key in table and table[key] != int(v):
                raise DomainError(f"conflicting multiplicities for pair {key}")
            table[key] = int(v)
        return cls(tuple(sorted(int(i) for i in members)), tuple(sorted(table.items())))

    @property
    def table(self) -> dict[tuple[int, int], int]:
        return dict(self.mult)

    def m(self, i: int, j: int) -> int:
        return self.table[_pair(i, j)]

    @property
    def total(self) -> int:
        return sum(v for _, v in self.mult)


@dataclass(frozen=True)
class Component:
    id: int
    classes: tuple[ContactClass, ...]


@dataclass(frozen=True)
class SeparationState:
    sections: int
    components: tuple[Component, ...]

    def to_json(self) -> dict:
        return {
            "sections": self.sections,
            "components": [
                {
                    "id": c.id,
                    "classes": [
                        {"members": list(k.members), "mult": {f"{i},{j}": v for (i, j), v in k.mult}}
                        for k in c.classes
                    ],
                }
                for c in self.components
            ],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "SeparationState":
        comps = []
        for c in doc["components"]:
            classes = []
            for k in c["classes"]:
                mult = {}
                for key, v in k["mult"].items():
                    i, j = (int(t) for t in key.split(","))
                    mult[(i, j)] = int(v)
                classes.append(ContactClass.make((int(x) for x in k["members"]), mult))
            comps.append(Component(int(c["id"]), tuple(classes)))
        return cls(int(doc["sections"]), tuple(comps))

    def component(self, cid: int) -> Component:
        for c in self.components:
            if c.id == cid:
                return c
        raise DomainError(f"no component {cid}")


def validate_state(s: SeparationState) -> tuple[bool, str | None]:
    if s.sections < 0:
        return False, "negative section count"
    ids = [c.id for c in s.components]
    if len(set(ids)) != len(ids):
        return False, "duplicate component id"
    for c in s.components:
        seen = set()
        for k in c.classes:
            if not k.members:
                return False, f"component {c.id}: empty class"
            if len(set(k.members)) != len(k.members):
                return False, f"component {c.id}: repeated member in class {list(k.members)}"
            for i in k.members:
                if not 1 <= i <= s.sections:
                    return False, f"component {c.id}: section {i} out of range 1..{s.sections}"
                if i in seen:
                    return False, f"component {c.id}: section {i} lies in two classes"
                seen.add(i)
            table = k.table
            if len(table) != len(k.mult):
                return False, f"component {c.id}: duplicate multiplicity entry"
            if any(i >= j for (i, j), _ in k.mult):
                return False, f"component {c.id}: multiplicity keys must be ordered pairs i < j"
            expected = {_pair(i, j) for i, j in combinations(k.members, 2)}
            if set(table) != expected:
                return False, f"component {c.id}: class {list(k.members)} multiplicity table has wrong pairs"
            for p, v in table.items():
                if v < 1:
                    return False, f"component {c.id}: m{p} = {v} < 1"
            for i, j, l in combinations(k.members, 3):
                vals = sorted((table[_pair(i, j)], table[_pair(i, l)], table[_pair(j, l)]))
                if vals[0] != vals[1]:
                    return False, f"component {c.id}: contacts of {i},{j},{l} are not ultrametric {vals}"
    return True, None


@dataclass(frozen=True, order=True)
class DescentMeasure:
    n_P: int
    N_P: int
    total: int

    @property
    def pair(self) -> tuple[int, int]:
        return (self.n_P, self.N_P)


def measure(s: SeparationState) -> DescentMeasure:
    sizes = [len(k.members) for c in s.components for k in c.classes]
    total = sum(k.total for c in s.components for k in c.classes)
    n = max(sizes, default=1)
    if n < 2:
        return DescentMeasure(1, 0, total)
    return DescentMeasure(n, sizes.count(n), total)


def select_center(s: SeparationState) -> tuple[int, ContactClass, DescentMeasure]:
    mu = measure(s)
    if mu.n_P < 2:
        raise DomainError("state is already separated")
    best = min(
        (c.id, k.members, k) for c in s.components for k in c.classes if len(k.members) == mu.n_P
    )
    return best[0], best[2], mu


def _split(members: Sequence[int], table: Mapping[tuple[int, int], int]) -> list[tuple[int, ...]]:
    """Connected components of the relation ``m(i, j) >= 1``."""
    g = nx.Graph()
    g.add_nodes_from(members)
    g.add_edges_from(p for p, v in table.items() if v >= 1)
    return sorted(tuple(sorted(cc)) for cc in nx.connected_components(g))


@dataclass(frozen=True)
class LedgerEntry:
    step: int
    component: int
    members: tuple[int, ...]
    before: tuple[tuple[tuple[int, int], int], ...]
    after: tuple[tuple[tuple[int, int], int], ...]
    label: str

    def to_json(self) -> dict:
        return {
            "step": self.step,
            "component": self.component,
            "members": list(self.members),
            "before": {f"{i},{j}": v for (i, j), v in self.before},
            "after": {f"{i},{j}": v for (i, j), v in self.after},
            "label": self.label,
        }


def blowup_step(s: SeparationState, center: tuple[int, ContactClass], step: int = 1) -> tuple[SeparationState, LedgerEntry]:
    cid, cls = center
    ok, why = validate_state(s)
    if not ok:
        raise DomainError(f"invalid state: {why}")
    comp = s.component(cid)
    if cls not in comp.classes:
        raise DomainError(f"class {list(cls.members)} is not a class of component {cid}")
    if len(cls.members) < 2:
        raise DomainError("cannot blow up a singleton class")
    after = {p: v - 1 for p, v in cls.mult}
    pieces = []
    for grp in _split(cls.members, after):
        if len(grp) >= 2:
            pieces.append(ContactClass.make(grp, {p: v for p, v in after.items() if p[0] in grp and p[1] in grp}))
    classes = sorted([k for k in comp.classes if k != cls] + pieces, key=lambda k: k.members)
    comps = tuple(Component(cid, tuple(classes)) if c.id == cid else c for c in s.components)
    entry = LedgerEntry(step, cid, cls.members, cls.mult, tuple(sorted(after.items())), f"E{step}")
    return SeparationState(s.sections, comps), entry


@dataclass
class FiberTree:
    """Fibre over one base component: vertices are fibre components, root ``"F"``."""

    component: int
    vertices: list[str]
    edges: list[tuple[str, str]]
    position: dict[int, str]

    @classmethod
    def initial(cls, component: int, sections: int) -> "FiberTree":
        return cls(component, ["F"], [], {i: "F" for i in range(1, sections + 1)})

    def to_json(self) -> dict:
        return {
            "component": self.component,
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
            "position": {str(i): v for i, v in sorted(self.position.items())},
        }


def apply_entry(tree: FiberTree, entry: LedgerEntry) -> None:
    parents = {tree.position[i] for i in entry.members}
    if len(parents) != 1:
        raise DomainError(f"members of blown-up class {list(entry.members)} are on different fibre components")
    tree.vertices.append(entry.label)
    tree.edges.append((parents.pop(), entry.label))
    for i in entry.members:
        tree.position[i] = entry.label


def trees_from_ledger(s0: SeparationState, ledger: Sequence[LedgerEntry]) -> dict[int, FiberTree]:
    trees = {c.id: FiberTree.initial(c.id, s0.sections) for c in s0.components}
    for e in ledger:
        apply_entry(trees[e.component], e)
    return trees


def fiber_tree_check(t: FiberTree, s: SeparationState | None = None) -> tuple[bool, str | None]:
    g = nx.Graph()
    g.add_nodes_from(t.vertices)
    for a, b in t.edges:
        if a not in g or b not in g:
            return False, f"edge {a}-{b} uses an unknown vertex"
        if g.has_edge(a, b) or a == b:
            return False, f"repeated or looped edge {a}-{b}"
        g.add_edge(a, b)
    if len(g) == 0 or not nx.is_tree(g):
        return False, "fibre is not a tree"
    for i, v in t.position.items():
        if v not in g:
            return False, f"section {i} sits on unknown vertex {v}"
    if s is not None:
        if set(t.position) != set(range(1, s.sections + 1)):
            return False, "section assignment is not total"
        for k in s.component(t.component).classes:
            if len({t.position[i] for i in k.members}) != 1:
                return False, f"class {list(k.members)} is spread over several fibre components"
    return True, None


@dataclass
class SeparationRun:
    initial: SeparationState
    final: SeparationState
    ledger: list[LedgerEntry]
    trees: dict[int, FiberTree]
    measures: list[DescentMeasure]
    states: list[SeparationState]


def separate_all(s: SeparationState, check: bool = False) -> SeparationRun:
    ok, why = validate_state(s)
    if not ok:
        raise DomainError(f"invalid state: {why}")
    trees = {c.id: FiberTree.initial(c.id, s.sections) for c in s.components}
    ledger = []
    measures = [measure(s)]
    states = [s]
    state = s
    budget = measures[0].total
    while measures[-1].n_P >= 2:
        if len(ledger) >= budget:
            raise AssertionError("step budget exceeded")
        cid, cls, _ = select_center(state)
        state, entry = blowup_step(state, (cid, cls), len(ledger) + 1)
        apply_entry(trees[cid], entry)
        ledger.append(entry)
        measures.append(measure(state))
        states.append(state)
        if check:
            ok, why = validate_state(state)
            if not ok:
                raise AssertionError(f"step {entry.step}: {why}")
            ok, why = fiber_tree_check(trees[cid], state)
            if not ok:
                raise AssertionError(f"step {entry.step}: {why}")
    return SeparationRun(s, state, ledger, trees, measures, states)


# --- exceptional loci of composites -----------------------------------------

Stage = tuple[frozenset, Mapping[str, frozenset]]


def _pull(pullback: Mapping[str, Iterable[str]], labels: Iterable[str]) -> frozenset:
    out = set()
    for a in labels:
        if a not in pullback:
            raise DomainError(f"unmapped label {a!r}")
        out |= set(pullback[a])
    return frozenset(out)


def compose_stages(f: Stage, g: Stage) -> Stage:
    """Stage of ``f o g``: ``E = g^-1(E_f) | E_g`` and pullback ``g^* o f^*``."""
    ef, pf = f
    eg, pg = g
    pull = {a: _pull(pg, bs) for a, bs in pf.items()}
    return _pull(pg, ef) | frozenset(eg), pull


def exceptional_composite(stages: Sequence[tuple[Iterable[str], Mapping[str, Iterable[str]]]]) -> frozenset:
    """Exceptional set of ``f_1 o f_2 o ... o f_n`` from ``(E(f_k), f_k^*)``.

    ``f_k^*`` sends divisor labels on the target of ``f_k`` to sets of
    labels on its source; the first stage's map is not needed.
    """
    if not stages:
        return frozenset()
    norm = [(frozenset(e), {a: frozenset(b) for a, b in p.items()}) for e, p in stages]
    acc = norm[0][0]
    for e, p in norm[1:]:
        acc = _pull(p, acc) | e
    return acc


def ledger_stages(ledger: Sequence[LedgerEntry]) -> list[Stage]:
    """One stage per blowup: it creates its label and pulls earlier ones back to strict transforms."""
    stages = []
    labels: list[str] = []
    for e in ledger:
        stages.append((frozenset([e.label]), {a: frozenset([a]) for a in labels}))
        labels.append(e.label)
    return stages
