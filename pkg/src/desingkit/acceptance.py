"""Acceptance criteria as executable checks over a frozen instance corpus.

The random instances live in ``corpus/criterion<N>.json``; they were drawn
by the generators below with a fixed seed (see ``scripts/make_corpus.py``)
so that the suite, the CLI and the tests all look at the same inputs.
"""
from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable

from .belyi import BelyiState, belyi_run
from .cone import Cone, hilbert_basis, is_smooth, multiplicity, triangulate
from .exactmath import DomainError, hnf, primitive, snf
from .fan import Fan, barycentric_subdivision, is_refinement, resolve, stellar_subdivision, validate_fan
from .fibration import (
    Component,
    ContactClass,
    FiberTree,
    SeparationState,
    apply_entry,
    fiber_tree_check,
    measure,
    separate_all,
    validate_state,
)
from .oracles import brute_hilbert, check_hnf, check_snf
from .poly import RatPoly, squarefree_part
from .projective import check_certificate, is_projective_subdivision
from .toric import barycentric_family, check_compatible_family, orthant_chain, toric_from_monomials


@dataclass
class CorpusConfig:
    seed: int = 0
    n_hilbert: int = 200
    n_resolve: int = 100
    n_projective: int = 50
    n_belyi: int = 100
    n_separation: int = 200
    n_matrices: int = 500
    max_parallelepiped: int = 5000


@dataclass
class Limits:
    hilbert_total_s: float = 60.0
    resolve_each_s: float = 10.0
    belyi_each_s: float = 5.0


# --- generators --------------------------------------------------------------

def random_pointed_cone(rng: random.Random, rank: int, max_rays: int = 5, bound: int = 5,
                        full: bool = False) -> Cone:
    while True:
        rays = [tuple(rng.randint(-bound, bound) for _ in range(rank)) for _ in range(rng.randint(1, max_rays))]
        rays = [r for r in rays if any(r)]
        if not rays:
            continue
        try:
            c = Cone(rank, tuple(rays))
        except DomainError:
            continue
        if full and c.dim != rank:
            continue
        return c


def parallelepiped_size(c: Cone) -> int:
    return sum(multiplicity(Cone.from_canonical(c.rank, s)) for s in triangulate(c))


def random_fan(rng: random.Random, rank: int) -> Fan:
    """A random pointed cone, starred at up to two random lattice points inside it."""
    c = random_pointed_cone(rng, rank)
    f = Fan.of_cone(c)
    for _ in range(rng.randint(0, 2)):
        coeffs = [rng.randint(0, 2) for _ in c.rays]
        v = [sum(a * r[i] for a, r in zip(coeffs, c.rays)) for i in range(rank)]
        if any(v):
            f = stellar_subdivision(f, primitive(v))
    return f


def random_squarefree(rng: random.Random, max_degree: int = 5, height: int = 8) -> RatPoly:
    while True:
        d = rng.randint(1, max_degree)
        f = RatPoly([rng.randint(-height, height) for _ in range(d)] + [1])
        if squarefree_part(f) == f:
            return f


def _ultrametric(members: list[int], rng: random.Random, base: int, cap: int) -> dict:
    out = {}
    if len(members) < 2:
        return out
    if base >= cap:
        return {(i, j): cap for a, i in enumerate(members) for j in members[a + 1:]}
    rng.shuffle(members)
    k = rng.randint(2, len(members))
    cuts = sorted(rng.sample(range(1, len(members)), k - 1))
    groups = [members[a:b] for a, b in zip([0] + cuts, cuts + [len(members)])]
    for x, g in enumerate(groups):
        for h in groups[x + 1:]:
            for i in g:
                for j in h:
                    out[(min(i, j), max(i, j))] = base
        out.update(_ultrametric(list(g), rng, rng.randint(base + 1, cap), cap))
    return out


def random_separation_state(rng: random.Random, max_sections: int = 8, max_components: int = 5,
                            max_mult: int = 5) -> SeparationState:
    m = rng.randint(1, max_sections)
    comps = []
    for cid in rng.sample(range(1, 10), rng.randint(1, max_components)):
        pool = list(range(1, m + 1))
        rng.shuffle(pool)
        classes = []
        while len(pool) >= 2 and rng.random() < 0.8:
            size = rng.randint(2, len(pool))
            members, pool = pool[:size], pool[size:]
            mult = _ultrametric(list(members), rng, rng.randint(1, max_mult), max_mult)
            classes.append(ContactClass.make(members, mult))
        comps.append(Component(cid, tuple(sorted(classes, key=lambda k: k.members))))
    return SeparationState(m, tuple(sorted(comps, key=lambda c: c.id)))


def random_matrix(rng: random.Random, max_size: int = 4, bound: int = 20) -> list[list[int]]:
    m, n = rng.randint(1, max_size), rng.randint(1, max_size)
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)]


def build_corpus(cfg: CorpusConfig = CorpusConfig()) -> dict[int, list]:
    """Draw the random instances of criteria 1, 2, 3, 5, 6, 7 as JSON payloads."""
    out: dict[int, list] = {}
    rng = random.Random(f"{cfg.seed}-hilbert")
    cones = []
    while len(cones) < cfg.n_hilbert:
        c = random_pointed_cone(rng, rng.randint(1, 3))
        if parallelepiped_size(c) <= cfg.max_parallelepiped:
            cones.append(c.to_json())
    out[1] = cones
    rng = random.Random(f"{cfg.seed}-resolve")
    out[2] = [random_pointed_cone(rng, 3, full=True).to_json() for _ in range(cfg.n_resolve)]
    rng = random.Random(f"{cfg.seed}-projective")
    out[3] = [random_fan(rng, rng.choice((1, 2, 3, 3, 3))).to_json() for _ in range(cfg.n_projective)]
    rng = random.Random(f"{cfg.seed}-belyi")
    out[5] = [{"factors": [random_squarefree(rng).to_json()], "sections": [], "infinity": True}
              for _ in range(cfg.n_belyi)]
    rng = random.Random(f"{cfg.seed}-separation")
    out[6] = [random_separation_state(rng).to_json() for _ in range(cfg.n_separation)]
    rng = random.Random(f"{cfg.seed}-matrices")
    out[7] = [random_matrix(rng) for _ in range(cfg.n_matrices)]
    return out


CORPUS_DIR = resources.files("desingkit") / "corpus"


def load_corpus(directory: str | Path | None = None) -> dict[int, list]:
    base = Path(directory) if directory is not None else Path(str(CORPUS_DIR))
    out = {}
    for n in (1, 2, 3, 5, 6, 7):
        doc = json.loads((base / f"criterion{n}.json").read_text())
        out[n] = doc["instances"]
    return out


def write_corpus(corpus: dict[int, list], directory: str | Path, seed: int) -> None:
    base = Path(directory)
    base.mkdir(parents=True, exist_ok=True)
    for n, items in corpus.items():
        doc = {"criterion": n, "seed": seed, "instances": items}
        (base / f"criterion{n}.json").write_text(json.dumps(doc, indent=1) + "\n")


# --- criteria ----------------------------------------------------------------

@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0
    failures: list = field(default_factory=list)

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"criterion {self.number} [{verdict}] {self.name}: {self.detail} ({self.seconds:.1f}s)"

    def to_json(self) -> dict:
        return {"criterion": self.number, "name": self.name, "passed": self.passed,
                "detail": self.detail, "failures": self.failures[:10]}


def _result(n, name, failures, detail, t0) -> CriterionResult:
    return CriterionResult(n, name, not failures, detail if not failures else f"{len(failures)} failures; first: {failures[0]}",
                           time.perf_counter() - t0, failures)


def criterion_1(cones: list, limits: Limits = Limits()) -> CriterionResult:
    t0 = time.perf_counter()
    failures = []
    spent = 0.0
    for doc in cones:
        c = Cone.from_json(doc)
        t = time.perf_counter()
        H = hilbert_basis(c)
        spent += time.perf_counter() - t
        B = brute_hilbert(c.rank, c.rays)
        if sorted(H) != B:
            failures.append(f"cone {list(c.rays)}: engine {sorted(H)} != oracle {B}")
    if spent >= limits.hilbert_total_s:
        failures.append(f"hilbert_basis took {spent:.1f}s in total")
    return _result(1, "Hilbert basis vs box-enumeration oracle", failures,
                   f"{len(cones)} cones agree exactly; engine time {spent:.2f}s", t0)


def criterion_2(cones: list, limits: Limits = Limits()) -> CriterionResult:
    t0 = time.perf_counter()
    failures = []
    worst = 0.0
    for doc in cones:
        c = Cone.from_json(doc)
        coarse = Fan.of_cone(c)
        t = time.perf_counter()
        f = resolve(coarse)
        dt = time.perf_counter() - t
        worst = max(worst, dt)
        where = f"cone {list(c.rays)}"
        if dt >= limits.resolve_each_s:
            failures.append(f"{where}: resolve took {dt:.1f}s")
        if not all(is_smooth(s) for s in f.cones):
            failures.append(f"{where}: non-smooth output cone")
        if not is_refinement(f, coarse):
            failures.append(f"{where}: output does not refine the input")
        ok, why = validate_fan(f)
        if not ok:
            failures.append(f"{where}: invalid fan: {why}")
    return _result(2, "toric resolution of random rank-3 cones", failures,
                   f"{len(cones)} cones resolved to smooth valid refinements; slowest {worst:.2f}s", t0)


def criterion_3(fans: list) -> CriterionResult:
    t0 = time.perf_counter()
    failures = []
    for doc in fans:
        f = Fan.from_json(doc)
        b = barycentric_subdivision(f)
        cert = is_projective_subdivision(b, f)
        if cert is None:
            failures.append(f"fan {[list(c.rays) for c in f.cones]}: no certificate")
            continue
        ok, why = check_certificate(b, cert)
        if not ok:
            failures.append(f"fan {[list(c.rays) for c in f.cones]}: certificate rejected: {why}")
    return _result(3, "barycentric subdivisions are projective", failures,
                   f"{len(fans)} certificates found and re-validated", t0)


def criterion_4() -> CriterionResult:
    t0 = time.perf_counter()
    failures = []
    model = toric_from_monomials(2, [(1, 0), (1, 2)])
    if model.n_plus.rays != ((0, 1), (2, -1)):
        failures.append(f"N+ rays {model.n_plus.rays}")
    if multiplicity(model.n_plus) != 2:
        failures.append(f"multiplicity {multiplicity(model.n_plus)}")
    f = resolve(Fan.of_cone(model.n_plus))
    added = sorted(set(f.rays) - set(model.n_plus.rays))
    if added != [(1, 0)]:
        failures.append(f"inserted rays {added}")
    if len(f.cones) != 2 or not all(is_smooth(c) for c in f.cones):
        failures.append(f"output cones {[c.rays for c in f.cones]}")
    return _result(4, "A1 end to end", failures,
                   "N+ = cone{(0,1),(2,-1)}, multiplicity 2, ray (1,0) inserted, 2 smooth cones", t0)


def criterion_5(states: list, limits: Limits = Limits()) -> CriterionResult:
    t0 = time.perf_counter()
    failures = []
    worst = 0.0
    for doc in states:
        s = BelyiState.from_json(doc)
        t = time.perf_counter()
        final, trace = belyi_run(s)
        dt = time.perf_counter() - t
        worst = max(worst, dt)
        where = f"factors {[str(f) for f in s.factors]}"
        if dt >= limits.belyi_each_s:
            failures.append(f"{where}: took {dt:.1f}s")
        prev = s.measure
        for rec in trace:
            if rec.before != prev or not rec.after < rec.before:
                failures.append(f"{where}: measure {rec.before.as_tuple()} -> {rec.after.as_tuple()}")
            if rec.critical.degree > rec.chosen.degree - 1:
                failures.append(f"{where}: critical values of degree {rec.critical.degree} for d = {rec.chosen.degree}")
            prev = rec.after
        if final.factors or final.measure.as_tuple() != (1, 0):
            failures.append(f"{where}: final state still has components")
    return _result(5, "Belyi degree descent", failures,
                   f"{len(states)} runs reach an all-rational branch set; slowest {worst:.3f}s", t0)


def criterion_6(states: list) -> CriterionResult:
    t0 = time.perf_counter()
    failures = []
    total_steps = 0
    for doc in states:
        s = SeparationState.from_json(doc)
        where = f"state {doc}"
        ok, why = validate_state(s)
        if not ok:
            failures.append(f"{where}: generator produced an invalid state: {why}")
            continue
        run = separate_all(s)
        total_steps += len(run.ledger)
        mu = [measure(x) for x in run.states]
        if len(run.ledger) > mu[0].total:
            failures.append(f"{where}: {len(run.ledger)} steps > initial total {mu[0].total}")
        trees = {c.id: FiberTree.initial(c.id, s.sections) for c in s.components}
        for k, entry in enumerate(run.ledger):
            a, b = mu[k], mu[k + 1]
            if not b.total < a.total:
                failures.append(f"{where}: total did not drop at step {k + 1}")
            if b.pair > a.pair:
                failures.append(f"{where}: (n_P, N_P) rose at step {k + 1}")
            if any(v - w != 1 for (_, v), (_, w) in zip(entry.before, entry.after)):
                failures.append(f"{where}: step {k + 1} did not lower every multiplicity by one")
            ok, why = validate_state(run.states[k + 1])
            if not ok:
                failures.append(f"{where}: step {k + 1} state invalid: {why}")
            apply_entry(trees[entry.component], entry)
            ok, why = fiber_tree_check(trees[entry.component], run.states[k + 1])
            if not ok:
                failures.append(f"{where}: step {k + 1} fibre tree: {why}")
        if mu[-1].n_P != 1:
            failures.append(f"{where}: final n_P = {mu[-1].n_P}")
    return _result(6, "separation descent", failures,
                   f"{len(states)} states separated in {total_steps} blowups; all invariants held", t0)


def criterion_7(matrices: list) -> CriterionResult:
    t0 = time.perf_counter()
    failures = []
    for A in matrices:
        S, U, V = snf(A)
        why = check_snf(A, S, U, V)
        if why:
            failures.append(f"snf {A}: {why}")
        H, W = hnf(A)
        why = check_hnf(A, H, W)
        if why:
            failures.append(f"hnf {A}: {why}")
    return _result(7, "normal-form soundness", failures,
                   f"{len(matrices)} matrices: recomposition, unimodularity, divisibility, determinant", t0)


def criterion_8() -> CriterionResult:
    t0 = time.perf_counter()
    failures = []
    system = orthant_chain(3)
    family = barycentric_family(system)
    ok, why = check_compatible_family(system, family)
    if not ok:
        failures.append(f"barycentric family rejected: {why}")
    located = []
    for label in ("T2", "T3"):
        broken = dict(family)
        broken[label] = Fan.of_cone(system.supports[label])
        ok, why = check_compatible_family(system, broken)
        if ok or not why or "relation" not in why or label not in why:
            failures.append(f"trivial subdivision on {label} not rejected with a located violation ({why})")
        else:
            located.append(why)
    return _result(8, "compatible family on the orthant chain", failures,
                   "barycentric family passes; trivial level rejected: " + "; ".join(located), t0)


def run_all(corpus: dict[int, list] | None = None, limits: Limits = Limits()) -> list[CriterionResult]:
    corpus = corpus if corpus is not None else load_corpus()
    runners: list[Callable[[], CriterionResult]] = [
        lambda: criterion_1(corpus[1], limits),
        lambda: criterion_2(corpus[2], limits),
        lambda: criterion_3(corpus[3]),
        criterion_4,
        lambda: criterion_5(corpus[5], limits),
        lambda: criterion_6(corpus[6]),
        lambda: criterion_7(corpus[7]),
        criterion_8,
    ]
    return [r() for r in runners]
