"""Command-line front end.

    desingkit <command> <instance.json> [--trace] [--check] [--out report.json]

Each run writes one JSON report. Exit codes: 0 success, 1 domain error,
2 malformed input or unknown command, 3 a postcondition self-check failed.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from . import __version__
from .acceptance import CORPUS_DIR, load_corpus, run_all
from .belyi import belyi_run
from .cone import Cone, contains, dual_cone, hilbert_basis, is_simplicial, is_smooth, multiplicity
from .exactmath import DomainError, dot, elementary_divisors
from .fan import Fan, is_refinement, resolve, validate_fan
from .fibration import fiber_tree_check, measure, separate_all, validate_state
from .instances import (
    MalformedInput,
    build_belyi,
    build_cone,
    build_fan,
    build_separation,
    build_strata,
    read_instance,
)
from .oracles import brute_hilbert
from .projective import check_certificate, is_projective_subdivision
from .toric import check_compatible_family, toric_from_monomials

SEED = 0
EXIT_OK, EXIT_DOMAIN, EXIT_MALFORMED, EXIT_CHECK = 0, 1, 2, 3


@dataclass
class RunReport:
    command: str
    input_digest: str
    outputs: dict = field(default_factory=dict)
    trace: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)
    wall_time: float = 0.0
    error: str | None = None

    def to_json(self) -> dict:
        out = {
            "command": self.command,
            "version": __version__,
            "seed": SEED,
            "input_digest": self.input_digest,
            "outputs": self.outputs,
            "trace": self.trace,
            "checks": self.checks,
            "wall_time": round(self.wall_time, 6),
        }
        if self.error is not None:
            out["error"] = self.error
        return out


def _vec(v) -> list[str]:
    return [str(x) for x in v]


def _expect(kind: str, *allowed: str) -> None:
    if kind not in allowed:
        raise MalformedInput(f"this command takes a {' or '.join(allowed)} instance, got {kind!r}")


def _check(report: RunReport, name: str, ok: bool, why: str | None = None) -> None:
    report.checks[name] = "pass" if ok else f"fail: {why or 'postcondition violated'}"


# --- commands -------------------------------------------------------------------

def cmd_dual(kind, doc, report, opts):
    _expect(kind, "cone")
    c = build_cone(doc)
    d = dual_cone(c)
    report.outputs = {"dual": d.to_json()}
    _check(report, "pairing_nonnegative", all(dot(u, r) >= 0 for u in d.rays for r in c.rays))
    _check(report, "involution", dual_cone(d) == c)


def _in_monoid(v, gens, cone, memo):
    if not any(v):
        return True
    if v in memo:
        return memo[v]
    memo[v] = False
    for g in gens:
        w = tuple(a - b for a, b in zip(v, g))
        if contains(cone, w) and _in_monoid(w, gens, cone, memo):
            memo[v] = True
            break
    return memo[v]


def cmd_hilbert(kind, doc, report, opts):
    _expect(kind, "cone")
    c = build_cone(doc)
    if not c.pointed:
        raise DomainError("Hilbert bases are defined here for pointed cones only")
    H = hilbert_basis(c)
    report.outputs = {"hilbert_basis": [_vec(h) for h in H], "size": len(H)}
    Hs = set(H)
    _check(report, "rays_included", all(r in Hs for r in c.rays))
    _check(report, "elements_in_cone", all(contains(c, h) for h in H))
    irreducible = all(not any(g != h and contains(c, tuple(a - b for a, b in zip(h, g))) for g in H) for h in H)
    _check(report, "irreducible", irreducible)
    if opts.check and c.rank <= 3:
        B = brute_hilbert(c.rank, c.rays)
        _check(report, "box_enumeration_oracle", sorted(H) == B, f"oracle found {B}")


def cmd_smooth(kind, doc, report, opts):
    _expect(kind, "cone")
    c = build_cone(doc)
    if not c.pointed:
        raise DomainError("smoothness is defined for pointed cones")
    out = {"smooth": is_smooth(c), "simplicial": is_simplicial(c), "dim": c.dim}
    if is_simplicial(c):
        out["multiplicity"] = str(multiplicity(c))
        divs = elementary_divisors([list(r) for r in c.rays]) if c.rays else []
        p = 1
        for x in divs:
            p *= x
        _check(report, "multiplicity_is_index", p == multiplicity(c))
    _check(report, "smooth_iff_multiplicity_one", out["smooth"] == (is_simplicial(c) and multiplicity(c) == 1))
    report.outputs = out


def cmd_resolve(kind, doc, report, opts):
    _expect(kind, "cone", "fan")
    f = Fan.of_cone(build_cone(doc)) if kind == "cone" else build_fan(doc)
    trace = []
    g = resolve(f, trace)
    report.outputs = {
        "fan": g.to_json(),
        "cones": len(g.cones),
        "new_rays": [_vec(r) for r in sorted(set(g.rays) - set(f.rays))],
        "steps": len(trace),
    }
    if opts.trace:
        report.trace = trace
    ok, why = validate_fan(g)
    _check(report, "valid_fan", ok, why)
    _check(report, "refines_input", is_refinement(g, f))
    _check(report, "all_smooth", all(is_smooth(c) for c in g.cones))


def cmd_projective(kind, doc, report, opts):
    _expect(kind, "fan")
    f = build_fan(doc)
    if f.support is None:
        raise MalformedInput("check-projective needs the subdivided cone in the fan's \"support\" field")
    cert = is_projective_subdivision(f, f.support)
    report.outputs = {"projective": cert is not None}
    if cert is not None:
        report.outputs["certificate"] = cert.to_json()
        ok, why = check_certificate(f, cert)
        _check(report, "certificate_revalidates", ok, why)


def cmd_toric(kind, doc, report, opts):
    _expect(kind, "toric-model")
    model = toric_from_monomials(doc["r"], doc["monomials"], doc["extra_affine_rank"])
    report.outputs = model.to_json()
    _check(report, "duality", all(dot(n, m) >= 0 for n in model.n_plus.rays for m in model.m_plus))
    m_cone = Cone(model.m_rank, model.monomials)
    memo = {}
    _check(report, "monomials_generated", all(_in_monoid(m, model.m_plus, m_cone, memo) for m in model.monomials))


def cmd_belyi(kind, doc, report, opts):
    _expect(kind, "belyi")
    s = build_belyi(doc)
    final, trace = belyi_run(s)
    report.outputs = {
        "initial": s.to_json(),
        "final": final.to_json(),
        "sections": [str(x) for x in final.sections] + ["infinity"],
        "steps": len(trace),
        "measures": [list(s.measure.as_tuple())] + [list(r.after.as_tuple()) for r in trace],
    }
    if opts.trace:
        report.trace = [r.to_json(k + 1) for k, r in enumerate(trace)]
    prev = s.measure
    descent = True
    bound = True
    for r in trace:
        descent &= r.before == prev and r.after < r.before
        bound &= r.critical.degree <= r.chosen.degree - 1
        prev = r.after
    _check(report, "measure_descent", descent)
    _check(report, "critical_degree_bound", bound)
    _check(report, "all_sections", not final.factors)


def cmd_separate(kind, doc, report, opts):
    _expect(kind, "separation")
    s = build_separation(doc)
    ok, why = validate_state(s)
    if not ok:
        raise DomainError(f"invalid separation state: {why}")
    run = separate_all(s, check=opts.check)
    mus = [measure(x) for x in run.states]
    report.outputs = {
        "final": run.final.to_json(),
        "steps": len(run.ledger),
        "measures": [[m.n_P, m.N_P, m.total] for m in mus],
        "fiber_trees": [run.trees[k].to_json() for k in sorted(run.trees)],
    }
    report.trace = [e.to_json() for e in run.ledger]
    _check(report, "states_valid", all(validate_state(x)[0] for x in run.states))
    _check(report, "total_decreases", all(b.total < a.total for a, b in zip(mus, mus[1:])))
    _check(report, "pair_nonincreasing", all(b.pair <= a.pair for a, b in zip(mus, mus[1:])))
    _check(report, "step_bound", len(run.ledger) <= mus[0].total)
    _check(report, "separated", mus[-1].n_P == 1)
    _check(report, "fiber_trees", all(fiber_tree_check(t, run.final)[0] for t in run.trees.values()))


def cmd_family(kind, doc, report, opts):
    _expect(kind, "strata")
    system, family = build_strata(doc)
    ok, why = system.validate()
    if not ok:
        raise DomainError(f"invalid strata system: {why}")
    good, violation = check_compatible_family(system, family)
    report.outputs = {
        "compatible": good,
        "violation": violation,
        "family": {a: family[a].to_json() for a in sorted(family)},
    }
    for a, f in sorted(family.items()):
        ok, why = validate_fan(f)
        _check(report, f"valid_fan_{a}", ok, why)


COMMANDS = {
    "dual": cmd_dual,
    "hilbert": cmd_hilbert,
    "smooth": cmd_smooth,
    "resolve-fan": cmd_resolve,
    "check-projective": cmd_projective,
    "toric": cmd_toric,
    "belyi-run": cmd_belyi,
    "separate": cmd_separate,
    "check-family": cmd_family,
}


# --- corpus ---------------------------------------------------------------------

@lru_cache(maxsize=1)
def _manifest(base: str) -> list[dict]:
    return json.loads((Path(base) / "manifest.json").read_text())


def _subset(expected, got) -> bool:
    if isinstance(expected, dict):
        return isinstance(got, dict) and all(k in got and _subset(v, got[k]) for k, v in expected.items())
    return expected == got


def verify_corpus(directory: Path, opts) -> tuple[dict, bool]:
    ok_all = True
    results = {}
    for item in sorted(_manifest(str(directory)), key=lambda x: x["name"]):
        class Flags:
            trace = False
            check = True
        report, code = run_command(item["command"], directory / item["file"], Flags)
        doc = report.to_json()
        want_code = item.get("exit", 0)
        good = code == want_code and _subset(item.get("expect", {}), doc["outputs"])
        ok_all &= good
        results[item["name"]] = {"command": item["command"], "exit": code, "passed": good}
    criteria = run_all(load_corpus(directory))
    for c in criteria:
        ok_all &= c.passed
    return {"instances": results, "criteria": [c.to_json() for c in criteria]}, ok_all


# --- driver ---------------------------------------------------------------------

def run_command(command: str, path, opts) -> tuple[RunReport, int]:
    t0 = time.perf_counter()
    report = RunReport(command, "")
    try:
        if command == "verify-corpus":
            base = Path(path) if path else Path(str(CORPUS_DIR))
            if not (base / "manifest.json").exists():
                raise MalformedInput(f"{base} is not a corpus directory (no manifest.json)")
            report.input_digest = hashlib.sha256((base / "manifest.json").read_bytes()).hexdigest()
            outputs, good = verify_corpus(base, opts)
            report.outputs = outputs
            for c in outputs["criteria"]:
                _check(report, f"criterion_{c['criterion']}", c["passed"], c["detail"])
            for name, r in outputs["instances"].items():
                _check(report, f"instance_{name}", r["passed"])
            code = EXIT_OK if good else EXIT_CHECK
        else:
            if command not in COMMANDS:
                raise MalformedInput(f"unknown command {command!r}")
            if path is None:
                raise MalformedInput(f"{command} needs an instance file")
            kind, doc, digest = read_instance(path)
            report.input_digest = digest
            COMMANDS[command](kind, doc, report, opts)
            failed = [k for k, v in report.checks.items() if v != "pass"]
            code = EXIT_CHECK if failed else EXIT_OK
            if failed:
                report.error = f"self-check failed: {', '.join(failed)}"
    except MalformedInput as exc:
        report.error = f"malformed input: {exc}"
        code = EXIT_MALFORMED
    except DomainError as exc:
        report.error = f"domain error: {exc}"
        code = EXIT_DOMAIN
    report.wall_time = time.perf_counter() - t0
    return report, code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="desingkit", description="Exact toroidal desingularization toolkit.")
    p.add_argument("command", help=", ".join(list(COMMANDS) + ["verify-corpus"]))
    p.add_argument("input", nargs="?", help="instance file (corpus directory for verify-corpus)")
    p.add_argument("--trace", action="store_true", help="include full step traces")
    p.add_argument("--check", action="store_true", help="also run the expensive independent checks")
    p.add_argument("--out", help="write the report here instead of stdout")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command not in COMMANDS and args.command != "verify-corpus":
        print(f"desingkit: unknown command {args.command!r}", file=sys.stderr)
        return EXIT_MALFORMED
    report, code = run_command(args.command, args.input, args)
    text = json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if report.error:
        print(f"desingkit: {report.error}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
