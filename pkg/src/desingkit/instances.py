"""Instance files: ``{"kind": ..., "payload": ...}`` with numbers as decimal strings.

Parsing is strict and raises :class:`MalformedInput` for anything that does
not match the schema. Mathematical problems with well-formed input (a cone
containing a line, say) surface later as ``DomainError``.
"""
from __future__ import annotations

import hashlib
import json
import re
from fractions import Fraction
from pathlib import Path

from .belyi import BelyiState
from .cone import Cone
from .exactmath import DomainError
from .fan import Fan
from .fibration import Component, ContactClass, SeparationState
from .poly import RatPoly
from .toric import Inclusion, StrataSystem, barycentric_family

KINDS = ("cone", "fan", "toric-model", "belyi", "separation", "strata")

_INT = re.compile(r"-?\d+")
_RAT = re.compile(r"-?\d+(/\d+)?")


class MalformedInput(ValueError):
    pass


def parse_int(x, where: str) -> int:
    if isinstance(x, bool):
        raise MalformedInput(f"{where}: expected an integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str) and _INT.fullmatch(x.strip()):
        return int(x)
    raise MalformedInput(f"{where}: expected an integer as a decimal string, got {x!r}")


def parse_rat(x, where: str) -> Fraction:
    if isinstance(x, bool):
        raise MalformedInput(f"{where}: expected a rational, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str) and _RAT.fullmatch(x.strip()):
        num, _, den = x.strip().partition("/")
        if den and int(den) == 0:
            raise MalformedInput(f"{where}: zero denominator in {x!r}")
        return Fraction(int(num), int(den) if den else 1)
    raise MalformedInput(f"{where}: expected a rational as \"p/q\", got {x!r}")


def _obj(x, where: str) -> dict:
    if not isinstance(x, dict):
        raise MalformedInput(f"{where}: expected an object")
    return x


def _list(x, where: str) -> list:
    if not isinstance(x, list):
        raise MalformedInput(f"{where}: expected an array")
    return x


def _key(d: dict, k: str, where: str):
    if k not in d:
        raise MalformedInput(f"{where}: missing field {k!r}")
    return d[k]


def parse_vector(x, where: str) -> tuple[int, ...]:
    return tuple(parse_int(v, f"{where}[{i}]") for i, v in enumerate(_list(x, where)))


def parse_cone_doc(x, where: str = "cone") -> dict:
    d = _obj(x, where)
    k = parse_int(_key(d, "rank", where), f"{where}.rank")
    rays = [parse_vector(r, f"{where}.rays[{i}]") for i, r in enumerate(_list(_key(d, "rays", where), f"{where}.rays"))]
    for i, r in enumerate(rays):
        if len(r) != k:
            raise MalformedInput(f"{where}.rays[{i}]: length {len(r)} does not match rank {k}")
    pointed = d.get("pointed", True)
    if not isinstance(pointed, bool):
        raise MalformedInput(f"{where}.pointed: expected a boolean")
    return {"rank": k, "rays": rays, "pointed": pointed}


def parse_fan_doc(x, where: str = "fan") -> dict:
    d = _obj(x, where)
    k = parse_int(_key(d, "rank", where), f"{where}.rank")
    cones = [parse_cone_doc(c, f"{where}.cones[{i}]") for i, c in enumerate(_list(_key(d, "cones", where), f"{where}.cones"))]
    support = parse_cone_doc(d["support"], f"{where}.support") if d.get("support") is not None else None
    for c in cones + ([support] if support else []):
        if c["rank"] != k:
            raise MalformedInput(f"{where}: cone rank {c['rank']} does not match fan rank {k}")
    return {"rank": k, "cones": cones, "support": support}


def parse_toric_doc(x, where: str = "toric-model") -> dict:
    d = _obj(x, where)
    r = parse_int(_key(d, "r", where), f"{where}.r")
    mons = [parse_vector(m, f"{where}.monomials[{i}]") for i, m in enumerate(_list(_key(d, "monomials", where), f"{where}.monomials"))]
    extra = parse_int(d.get("extra_affine_rank", 0), f"{where}.extra_affine_rank")
    return {"r": r, "monomials": mons, "extra_affine_rank": extra}


def parse_belyi_doc(x, where: str = "belyi") -> dict:
    d = _obj(x, where)
    factors = []
    for i, f in enumerate(_list(_key(d, "factors", where), f"{where}.factors")):
        factors.append([parse_rat(c, f"{where}.factors[{i}][{j}]") for j, c in enumerate(_list(f, f"{where}.factors[{i}]"))])
    sections = [parse_rat(s, f"{where}.sections[{i}]") for i, s in enumerate(_list(d.get("sections", []), f"{where}.sections"))]
    infinity = d.get("infinity", True)
    if not isinstance(infinity, bool):
        raise MalformedInput(f"{where}.infinity: expected a boolean")
    return {"factors": factors, "sections": sections, "infinity": infinity}


def parse_separation_doc(x, where: str = "separation") -> dict:
    d = _obj(x, where)
    m = parse_int(_key(d, "sections", where), f"{where}.sections")
    comps = []
    for i, c in enumerate(_list(_key(d, "components", where), f"{where}.components")):
        cw = f"{where}.components[{i}]"
        c = _obj(c, cw)
        cid = parse_int(_key(c, "id", cw), f"{cw}.id")
        classes = []
        for j, k in enumerate(_list(_key(c, "classes", cw), f"{cw}.classes")):
            kw = f"{cw}.classes[{j}]"
            k = _obj(k, kw)
            members = [parse_int(v, f"{kw}.members") for v in _list(_key(k, "members", kw), f"{kw}.members")]
            mult = {}
            for key, v in _obj(k.get("mult", {}), f"{kw}.mult").items():
                parts = key.split(",")
                if len(parts) != 2:
                    raise MalformedInput(f"{kw}.mult: key {key!r} is not \"i,j\"")
                i1, j1 = (parse_int(p, f"{kw}.mult key") for p in parts)
                mult[(i1, j1)] = parse_int(v, f"{kw}.mult[{key}]")
            classes.append({"members": members, "mult": mult})
        comps.append({"id": cid, "classes": classes})
    return {"sections": m, "components": comps}


def parse_strata_doc(x, where: str = "strata") -> dict:
    d = _obj(x, where)
    strata = {}
    for label, s in _obj(_key(d, "strata", where), f"{where}.strata").items():
        sw = f"{where}.strata.{label}"
        s = _obj(s, sw)
        strata[label] = {
            "codim": parse_int(_key(s, "codim", sw), f"{sw}.codim"),
            "support": parse_cone_doc(_key(s, "support", sw), f"{sw}.support"),
        }
    incs = []
    for i, inc in enumerate(_list(d.get("inclusions", []), f"{where}.inclusions")):
        iw = f"{where}.inclusions[{i}]"
        inc = _obj(inc, iw)
        src, dst = _key(inc, "source", iw), _key(inc, "target", iw)
        if src not in strata or dst not in strata:
            raise MalformedInput(f"{iw}: unknown stratum label")
        matrix = [parse_vector(r, f"{iw}.matrix[{j}]") for j, r in enumerate(_list(_key(inc, "matrix", iw), f"{iw}.matrix"))]
        incs.append({"source": src, "target": dst, "matrix": matrix})
    fam = d.get("family", "barycentric")
    if fam == "barycentric":
        family = "barycentric"
    else:
        family = {}
        for label, f in _obj(fam, f"{where}.family").items():
            if label not in strata:
                raise MalformedInput(f"{where}.family: unknown stratum {label!r}")
            family[label] = parse_fan_doc(f, f"{where}.family.{label}")
    return {"strata": strata, "inclusions": incs, "family": family}


PARSERS = {
    "cone": parse_cone_doc,
    "fan": parse_fan_doc,
    "toric-model": parse_toric_doc,
    "belyi": parse_belyi_doc,
    "separation": parse_separation_doc,
    "strata": parse_strata_doc,
}


def parse_instance(raw: bytes) -> tuple[str, dict]:
    try:
        doc = json.loads(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedInput(f"not valid JSON: {exc}") from None
    doc = _obj(doc, "instance")
    kind = _key(doc, "kind", "instance")
    if kind not in PARSERS:
        raise MalformedInput(f"unknown instance kind {kind!r}; expected one of {', '.join(KINDS)}")
    return kind, PARSERS[kind](_key(doc, "payload", "instance"))


def read_instance(path: str | Path) -> tuple[str, dict, str]:
    """``(kind, parsed payload, sha256 of the file bytes)``."""
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from None
    kind, payload = parse_instance(raw)
    return kind, payload, hashlib.sha256(raw).hexdigest()


def instance(kind: str, payload: dict) -> dict:
    return {"kind": kind, "payload": payload}


# --- domain objects from parsed documents (may raise DomainError) ----------

def build_cone(doc: dict) -> Cone:
    return Cone(doc["rank"], tuple(doc["rays"]), pointed=doc["pointed"])


def build_fan(doc: dict) -> Fan:
    support = build_cone(doc["support"]) if doc.get("support") else None
    return Fan(doc["rank"], tuple(build_cone(c) for c in doc["cones"]), support)


def build_belyi(doc: dict) -> BelyiState:
    if not doc["infinity"]:
        raise DomainError("the section at infinity is always present")
    return BelyiState.from_polynomials([RatPoly(f) for f in doc["factors"]], doc["sections"])


def build_separation(doc: dict) -> SeparationState:
    comps = []
    for c in doc["components"]:
        classes = tuple(ContactClass.make(k["members"], k["mult"]) for k in c["classes"])
        comps.append(Component(c["id"], classes))
    return SeparationState(doc["sections"], tuple(comps))


def build_strata(doc: dict) -> tuple[StrataSystem, dict[str, Fan]]:
    supports = {a: build_cone(s["support"]) for a, s in doc["strata"].items()}
    codims = {a: s["codim"] for a, s in doc["strata"].items()}
    incs = tuple(Inclusion(i["source"], i["target"], tuple(tuple(r) for r in i["matrix"])) for i in doc["inclusions"])
    system = StrataSystem(supports, codims, incs)
    if doc["family"] == "barycentric":
        family = barycentric_family(system)
    else:
        family = {a: build_fan(f) for a, f in doc["family"].items()}
    return system, family
