"""Write the golden CLI instances and their manifest into the bundled corpus."""
import json
from pathlib import Path

from desingkit.cone import Cone
from desingkit.fan import Fan, barycentric_subdivision
from desingkit.toric import orthant_chain

OUT = Path(__file__).resolve().parents[1] / "src" / "desingkit" / "corpus"


def cone(rank, rays, **extra):
    doc = {"rank": rank, "rays": [[str(x) for x in r] for r in rays]}
    doc.update(extra)
    return doc


def fan(rank, cones, support=None):
    doc = {"rank": rank, "cones": [cone(rank, c) for c in cones]}
    if support is not None:
        doc["support"] = cone(rank, support)
    return doc


e1, e2, e3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
a, b, c = (2, 1, 1), (1, 2, 1), (1, 1, 2)
twisted = [[e1, e2, b], [e1, b, a], [e2, e3, c], [e2, c, b], [e3, e1, a], [e3, a, c], [a, b, c]]

system = orthant_chain(3)
strata = {
    "strata": {k: {"codim": str(system.codims[k]), "support": system.supports[k].to_json()} for k in system.supports},
    "inclusions": [{"source": i.source, "target": i.target, "matrix": [[str(x) for x in r] for r in i.matrix]}
                   for i in system.inclusions],
}
bary = {k: barycentric_subdivision(Fan.of_cone(s)).to_json() for k, s in system.supports.items()}
broken = dict(bary, T2=Fan.of_cone(system.supports["T2"]).to_json())

instances = {
    "cone_1012": ("cone", cone(2, [(1, 0), (1, 2)])),
    "cone_1013": ("cone", cone(2, [(1, 0), (1, 3)])),
    "cone_a1_dual": ("cone", cone(2, [(0, 1), (2, -1)])),
    "cone_orthant3": ("cone", cone(3, [e1, e2, e3])),
    "cone_line": ("cone", cone(2, [(1, 0), (-1, 0)])),
    "cone_malformed": ("cone", {"rank": "2", "rays": [["1", "x"]]}),
    "fan_orthant2_bary": ("fan", barycentric_subdivision(Fan.of_cone(Cone(2, ((1, 0), (0, 1))))).to_json()),
    "fan_twisted": ("fan", fan(3, twisted, support=[e1, e2, e3])),
    "toric_a1": ("toric-model", {"r": "2", "monomials": [["1", "0"], ["1", "2"]]}),
    "toric_infinite_index": ("toric-model", {"r": "2", "monomials": [["1", "0"], ["2", "0"]]}),
    "belyi_x2m2": ("belyi", {"factors": [["-2", "0", "1"]], "sections": [], "infinity": True}),
    "belyi_x3m2": ("belyi", {"factors": [["-2", "0", "0", "1"]], "sections": [], "infinity": True}),
    "belyi_x4x1": ("belyi", {"factors": [["1", "1", "0", "0", "1"]], "sections": [], "infinity": True}),
    "separation_triple": ("separation", {"sections": "3", "components": [
        {"id": "1", "classes": [{"members": ["1", "2", "3"], "mult": {"1,2": "2", "1,3": "1", "2,3": "1"}}]}]}),
    "separation_not_ultrametric": ("separation", {"sections": "3", "components": [
        {"id": "1", "classes": [{"members": ["1", "2", "3"], "mult": {"1,2": "2", "1,3": "2", "2,3": "1"}}]}]}),
    "strata_orthant_barycentric": ("strata", dict(strata, family=bary)),
    "strata_orthant_trivial_T2": ("strata", dict(strata, family=broken)),
}

manifest = [
    {"name": "hilbert_1012", "command": "hilbert", "file": "cone_1012",
     "expect": {"hilbert_basis": [["1", "0"], ["1", "1"], ["1", "2"]]}},
    {"name": "hilbert_1013", "command": "hilbert", "file": "cone_1013",
     "expect": {"hilbert_basis": [["1", "0"], ["1", "1"], ["1", "2"], ["1", "3"]]}},
    {"name": "dual_1012", "command": "dual", "file": "cone_1012",
     "expect": {"dual": {"rank": 2, "rays": [["0", "1"], ["2", "-1"]]}}},
    {"name": "smooth_a1", "command": "smooth", "file": "cone_a1_dual",
     "expect": {"smooth": False, "multiplicity": "2"}},
    {"name": "smooth_orthant", "command": "smooth", "file": "cone_orthant3", "expect": {"smooth": True}},
    {"name": "smooth_malformed", "command": "smooth", "file": "cone_malformed", "exit": 2},
    {"name": "hilbert_line", "command": "hilbert", "file": "cone_line", "exit": 1},
    {"name": "resolve_a1", "command": "resolve-fan", "file": "cone_a1_dual",
     "expect": {"cones": 2, "new_rays": [["1", "0"]]}},
    {"name": "projective_orthant2", "command": "check-projective", "file": "fan_orthant2_bary",
     "expect": {"projective": True}},
    {"name": "projective_twisted", "command": "check-projective", "file": "fan_twisted",
     "expect": {"projective": False}},
    {"name": "toric_a1", "command": "toric", "file": "toric_a1",
     "expect": {"smooth": False, "multiplicity": "2", "n_plus": {"rank": 2, "rays": [["0", "1"], ["2", "-1"]]}}},
    {"name": "toric_infinite_index", "command": "toric", "file": "toric_infinite_index", "exit": 1},
    {"name": "belyi_x2m2", "command": "belyi-run", "file": "belyi_x2m2",
     "expect": {"steps": 1, "sections": ["-2", "0", "infinity"]}},
    {"name": "belyi_x3m2", "command": "belyi-run", "file": "belyi_x3m2",
     "expect": {"steps": 1, "sections": ["-2", "0", "infinity"]}},
    {"name": "belyi_x4x1", "command": "belyi-run", "file": "belyi_x4x1", "expect": {"final": {"factors": []}}},
    {"name": "separate_triple", "command": "separate", "file": "separation_triple",
     "expect": {"steps": 2, "measures": [[3, 1, 4], [2, 1, 1], [1, 0, 0]]}},
    {"name": "separate_not_ultrametric", "command": "separate", "file": "separation_not_ultrametric", "exit": 1},
    {"name": "family_barycentric", "command": "check-family", "file": "strata_orthant_barycentric",
     "expect": {"compatible": True}},
    {"name": "family_trivial_T2", "command": "check-family", "file": "strata_orthant_trivial_T2",
     "expect": {"compatible": False}},
]

(OUT / "instances").mkdir(parents=True, exist_ok=True)
for name, (kind, payload) in instances.items():
    (OUT / "instances" / f"{name}.json").write_text(json.dumps({"kind": kind, "payload": payload}, indent=1) + "\n")
for item in manifest:
    item["file"] = f"instances/{item['file']}.json"
(OUT / "manifest.json").write_text(json.dumps(manifest, indent=1) + "\n")
print(f"{len(instances)} instances, {len(manifest)} manifest entries")
