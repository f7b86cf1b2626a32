import json
import shutil
from pathlib import Path

import pytest

from desingkit import cli
from desingkit.acceptance import CORPUS_DIR, CorpusConfig, build_corpus, write_corpus
from desingkit.cli import main, run_command

INSTANCES = Path(str(CORPUS_DIR)) / "instances"


class Flags:
    trace = False
    check = True


def write(tmp_path, kind, payload, name="in.json"):
    p = tmp_path / name
    p.write_text(json.dumps({"kind": kind, "payload": payload}))
    return p


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_hilbert_on_a1_cone(capsys):
    code, doc = run(["hilbert", INSTANCES / "cone_1012.json"], capsys)
    assert code == 0
    assert doc["outputs"]["hilbert_basis"] == [["1", "0"], ["1", "1"], ["1", "2"]]
    assert all(v == "pass" for v in doc["checks"].values())


def test_belyi_run_x2_minus_2(tmp_path, capsys):
    p = write(tmp_path, "belyi", {"factors": [["-2", "0", "1"]], "sections": []})
    code, doc = run(["belyi-run", p], capsys)
    assert code == 0
    assert doc["outputs"]["steps"] == 1
    assert doc["outputs"]["sections"] == ["-2", "0", "infinity"]


def test_malformed_file_exits_2(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{"kind": "cone", "payload": {"rank": "2", "rays": [[1.5, "0"]]}}')
    code, doc = run(["smooth", p], capsys)
    assert code == 2
    assert "malformed" in doc["error"]
    p.write_text("not json")
    assert run(["smooth", p], capsys)[0] == 2


def test_unknown_command_exits_2(capsys):
    assert main(["frobnicate", str(INSTANCES / "cone_1012.json")]) == 2


def test_domain_error_exits_1(capsys):
    code, doc = run(["hilbert", INSTANCES / "cone_line.json"], capsys)
    assert code == 1 and "domain error" in doc["error"]


def test_failed_self_check_exits_3(monkeypatch):
    monkeypatch.setattr(cli, "hilbert_basis", lambda c: [(1, 0), (1, 2)])
    report, code = run_command("hilbert", INSTANCES / "cone_1012.json", Flags)
    assert code == 3
    assert "self-check failed" in report.error


def test_reports_are_deterministic(tmp_path):
    a = run_command("resolve-fan", INSTANCES / "cone_1012.json", Flags)[0].to_json()
    b = run_command("resolve-fan", INSTANCES / "cone_1012.json", Flags)[0].to_json()
    a.pop("wall_time"), b.pop("wall_time")
    assert a == b
    assert a["seed"] == 0 and len(a["input_digest"]) == 64


def test_out_and_trace(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["resolve-fan", str(INSTANCES / "cone_1013.json"), "--trace", "--out", str(out)])
    assert code == 0 and capsys.readouterr().out == ""
    doc = json.loads(out.read_text())
    assert doc["trace"] and doc["trace"][0]["kind"] == "barycentric"
    assert doc["checks"]["all_smooth"] == "pass"


@pytest.mark.parametrize("command, instance", [
    ("dual", "cone_a1_dual.json"),
    ("smooth", "cone_orthant3.json"),
    ("check-projective", "fan_orthant2_bary.json"),
    ("toric", "toric_a1.json"),
    ("separate", "separation_triple.json"),
    ("check-family", "strata_orthant_barycentric.json"),
])
def test_commands_pass_their_checks(command, instance):
    report, code = run_command(command, INSTANCES / instance, Flags)
    assert code == 0, report.error
    assert all(v == "pass" for v in report.checks.values())


def test_twisted_fan_has_no_certificate():
    report, code = run_command("check-projective", INSTANCES / "fan_twisted.json", Flags)
    assert code == 0
    assert report.outputs["projective"] is False


def test_incompatible_family_is_a_verdict_not_an_error():
    report, code = run_command("check-family", INSTANCES / "strata_orthant_trivial_T2.json", Flags)
    assert code == 0
    assert report.outputs["compatible"] is False and "T2" in report.outputs["violation"]


def test_verify_small_corpus(tmp_path):
    base = tmp_path / "corpus"
    shutil.copytree(INSTANCES, base / "instances")
    shutil.copy(Path(str(CORPUS_DIR)) / "manifest.json", base / "manifest.json")
    cfg = CorpusConfig(n_hilbert=5, n_resolve=2, n_projective=3, n_belyi=5, n_separation=10, n_matrices=20)
    write_corpus(build_corpus(cfg), base, cfg.seed)
    report, code = run_command("verify-corpus", base, Flags)
    assert code == 0, report.error
    assert len(report.outputs["criteria"]) == 8
    assert all(r["passed"] for r in report.outputs["instances"].values())


def test_verify_rejects_non_corpus(tmp_path):
    assert run_command("verify-corpus", tmp_path, Flags)[1] == 2
