import json
import shutil
import subprocess
import sys

import pytest

from qqkit.cli import main
from qqkit.verify import FIXTURE_DIR, run_corpus


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_expand_latex(capsys):
    code, out, _ = run_cli(["expand", "--quiver", "A1", "--w", '{"1": 2}', "--format", "latex"], capsys)
    assert code == 0
    assert "\\mathscr{S}" in out and "\\mathsf{Y}_{x_{1}}" in out


def test_hasse_digraph(capsys):
    code, out, _ = run_cli(["hasse", "--quiver", "A1", "--w", '{"1": 1}'], capsys)
    assert code == 0
    assert out.count(" -> ") == 1 and out.startswith("digraph")


def test_json_pipeline_round_trip(capsys):
    code, out, _ = run_cli(["expand", "--quiver", "BC2", "--w", '{"1": 1}', "--format", "json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert len(data["terms"]) == 5


def test_run_job_with_higgs_and_limit(tmp_path, capsys):
    job = {
        "quiver": "A1",
        "w": {"1": 2},
        "command": "limit",
        "higgs": {"x(1,2)": "x(1,1)*q1"},
        "limit": "q1",
        "format": "json",
    }
    path = tmp_path / "job.json"
    path.write_text(json.dumps(job))
    code, out, _ = run_cli(["run", str(path)], capsys)
    assert code == 0
    data = json.loads(out)
    assert sorted(t["coeff"] for t in data["terms"]) == [1, 1, 2]


def test_job_rejects_unknown_fields(tmp_path, capsys):
    path = tmp_path / "job.json"
    path.write_text(json.dumps({"quiver": "A1", "w": {"1": 1}, "bogus": True}))
    code, _, err = run_cli(["run", str(path)], capsys)
    assert code == 2 and "unknown job fields" in err


def test_affine_expand_series(capsys):
    code, out, _ = run_cli(
        ["affine-expand", "--quiver", "A0hat", "--w", '{"0": 1}', "--max-deg", "1", "--format", "json"],
        capsys,
    )
    assert code == 0
    data = json.loads(out)
    assert [blk["qdeg"] for blk in data["series"]] == [0, 1]


def test_burge_check(capsys):
    code, out, _ = run_cli(["burge-check", "--r", "1", "--i", "0", "--j", "1", "--max-size", "2"], capsys)
    assert code == 0
    assert json.loads(out)["agree"] is True


def test_exit_codes(capsys):
    code, _, err = run_cli(["expand", "--quiver", "Zk", "--w", "{}"], capsys)
    assert code == 2
    # colliding weight parameters -> derivative case is rejected
    code, _, err = run_cli(
        ["expand", "--quiver", "A1", "--w", '{"1": 2}', "--params", '{"1,2": "x(1,1)"}'],
        capsys,
    )
    assert code == 4


def test_inline_quiver_json(capsys):
    spec = json.dumps({"nodes": [{"id": "1", "d": 1}], "edges": []})
    code, out, _ = run_cli(["expand", "--quiver", spec, "--w", '{"1": 1}', "--format", "json"], capsys)
    assert code == 0
    assert len(json.loads(out)["terms"]) == 2


def test_verify_perturbed_corpus_fails_once(tmp_path):
    corpus = tmp_path / "corpus"
    shutil.copytree(FIXTURE_DIR, corpus)
    path = corpus / "a2.json"
    data = json.loads(path.read_text())
    for fx in data:
        if fx["id"] == "a2-w20-generic-count":
            fx["expect_count"] = 10
    path.write_text(json.dumps(data))
    report = run_corpus(corpus, threads=2)
    assert report.counts["fail"] == 1
    assert not report.ok
    failing = [e for e in report.entries if e.status == "fail"]
    assert failing[0].id == "a2-w20-generic-count"


def test_verify_cli_exit_zero_on_bundled_corpus(capsys):
    code, out, _ = run_cli(["verify", "--threads", "4"], capsys)
    assert code == 0
    assert "0 fail" in out


def test_console_script_installed():
    exe = shutil.which("qqkit")
    if exe is None:
        pytest.skip("console script not on PATH")
    proc = subprocess.run(
        [exe, "expand", "--quiver", "A1", "--w", '{"1": 1}', "--format", "text"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
