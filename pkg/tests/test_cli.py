from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from lapspec.cli import main
from lapspec.graph import PathFriendshipSpec, gen_path, gen_path_friendship
from lapspec.graph6 import from_graph6, to_graph6
from lapspec.canon import is_isomorphic


def run(monkeypatch, capsys, argv, stdin=""):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def test_generate(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["generate", "friendship", "--s", "2"])
    assert code == 0 and len(out.splitlines()) == 1 and from_graph6(out.strip()).n == 5
    code, out, _ = run(monkeypatch, capsys, ["generate", "path-friendship", "--s", "1", "--t", "1"])
    assert is_isomorphic(from_graph6(out.strip()), gen_path_friendship(PathFriendshipSpec(1, (1,))))
    code, out, _ = run(monkeypatch, capsys, ["generate", "gabcd", "--a", "1", "--b", "1", "--c", "1", "--d", "1"])
    assert from_graph6(out.strip()).n == 9


@pytest.mark.parametrize(
    "argv",
    [
        ["generate", "cycle", "--n", "2"],
        ["generate", "lollipop", "--n", "5"],
        ["generate", "bogus"],
        ["generate", "windwheel", "--s", "1", "--t", "1", "2"],
    ],
)
def test_generate_usage_errors(monkeypatch, capsys, argv):
    code, _, err = run(monkeypatch, capsys, argv)
    assert code == 2 and err


def test_spectrum_k3(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["spectrum"], "Bw\n")
    rec = json.loads(out)
    assert code == 0 and rec["charpoly"] == ["0", "9", "-6", "1"]
    assert [round(v, 9) for v in rec["mu"]] == [3, 3, 0]
    assert rec["tau"] == 1e-10


def test_spectrum_empty_and_corrupt(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["spectrum"], "")
    assert code == 0 and out == ""
    code, out, err = run(monkeypatch, capsys, ["spectrum"], "Bw\nB?\nB!!\nBw\n")
    assert code == 1 and "line 3" in err and len(out.splitlines()) == 2
    code, out, _ = run(monkeypatch, capsys, ["spectrum", "--lenient"], "Bw\nB!!\nBw\n")
    assert code == 0 and len(out.splitlines()) == 2


def test_spectrum_formats(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["spectrum", "--format", "csv"], "Bw\nCF\n")
    lines = out.splitlines()
    assert lines[0].startswith("graph6,n,m,charpoly") and len(lines) == 3
    code, out, _ = run(monkeypatch, capsys, ["spectrum", "--format", "plain"], "Bw\n")
    assert "charpoly" in out
    code, _, _ = run(monkeypatch, capsys, ["spectrum", "--tau", "0"], "Bw\n")
    assert code == 2


def test_search(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["search", "--n", "5", "--connected"])
    classes = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(classes) == 21 and sum(len(c["members"]) for c in classes) == 21
    code, out2, _ = run(monkeypatch, capsys, ["search", "--n", "5", "--connected", "--workers", "2"])
    assert out2 == out
    code, _, _ = run(monkeypatch, capsys, ["search", "--n", "12", "--m", "3"])
    assert code == 3


def test_certify(monkeypatch, capsys, tmp_path):
    from lapspec import search

    monkeypatch.setattr(search, "_memo", {})
    code, out, _ = run(monkeypatch, capsys, ["certify", "--cache-dir", str(tmp_path)], "C{\n")
    cert = json.loads(out)
    assert code == 0 and cert["verdict"] == "DLS-at-scope" and cert["examined"] == 2
    assert (tmp_path / "n4" / "m4" / "classes.jsonl").exists()
    code, out, _ = run(monkeypatch, capsys, ["certify", "C{"])
    assert json.loads(out)["verdict"] == "DLS-at-scope"
    code, _, err = run(monkeypatch, capsys, ["certify"], to_graph6(gen_path(12)) + "\n")
    assert code == 3 and "refused" in err


def test_certify_uses_env_cache(monkeypatch, capsys, tmp_path):
    from lapspec import search

    monkeypatch.setattr(search, "_memo", {})
    monkeypatch.setenv("DLS_CACHE_DIR", str(tmp_path))
    code, _, _ = run(monkeypatch, capsys, ["certify"], "Bw\n")
    assert code == 0 and (tmp_path / "n3" / "m3" / "classes.jsonl").exists()


def test_verify_subset(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["verify-paper", "--only", "lemma31", "--max-n", "10"])
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and [r["check"] for r in recs] == ["lemma31"]
    assert recs[0]["params"]["max_n"] == 10 and recs[0]["tolerances"]["tau"] == 1e-10
    code, out, _ = run(monkeypatch, capsys, ["verify-paper", "--only", "lemma31,lemma32", "--max-n", "8", "--tau", "1e-3"])
    assert code == 0 and len(out.splitlines()) == 2
    assert json.loads(out.splitlines()[0])["tolerances"]["tau"] == 1e-3
    code, _, _ = run(monkeypatch, capsys, ["verify-paper", "--only", "nope"])
    assert code == 2


def test_verify_deterministic(monkeypatch, capsys):
    argv = ["verify-paper", "--only", "guo,case_analysis", "--max-n", "8"]
    _, a, _ = run(monkeypatch, capsys, argv)
    _, b, _ = run(monkeypatch, capsys, argv + ["--workers", "2"])
    assert a == b


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "lapspec.cli", "generate", "path", "--n", "3"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "Bg"


def test_verify_failure_exit_code(monkeypatch, capsys):
    from lapspec import verify

    def broken(cfg):
        return verify.record("broken", {}, "never", {"why": "forced"}, False)

    monkeypatch.setitem(verify.CHECKS, "broken", broken)
    code, out, err = run(monkeypatch, capsys, ["verify-paper", "--only", "broken"])
    assert code == 1 and json.loads(out)["pass"] is False and "FAILED broken" in err
