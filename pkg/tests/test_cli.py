import json
import subprocess
import sys
from pathlib import Path

import pytest

from insep.cli import main, run, run_case

CORPUS = Path(__file__).parent / "paper"
CASES = sorted(p.parent.name for p in CORPUS.glob("*/case.json"))


@pytest.fixture
def files(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)

    def write(**named):
        for name, text in named.items():
            (tmp_path / name.replace("_", ".")).write_text(text)
    return write


@pytest.mark.parametrize("case", CASES)
def test_corpus_case(case):
    r = run_case(str(CORPUS / case))
    assert r.passed, r.detail


def test_corpus_is_not_empty():
    assert len(CASES) >= 20


def test_corpus_command(capsys):
    assert main(["--format", "text", "corpus", "run", str(CORPUS)]) == 0
    out = capsys.readouterr().out
    assert out.rstrip().endswith(f"{len(CASES)} passed, 0 failed")


def test_parse_reports_fragment(files):
    files(t_dl="(sub A (some r B))\n")
    code, out = run(["parse", "t.dl"])
    assert code == 0 and out["fragment"] == "AcyclicEL"


def test_parse_error_exit_code(files, capsys):
    files(t_dl="(sub A (some r B)\n")
    assert main(["parse", "t.dl"]) == 1
    assert "insep:" in capsys.readouterr().err


def test_missing_file_is_usage_error():
    code, out = run(["parse", "/nonexistent/t.dl"])
    assert code == 1 and "cannot read" in out["error"]


def test_bad_arguments():
    assert run(["diff"])[0] == 1
    assert run(["frobnicate"])[0] == 1


def test_unsupported_fragment_exit_code(files):
    files(t1_dl="(sub A (all r B))\n", t2_dl="")
    code, out = run(["diff", "--t1", "t1.dl", "--t2", "t2.dl", "--sigma", "concept:A"])
    assert code == 2 and out["kind"] == "UnsupportedFragment"


def test_inconsistent_chase_exit_code(files):
    files(t_dl="(sub A (not B))\n", a_dl="(ca A c) (ca B c)\n")
    code, out = run(["chase", "--tbox", "t.dl", "--abox", "a.dl"])
    assert code == 2 and out["kind"] == "InconsistentKB"


def test_witness_cap_exit_code(files):
    files(t_dl="(sub A (some r B)) (sub B (some r C)) (sub C (some r A))\n", a_dl="(ca A a)\n")
    code, out = run(["--witness-cap", "1", "chase", "--tbox", "t.dl", "--abox", "a.dl"])
    assert code == 3 and out["kind"] == "ResourceCap"
    assert run(["chase", "--tbox", "t.dl", "--abox", "a.dl"])[0] == 0


def test_text_format(files, capsys):
    files(t_dl="(sub A B)\n")
    assert main(["safety", "--tbox", "t.dl", "--sigma", "concept:A", "--format", "text"]) == 0
    assert "safe: true" in capsys.readouterr().out


def test_json_output_is_canonical(files, capsys):
    files(t_dl="(sub A B)\n")
    main(["module", "--tbox", "t.dl", "--sigma", "concept:A"])
    a = capsys.readouterr().out
    main(["module", "--tbox", "t.dl", "--sigma", "concept:A"])
    assert a == capsys.readouterr().out
    assert json.loads(a)["module"]


def test_corpus_update_rewrites_failures(tmp_path):
    d = tmp_path / "c" / "one"
    d.mkdir(parents=True)
    (d / "t.dl").write_text("(sub A B)\n")
    (d / "case.json").write_text(json.dumps({"argv": ["parse", "t.dl"]}))
    (d / "expected.json").write_text("{}\n")
    assert not run_case(str(d)).passed
    code, out = run(["corpus", "run", str(tmp_path / "c"), "--update"])
    assert code == 0 and out["failed"] == 1
    assert run_case(str(d)).passed


def test_console_script(files):
    files(t_dl="(sub A B)\n")
    res = subprocess.run([sys.executable, "-m", "insep.cli", "parse", "t.dl"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["fragment"]
