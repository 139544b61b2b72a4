import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from propcoh.cli import main

MODELS = Path(__file__).resolve().parent.parent / "models"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("path", sorted(MODELS.glob("*.prop")), ids=lambda p: p.name)
def test_check_corpus_passes(path):
    code, out, _ = run("check", str(path))
    assert code == 0, out
    assert ", 0 failed," in out.splitlines()[-1]


def test_check_failing_file_prints_counterexample():
    code, out, _ = run("check", str(MODELS / "failing" / "structural_eq.prop"))
    assert code == 1
    assert "FAIL" in out and "left:" in out and "right:" in out


@pytest.mark.parametrize("name", ["unbalanced.prop", "unbound.prop"])
def test_check_malformed_exits_2(name):
    code, out, err = run("check", str(MODELS / "malformed" / name))
    assert code == 2
    assert out == "" and err.startswith("error:")


def test_check_missing_file():
    assert run("check", str(MODELS / "nope.prop"))[0] == 2


def test_check_json():
    code, out, _ = run("check", str(MODELS / "retract.prop"), "--json")
    assert code == 0
    data = json.loads(out)
    assert data["summary"]["failed"] == 0
    for rec in data["records"]:
        assert set(rec) >= {"loc", "desc", "status", "detail"}
        assert rec["status"] in ("PASS", "FAIL")


@pytest.mark.parametrize("base", ["pt", "arr"])
def test_laws_pass_and_are_deterministic(base):
    code, out, _ = run("laws", "--base", base, "--cases", "100", "--seed", "42")
    assert code == 0
    assert "FAIL" not in out
    assert out.count("100/100 cases") == 9
    assert run("laws", "--base", base, "--cases", "100", "--seed", "42")[1] == out


def test_laws_json_and_seed_sensitivity():
    code, out, _ = run("laws", "--base", "span", "--cases", "5", "--seed", "1", "--json")
    assert code == 0
    assert json.loads(out)["summary"]["passed"] == 9


def test_laws_bad_arguments():
    assert run("laws", "--base", "pt", "--cases", "0")[0] == 2
    assert run("laws", "--base", "nope")[0] == 2
    assert run("frobnicate")[0] == 2


@pytest.mark.parametrize("base, counts", [
    ("pt", [2]), ("arr", [2, 3]), ("span", [2, 3, 3]), ("chain3", [2, 3, 4])])
def test_omega_text_and_json(base, counts):
    code, out, _ = run("omega", "--base", base)
    assert code == 0
    assert [int(line.split()[1]) for line in out.splitlines()] == counts
    data = json.loads(run("omega", "--base", base, "--json")[1])
    assert [row["count"] for row in data["objects"]] == counts
    assert all(len(row["sieves"]) == row["count"] for row in data["objects"])


def test_omega_arr_text():
    assert run("omega", "--base", "arr")[1] == "a: 2  [{}, {id_a}]\nb: 3  [{}, {f}, {id_b,f}]\n"


def test_omega_from_file():
    code, out, _ = run("omega", "--file", str(MODELS / "idempotent.prop"))
    assert code == 0
    assert out.startswith("o: 3")
    assert run("omega", "--base", "nope")[0] == 2


@pytest.mark.parametrize("name", ["retract", "propext", "negneg"])
def test_demos(name):
    code, out, _ = run("demo", name)
    assert code == 0
    assert "FAIL" not in out and "PASS" in out
    data = json.loads(run("demo", name, "--json")[1])
    assert data["summary"]["failed"] == 0


def test_retract_demo_shows_both_diagrams():
    out = run("demo", "retract")[1]
    assert "V        o:[t, u]" in out and "V        o:[*]" in out
    assert "for all 8 codes" in out


def test_unknown_demo():
    code, _, err = run("demo", "nope")
    assert code == 2 and "nope" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "propcoh", "omega", "--base", "pt"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout == "o: 2  [{}, {id_o}]\n"
