import json
import subprocess
import sys
from pathlib import Path

import pytest

from bochvar_lab.algebra import find_isomorphism
from bochvar_lab.cli import BAD_INPUT, FAIL, OK, RunConfig, main
from bochvar_lab.equivalence import BochvarSystem, algebra_to_system, system_to_algebra
from bochvar_lab.fixtures import wke
from bochvar_lab.io import algebra_from_json, algebra_to_json, load, system_from_json
from bochvar_lab.plonka import decompose, plonka_sum

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


# -- check -----------------------------------------------------------------------

def test_check_wke_bca(capsys):
    code, out, _ = run(capsys, "check", DATA / "wke.alg", "--set", "BCA")
    assert code == OK
    assert sum(line.endswith("HOLDS") for line in out.splitlines()) == 13


def test_check_wke_v_fails(capsys):
    code, out, _ = run(capsys, "check", DATA / "wke.alg", "--set", "V")
    assert code == FAIL
    assert "V.extra: FAILS at x=half" in out.splitlines()


def test_check_b2_ba(capsys):
    assert run(capsys, "check", DATA / "b2.alg", "--set", "BA")[0] == OK


def test_check_reports_counterexample_in_json(capsys):
    code, out, _ = run(capsys, "--json", "check", DATA / "sl2.alg", "--set", "BCA")
    assert code == FAIL
    items = json.loads(out)["items"]
    assert any(not it["holds"] and it["counterexample"] for it in items)


def test_unknown_set_is_input_error(capsys):
    code, _, err = run(capsys, "check", DATA / "wke.alg", "--set", "XYZ")
    assert code == BAD_INPUT and "unknown axiom set" in err


def test_missing_and_malformed_files(capsys, tmp_path):
    code, _, err = run(capsys, "check", tmp_path / "nope.alg")
    assert code == BAD_INPUT and err
    bad = tmp_path / "bad.alg"
    d = algebra_to_json(wke())
    d["ops"]["and"][0][0] = "2"
    bad.write_text(json.dumps(d))
    code, _, err = run(capsys, "check", bad)
    assert code == BAD_INPUT and "'2' is not an element" in err


# -- conversions -----------------------------------------------------------------

def test_sys2alg_b2_full(capsys, tmp_path):
    out_file = tmp_path / "a.alg"
    code, _, _ = run(capsys, "sys2alg", DATA / "b2-full.sys", "-o", out_file)
    assert code == OK
    _, a = load(out_file)
    assert len(a) == 3 and find_isomorphism(a, wke()) is not None


def test_sys2alg_b4_one_p(capsys):
    code, out, _ = run(capsys, "sys2alg", DATA / "b4-1p.sys")
    assert code == OK
    assert len(algebra_from_json(json.loads(out)).elements) == 6


def test_alg2sys_wke(capsys):
    code, out, _ = run(capsys, "alg2sys", DATA / "wke.alg")
    assert code == OK
    assert system_from_json(json.loads(out)) == BochvarSystem.of("p", ["1", "0"])


def test_alg2sys_refuses_non_bochvar(capsys):
    code, _, err = run(capsys, "alg2sys", DATA / "sl2.alg")
    assert code == BAD_INPUT and "not a Bochvar algebra" in err


def test_emitted_files_reparse_to_equal_objects(capsys, tmp_path):
    _, sys_b4 = load(DATA / "b4-1p.sys")
    _, forb = load(DATA / "forb.alg")
    expected = {
        "sys2alg": ("b4-1p.sys", system_to_algebra(sys_b4)[0]),
        "alg2sys": ("wke.alg", algebra_to_system(wke())),
        "decompose": ("forb.alg", decompose(forb).system),
    }
    for cmd, (src, original) in expected.items():
        target = tmp_path / f"{cmd}.json"
        assert run(capsys, cmd, DATA / src, "-o", target)[0] == OK
        _, obj = load(target)
        if cmd == "decompose":
            assert obj.index == original.index
            assert plonka_sum(obj)[0] == plonka_sum(original)[0]
        else:
            assert obj == original
        # stdout and -o carry the same document
        _, out, _ = run(capsys, cmd, DATA / src)
        assert json.loads(out) == json.loads(target.read_text())


# -- round trips -----------------------------------------------------------------

def test_roundtrip_examples(capsys):
    code, out, _ = run(capsys, "roundtrip", DATA / "wke.alg")
    assert code == OK and out.startswith("isomorphism (algebra)")
    assert run(capsys, "roundtrip", DATA / "b4-1p.sys")[0] == OK


def test_roundtrip_corrupted_j2_is_input_error(capsys, tmp_path):
    d = algebra_to_json(wke())
    d["ops"]["j2"]["half"] = "half"
    bad = tmp_path / "bad.alg"
    bad.write_text(json.dumps(d))
    code, _, err = run(capsys, "roundtrip", bad)
    assert code == BAD_INPUT and "not a Bochvar algebra" in err


# -- enumerate -------------------------------------------------------------------

@pytest.mark.parametrize("bound, lines", [
    (0, ["B1: 1 systems"]),
    (1, ["B1: 1 systems", "B2: 2 systems"]),
    (2, ["B1: 1 systems", "B2: 2 systems", "B4: 7 systems"]),
])
def test_enumerate_counts(capsys, bound, lines):
    code, out, _ = run(capsys, "enumerate", "--atoms", bound)
    assert code == OK
    assert out.splitlines()[:len(lines)] == lines


def test_enumerate_totals(capsys):
    code, out, _ = run(capsys, "--json", "enumerate", "--atoms", 2)
    data = json.loads(out)
    assert data["total"] == 10 and data["failures"] == []
    assert set(data["si"]) <= {"B2", "WKe"}


def test_enumerate_bound_exceeded(capsys):
    code, _, err = run(capsys, "enumerate", "--atoms", 4)
    assert code == BAD_INPUT and "atom bound" in err


# -- taut ------------------------------------------------------------------------

def test_taut_examples(capsys):
    assert run(capsys, "taut", "J2 x | -J2 x", "--logic", "Be")[0] == OK
    code, out, _ = run(capsys, "taut", "x | -x", "--logic", "Be")
    assert code == FAIL and "x=half" in out
    assert run(capsys, "taut", "x | -x", "--logic", "PWKe")[0] == OK


def test_taut_parse_error(capsys):
    code, _, err = run(capsys, "taut", "x | ")
    assert code == BAD_INPUT and err


# -- analysis commands -----------------------------------------------------------

def test_jdef_and_forbidden_on_forb(capsys):
    code, out, _ = run(capsys, "jdef", DATA / "forb.alg")
    assert code == FAIL and "K fails first at K10" in out
    code, out, _ = run(capsys, "forbidden", DATA / "forb.alg")
    assert code == OK
    assert "search space: 128 tables" in out and "K-compatible J2 tables: 0" in out


def test_classify_and_congruences(capsys):
    code, out, _ = run(capsys, "classify", DATA / "wke.alg")
    assert code == OK and "HS(WKe) class: WKe" in out
    code, out, _ = run(capsys, "congruences", DATA / "wke.alg")
    assert code == OK and out.splitlines()[-1] == "3 congruences"


# -- properties ------------------------------------------------------------------

@pytest.mark.parametrize("argv", [
    ["check", "wke.alg", "--set", "FG"],
    ["enumerate", "--atoms", "2"],
    ["sys2alg", "b4-1p.sys"],
    ["classify", "forb.alg"],
])
def test_reports_are_deterministic(argv):
    args = [str(DATA / a) if a.endswith((".alg", ".sys")) else a for a in argv]
    cmd = [sys.executable, "-m", "bochvar_lab.cli", *args]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    assert first.stdout == second.stdout and first.stdout
    assert first.returncode == second.returncode


def test_run_config_validation():
    assert RunConfig("check").problems() == []
    assert RunConfig("nope").problems() == ["unknown command 'nope'"]
    assert RunConfig("enumerate", atoms_bound=-1).problems()
    assert RunConfig("taut", logic="K3").problems() == ["unknown logic 'K3'"]
