import json
from pathlib import Path

import pytest
from hypothesis import given

from bochvar_lab.equivalence import BochvarSystem
from bochvar_lab.fixtures import forbidden_system, wke
from bochvar_lab.io import (
    InputError, algebra_from_json, algebra_to_json, direct_system_from_json,
    direct_system_to_json, kind_of, load, load_algebra, read_json, system_from_json,
    system_to_json,
)
from bochvar_lab.plonka import plonka_sum

from strategies import bochvar_algebras, bochvar_systems, small_fixtures

DATA = Path(__file__).resolve().parent.parent / "data"


def test_algebra_format():
    d = algebra_to_json(wke())
    assert d["elements"] == ["0", "half", "1"]
    assert d["ops"]["j2"] == {"0": "0", "half": "0", "1": "1"}
    assert d["ops"]["or"][1] == ["half", "half", "half"]


@given(small_fixtures())
def test_algebra_json_round_trip(a):
    assert algebra_from_json(json.loads(json.dumps(algebra_to_json(a)))) == a


@given(bochvar_algebras(max_atoms=2))
def test_system_algebra_json_round_trip(a):
    assert algebra_from_json(algebra_to_json(a)) == a


@given(bochvar_systems(max_atoms=3))
def test_system_json_round_trip(s):
    assert system_from_json(system_to_json(s)) == s


def test_system_with_inline_boolean_and_one_alias():
    b2_inline = {"elements": ["0", "1"],
                 "ops": {"zero": "0", "one": "1", "not": {"0": "1", "1": "0"},
                         "and": [["0", "0"], ["0", "1"]], "or": [["0", "1"], ["1", "1"]]}}
    s = system_from_json({"boolean": b2_inline, "subsemilattice": ["1", "0"]})
    assert s == BochvarSystem.of("p", ["p", "0"])


def test_direct_system_round_trip():
    s = forbidden_system()
    t = direct_system_from_json(json.loads(json.dumps(direct_system_to_json(s))))
    assert t.index == s.index
    assert plonka_sum(t)[0] == plonka_sum(s)[0]


def test_kind_detection():
    assert kind_of(algebra_to_json(wke())) == "algebra"
    assert kind_of({"boolean": {"atoms": []}, "subsemilattice": ["1"]}) == "system"
    assert kind_of(direct_system_to_json(forbidden_system())) == "direct-system"
    with pytest.raises(InputError):
        kind_of({"foo": 1})


def test_bundled_data_files():
    assert load_algebra(DATA / "wke.alg") == wke()
    kind, s = load(DATA / "b2-full.sys")
    assert kind == "system" and s == BochvarSystem.of("p", ["p", "0"])
    kind, s = load(DATA / "b4-1p.sys")
    assert s == BochvarSystem.of("pq", ["1", "p"])
    kind, ds = load(DATA / "forb.dsys")
    assert kind == "direct-system"


@pytest.mark.parametrize("mutate, message", [
    (lambda d: d.pop("elements"), "missing key 'elements'"),
    (lambda d: d["ops"]["not"].pop("half"), "not: no entry for 'half'"),
    (lambda d: d["ops"]["j2"].update({"2": "0"}), "j2: unknown element '2'"),
    (lambda d: d["ops"]["or"][0].__setitem__(0, "x"), "'x' is not an element"),
    (lambda d: d["ops"].__setitem__("and", [["0"]]), "rows"),
])
def test_algebra_diagnostics(mutate, message):
    d = algebra_to_json(wke())
    mutate(d)
    with pytest.raises(InputError) as e:
        algebra_from_json(d)
    assert message in str(e.value)


def test_system_diagnostics():
    with pytest.raises(InputError):
        system_from_json({"boolean": {"atoms": ["p", "q"]}, "subsemilattice": ["p", "q"]})
    with pytest.raises(InputError):
        system_from_json({"boolean": {"atoms": ["p"]}, "subsemilattice": "p"})


def test_file_errors(tmp_path):
    with pytest.raises(InputError):
        read_json(tmp_path / "missing.alg")
    bad = tmp_path / "bad.alg"
    bad.write_text("{not json")
    with pytest.raises(InputError):
        read_json(bad)
    arr = tmp_path / "arr.alg"
    arr.write_text("[]")
    with pytest.raises(InputError):
        read_json(arr)
