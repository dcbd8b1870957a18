"""JSON formats for algebras, Bochvar systems and direct systems."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .algebra import AlgebraError, FiniteAlgebra, validate_algebra
from .boolean import boolean_from_algebra, boolean_from_atoms
from .equivalence import BochvarSystem
from .plonka import SemilatticeDirectSystem, validate_system


class InputError(Exception):
    """Malformed or invalid input file."""


def algebra_to_json(a: FiniteAlgebra) -> dict[str, Any]:
    ops: dict[str, Any] = {
        "zero": a.zero,
        "one": a.one,
        "not": dict(zip(a.elements, a.not_table)),
    }
    if a.j2_table is not None:
        ops["j2"] = dict(zip(a.elements, a.j2_table))
    ops["and"] = [list(r) for r in a.and_table]
    ops["or"] = [list(r) for r in a.or_table]
    return {"name": a.name, "elements": list(a.elements), "ops": ops}


def _need(d: dict, key: str, where: str):
    if not isinstance(d, dict) or key not in d:
        raise InputError(f"{where}: missing key {key!r}")
    return d[key]


def algebra_from_json(d: dict[str, Any], where: str = "algebra") -> FiniteAlgebra:
    els = _need(d, "elements", where)
    ops = _need(d, "ops", where)
    if not isinstance(els, list) or not all(isinstance(x, str) for x in els):
        raise InputError(f"{where}: elements must be a list of strings")
    try:
        neg = _need(ops, "not", where)
        j2 = ops.get("j2")
        a = FiniteAlgebra(
            tuple(els),
            tuple(tuple(r) for r in _need(ops, "and", where)),
            tuple(tuple(r) for r in _need(ops, "or", where)),
            tuple(neg.get(x, "?") if isinstance(neg, dict) else "?" for x in els),
            _need(ops, "zero", where), _need(ops, "one", where),
            None if j2 is None else tuple(j2.get(x, "?") for x in els),
            str(d.get("name", "")),
        )
    except TypeError as e:
        raise InputError(f"{where}: {e}") from None
    problems = validate_algebra(a)
    for key in ("not", "j2"):
        m = ops.get(key)
        if m is not None:
            if not isinstance(m, dict):
                problems.append(f"{key}: must be a map from element to element")
            else:
                problems += [f"{key}: no entry for {x!r}" for x in els if x not in m]
                problems += [f"{key}: unknown element {x!r}" for x in m if x not in els]
    if problems:
        raise InputError(f"{where}: " + "; ".join(problems))
    return a


def system_to_json(s: BochvarSystem) -> dict[str, Any]:
    return {"boolean": {"atoms": list(s.boolean.atoms)}, "subsemilattice": s.members}


def system_from_json(d: dict[str, Any]) -> BochvarSystem:
    b = _need(d, "boolean", "system")
    members = _need(d, "subsemilattice", "system")
    if not isinstance(members, list):
        raise InputError("system: subsemilattice must be a list")
    try:
        if isinstance(b, dict) and "atoms" in b:
            ba = boolean_from_atoms(b["atoms"])
            names = [str(x) for x in members]
        else:
            alg = algebra_from_json(b, "system.boolean")
            ba, iso = boolean_from_algebra(alg)
            names = [iso(alg.one if x == "1" and "1" not in alg.elements else x) for x in members]
        return BochvarSystem(ba, frozenset(names))
    except AlgebraError as e:
        raise InputError(f"system: {e}") from None


def direct_system_to_json(s: SemilatticeDirectSystem) -> dict[str, Any]:
    covers = s.covers()
    return {
        "index": {"elements": list(s.index), "order": [list(p) for p in covers]},
        "fibres": {i: algebra_to_json(s.fibres[i]) for i in s.index},
        "homs": {f"{i}->{j}": dict(s.hom(i, j)) for i, j in covers},
    }


def direct_system_from_json(d: dict[str, Any]) -> SemilatticeDirectSystem:
    idx = _need(d, "index", "direct system")
    els = _need(idx, "elements", "direct system index")
    order = idx.get("order", [])
    fib = _need(d, "fibres", "direct system")
    fibres = {i: algebra_from_json(fib[i], f"fibre {i}") for i in els if i in fib}
    homs = {}
    for key, m in d.get("homs", {}).items():
        if "->" not in key:
            raise InputError(f"hom key {key!r} is not of the form 'i->j'")
        i, j = key.split("->", 1)
        homs[(i.strip(), j.strip())] = m
    try:
        s = SemilatticeDirectSystem.build(els, [tuple(p) for p in order], fibres, homs)
    except AlgebraError as e:
        raise InputError(f"direct system: {e}") from None
    rep = validate_system(s)
    if not rep.ok:
        raise InputError("direct system: " + "; ".join(rep.violations))
    return s


def kind_of(d: dict[str, Any]) -> str:
    if "elements" in d and "ops" in d:
        return "algebra"
    if "boolean" in d:
        return "system"
    if "index" in d and "fibres" in d:
        return "direct-system"
    raise InputError("cannot tell the file kind (expected an algebra, system or direct-system file)")


def read_json(path: str | Path) -> dict[str, Any]:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON ({e})") from None
    if not isinstance(d, dict):
        raise InputError(f"{path}: top level must be an object")
    return d


def load(path: str | Path):
    """(kind, object) for any supported file."""
    d = read_json(path)
    kind = kind_of(d)
    if kind == "algebra":
        return kind, algebra_from_json(d)
    if kind == "system":
        return kind, system_from_json(d)
    return kind, direct_system_from_json(d)


def load_algebra(path: str | Path) -> FiniteAlgebra:
    kind, obj = load(path)
    if kind != "algebra":
        raise InputError(f"{path}: expected an algebra file, got a {kind} file")
    return obj


def dumps(obj: dict[str, Any]) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
