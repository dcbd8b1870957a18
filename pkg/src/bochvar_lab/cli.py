"""Command line front end.

Exit codes: 0 pass, 1 semantic failure (counterexample, missing isomorphism),
2 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from .algebra import AlgebraError, all_congruences, is_subdirectly_irreducible
from .axioms import ALIASES, CATALOG, check_axiom_set, classify
from .equivalence import (
    algebra_to_system, enumerate_systems, roundtrip_algebra, roundtrip_system,
    system_to_algebra,
)
from .io import (
    InputError, algebra_to_json, direct_system_to_json, dumps, load, load_algebra, system_to_json,
)
from .plonka import decompose, plonka_sum
from .terms import LOGICS, ParseError, parse_term, tautology
from .varieties import forbidden_search, hs_wke_classify, jdef_extension

OK, FAIL, BAD_INPUT = 0, 1, 2
MAX_ATOMS = 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple[str, ...] = ()
    set_name: str = "BCA"
    atoms_bound: int = 2
    logic: str = "Be"
    output: str | None = None
    json: bool = False

    def problems(self) -> list[str]:
        out = []
        if self.command not in COMMANDS:
            out.append(f"unknown command {self.command!r}")
        if self.set_name not in CATALOG and self.set_name not in ALIASES:
            out.append(f"unknown axiom set {self.set_name!r}")
        if not 0 <= self.atoms_bound <= MAX_ATOMS:
            out.append(f"atom bound must be between 0 and {MAX_ATOMS}")
        if self.logic not in LOGICS:
            out.append(f"unknown logic {self.logic!r}")
        return out


@dataclass
class Outcome:
    code: int
    lines: list[str] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)


def _emit_file(cfg: RunConfig, payload: dict[str, Any], out: Outcome) -> None:
    text = dumps(payload)
    if cfg.output:
        Path(cfg.output).write_text(text)
        out.lines.append(f"wrote {cfg.output}")
    else:
        out.lines.extend(text.rstrip("\n").split("\n"))
    out.data["result"] = payload


def _algebra_of(path: str):
    kind, obj = load(path)
    if kind == "algebra":
        return obj
    if kind == "system":
        return system_to_algebra(obj)[0]
    return plonka_sum(obj)[0]


def cmd_check(cfg: RunConfig) -> Outcome:
    a = _algebra_of(cfg.inputs[0])
    rep = check_axiom_set(a, cfg.set_name)
    code = OK if rep.ok else FAIL
    lines = [f"{cfg.set_name} on {a.name or cfg.inputs[0]} ({len(a)} elements)"] + rep.lines()
    lines.append(f"{'PASS' if rep.ok else 'FAIL'}: {len(rep.results) - len(rep.failures())}/{len(rep.results)} hold")
    data = {"set": cfg.set_name, "ok": rep.ok,
            "items": [{"label": l, "holds": v.holds, "counterexample": v.counterexample}
                      for l, v in rep.results]}
    return Outcome(code, lines, data)


def cmd_sys2alg(cfg: RunConfig) -> Outcome:
    kind, obj = load(cfg.inputs[0])
    if kind == "system":
        a = system_to_algebra(obj)[0]
    elif kind == "direct-system":
        a = plonka_sum(obj)[0]
    else:
        raise InputError(f"{cfg.inputs[0]}: expected a system file, got an algebra file")
    out = Outcome(OK)
    _emit_file(cfg, algebra_to_json(a), out)
    return out


def cmd_alg2sys(cfg: RunConfig) -> Outcome:
    a = load_algebra(cfg.inputs[0])
    out = Outcome(OK)
    _emit_file(cfg, system_to_json(algebra_to_system(a)), out)
    return out


def cmd_roundtrip(cfg: RunConfig) -> Outcome:
    kind, obj = load(cfg.inputs[0])
    if kind == "algebra":
        iso = roundtrip_algebra(obj)
        witness = None if iso is None else iso.as_dict()
    elif kind == "system":
        m = roundtrip_system(obj)
        witness = None if m is None else m.map.as_dict()
    else:
        raise InputError("roundtrip needs an algebra or system file")
    if witness is None:
        return Outcome(FAIL, ["NO ISOMORPHISM"], {"ok": False})
    lines = [f"isomorphism ({kind})"] + [f"  {x} -> {y}" for x, y in witness.items()]
    return Outcome(OK, lines, {"ok": True, "witness": witness})


def cmd_enumerate(cfg: RunConfig) -> Outcome:
    systems = enumerate_systems(cfg.atoms_bound)
    by_size: dict[int, int] = {}
    failures = []
    si_classes: dict[str, int] = {}
    for s in systems:
        by_size[len(s.boolean)] = by_size.get(len(s.boolean), 0) + 1
        a, _ = system_to_algebra(s)
        if not check_axiom_set(a, "BCA", stop_early=True).ok:
            failures.append(f"{s}: BCA fails")
        if roundtrip_algebra(a) is None:
            failures.append(f"{s}: algebra round trip fails")
        if roundtrip_system(s) is None:
            failures.append(f"{s}: system round trip fails")
        if len(a) > 1 and is_subdirectly_irreducible(a).irreducible:
            c = hs_wke_classify(a)
            si_classes[c] = si_classes.get(c, 0) + 1
    lines = [f"B{k}: {v} systems" for k, v in sorted(by_size.items())]
    lines.append(f"total: {len(systems)} systems, {len(systems) - len(failures)} pass")
    lines.append("subdirectly irreducible: " +
                 (", ".join(f"{k} x{v}" for k, v in sorted(si_classes.items())) or "none"))
    lines += failures
    data = {"by_size": {str(k): v for k, v in sorted(by_size.items())}, "total": len(systems),
            "failures": failures, "si": si_classes}
    return Outcome(FAIL if failures else OK, lines, data)


def cmd_taut(cfg: RunConfig) -> Outcome:
    t = parse_term(cfg.inputs[0])
    v = tautology(t, cfg.logic)
    line = f"{cfg.logic}: " + ("TAUTOLOGY" if v.holds else "NOT A TAUTOLOGY, " + v.describe().replace("FAILS ", "fails "))
    return Outcome(OK if v.holds else FAIL, [line],
                   {"logic": cfg.logic, "tautology": v.holds, "counterexample": v.counterexample})


def cmd_classify(cfg: RunConfig) -> Outcome:
    a = _algebra_of(cfg.inputs[0])
    c = classify(a)
    lines = c.lines()
    if len(a) > 1:
        si = is_subdirectly_irreducible(a)
        lines.append(f"subdirectly irreducible: {'yes' if si.irreducible else 'no'}")
        if si.irreducible:
            lines.append(f"monolith: {si.monolith}")
    lines.append(f"HS(WKe) class: {hs_wke_classify(a)}")
    return Outcome(OK, lines, {"verdicts": c.verdicts, "fixpoints": c.fixpoints})


def cmd_congruences(cfg: RunConfig) -> Outcome:
    a = _algebra_of(cfg.inputs[0])
    cons = all_congruences(a)
    lines = [str(c) for c in cons] + [f"{len(cons)} congruences"]
    return Outcome(OK, lines, {"congruences": [[list(b) for b in c.blocks] for c in cons]})


def cmd_jdef(cfg: RunConfig) -> Outcome:
    a = _algebra_of(cfg.inputs[0])
    try:
        r = jdef_extension(a)
    except AlgebraError as e:
        raise InputError(str(e)) from None
    lines = [f"J2 {x} = {y}" for x, y in zip(r.algebra.elements, r.algebra.j2_table)]
    lines.append("K holds" if r.ok else f"K fails first at {r.failing}: {r.report.first_failure()[1].describe()}")
    return Outcome(OK if r.ok else FAIL, lines, {"ok": r.ok, "j2": list(r.algebra.j2_table)})


def cmd_forbidden(cfg: RunConfig) -> Outcome:
    a = _algebra_of(cfg.inputs[0])
    r = forbidden_search(a)
    lines = [f"candidate values: {', '.join(r.codomain)}",
             f"search space: {r.space} tables, {r.nodes} partial tables visited",
             f"K-compatible J2 tables: {len(r.tables)}"]
    lines += ["  " + " ".join(f"{x}->{y}" for x, y in zip(a.elements, tab)) for tab in r.tables]
    return Outcome(OK, lines, {"tables": [list(t) for t in r.tables], "space": r.space})


def cmd_decompose(cfg: RunConfig) -> Outcome:
    a = _algebra_of(cfg.inputs[0])
    d = decompose(a)
    out = Outcome(OK)
    _emit_file(cfg, direct_system_to_json(d.system), out)
    return out


COMMANDS: dict[str, Callable[[RunConfig], Outcome]] = {
    "check": cmd_check,
    "sys2alg": cmd_sys2alg,
    "alg2sys": cmd_alg2sys,
    "roundtrip": cmd_roundtrip,
    "enumerate": cmd_enumerate,
    "taut": cmd_taut,
    "classify": cmd_classify,
    "congruences": cmd_congruences,
    "jdef": cmd_jdef,
    "forbidden": cmd_forbidden,
    "decompose": cmd_decompose,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bochvar-lab", description="Finite checks for Bochvar algebras.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="check an axiom set on an algebra")
    c.add_argument("file")
    c.add_argument("--set", dest="set_name", default="BCA",
                   help=f"one of {', '.join(CATALOG)} (aliases BA, SL)")
    for name, helptext in (("sys2alg", "build the algebra of a system"),
                           ("alg2sys", "recover the system of a Bochvar algebra"),
                           ("decompose", "write the direct system of an involutive bisemilattice")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("file")
        s.add_argument("-o", "--output")
    sub.add_parser("roundtrip", help="round trip an algebra or system").add_argument("file")
    e = sub.add_parser("enumerate", help="sweep all systems up to a number of atoms")
    e.add_argument("--atoms", dest="atoms_bound", type=int, default=2)
    t = sub.add_parser("taut", help="tautology check")
    t.add_argument("term")
    t.add_argument("--logic", default="Be", choices=sorted(LOGICS))
    for name, helptext in (("classify", "membership in every axiom set"),
                           ("congruences", "list the congruence lattice"),
                           ("jdef", "apply the forced J2 and check K"),
                           ("forbidden", "all J2 tables compatible with K")):
        sub.add_parser(name, help=helptext).add_argument("file")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    inputs = tuple(x for x in (getattr(ns, "file", None), getattr(ns, "term", None)) if x is not None)
    return RunConfig(
        command=ns.command, inputs=inputs,
        set_name=getattr(ns, "set_name", "BCA"),
        atoms_bound=getattr(ns, "atoms_bound", 2),
        logic=getattr(ns, "logic", "Be"),
        output=getattr(ns, "output", None),
        json=ns.json,
    )


def run(cfg: RunConfig) -> Outcome:
    problems = cfg.problems()
    if problems:
        return Outcome(BAD_INPUT, [f"error: {p}" for p in problems], {"error": problems})
    try:
        return COMMANDS[cfg.command](cfg)
    except (InputError, ParseError, AlgebraError) as e:
        return Outcome(BAD_INPUT, [f"error: {e}"], {"error": str(e)})


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = config_from_args(ns)
    out = run(cfg)
    if cfg.json:
        payload = {"command": cfg.command, "exit": out.code, **out.data}
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        stream = sys.stderr if out.code == BAD_INPUT else sys.stdout
        for line in out.lines:
            stream.write(line + "\n")
    return out.code


if __name__ == "__main__":
    sys.exit(main())
