"""Catalogs of the axiom systems and a membership classifier."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product

from .algebra import FiniteAlgebra, SignatureError
from .terms import QuasiIdentity, Verdict, check_quasi_identity, parse_quasi_identity, uses_j

IBSL_TEXT = [
    ("I1", "x | x = x"),
    ("I2", "x | y = y | x"),
    ("I3", "x | (y | z) = (x | y) | z"),
    ("I4", "--x = x"),
    ("I5", "x & y = -(-x | -y)"),
    ("I6", "x & (-x | y) = x & y"),
    ("I7", "0 | x = x"),
    ("I8", "1 = -0"),
]

BCA_TEXT = [
    ("BCA.1", "x | x = x"),
    ("BCA.2", "x | y = y | x"),
    ("BCA.3", "(x | y) | z = x | (y | z)"),
    ("BCA.4", "x & (y | z) = (x & y) | (x & z)"),
    ("BCA.5", "--x = x"),
    ("BCA.6", "-1 = 0"),
    ("BCA.7", "-(x | y) = -x & -y"),
    ("BCA.8", "0 | x = x"),
    ("BCA.9", "J0 J2 x = -J2 x"),
    ("BCA.10", "J2 x = -(J0 x | J1 x)"),
    ("BCA.11", "J2 x | -J2 x = 1"),
    ("BCA.12", "J2 (x | y) = (J2 x & J2 y) | (J2 x & J2 -y) | (J2 -x & J2 y)"),
    ("BCA.13", "J0 x = J0 y , J2 x = J2 y => x = y"),
]

K_TEXT = [
    ("K1", "x | x = x"),
    ("K2", "x | y = y | x"),
    ("K3", "x | (y | z) = (x | y) | z"),
    ("K4", "--x = x"),
    ("K5", "x & y = -(-x | -y)"),
    ("K6", "x & (-x | y) = x & y"),
    ("K7", "0 | x = x"),
    ("K8", "1 = -0"),
    ("K9", "J2 x | -J2 x = 1"),
    ("K10", "x | J2 y = x | J2 (x | y)"),
    ("K11", "x & J2 x = x"),
    ("K12", "J2 (x & -x) = 0"),
]

K_DERIVED_TEXT = [
    ("KD1", "x | J2 x = x"),
    ("KD2", "x = J2 x | (x & -x)"),
    ("KD3", "J2 J2 x = J2 x"),
    ("KD4", "x | -J2 y = x | -J2 (x | y)"),
]

SIBSL_EXTRA = ("SIBSL.fix", "x = -x , y = -y => x = y")
V_EXTRA = ("V.extra", "J2 -x = -J2 x")
BA_EXTRA = ("BA.extra", "J2 x = x")
SL_EXTRA = ("SL.extra", "J2 x = 1")


def _fg_text() -> list[tuple[str, str]]:
    """Finn-Grigolia basis with every schema expanded over k in {0,1,2}."""
    items = [
        ("FG.1", "x | x = x"),
        ("FG.2", "x | y = y | x"),
        ("FG.3", "(x | y) | z = x | (y | z)"),
        ("FG.4", "x & (y | z) = (x & y) | (x & z)"),
        ("FG.5", "--x = x"),
        ("FG.6", "-1 = 0"),
        ("FG.7", "-(x | y) = -x & -y"),
        ("FG.8", "0 | x = x"),
    ]
    ks = (0, 1, 2)
    items += [(f"FG.9.k{k}", f"J2 J{k} x = J{k} x") for k in ks]
    items += [(f"FG.10.k{k}", f"J0 J{k} x = -J{k} x") for k in ks]
    items += [(f"FG.11.k{k}", f"J1 J{k} x = 0") for k in ks]
    items += [(f"FG.12.k{k}", f"J{k} -x = J{2 - k} x") for k in ks]
    items += [(f"FG.13.i{i}j{j}k{k}", f"J{i} x = -(J{j} x | J{k} x)") for i, j, k in permutations(ks)]
    items += [(f"FG.14.k{k}", f"J{k} x | -J{k} x = 1") for k in ks]
    items += [(f"FG.15.i{i}k{k}", f"(J{i} x | J{k} x) & J{i} x = J{i} x") for i, k in product(ks, ks)]
    items += [(f"FG.16.k{k}", f"x | J{k} x = x") for k in (1, 2)]
    items += [
        ("FG.17", "J0 (x | y) = J0 x & J0 y"),
        ("FG.18", "J2 (x | y) = (J2 x & J2 y) | (J2 x & J2 -y) | (J2 -x & J2 y)"),
        ("FG.19", "J0 x = J0 y , J1 x = J1 y , J2 x = J2 y => x = y"),
    ]
    return items


@dataclass(frozen=True)
class Axiom:
    label: str
    formula: QuasiIdentity

    @property
    def needs_j2(self) -> bool:
        return any(uses_j(t) for eq in self.formula.identities for t in (eq.lhs, eq.rhs))


@dataclass(frozen=True)
class AxiomSet:
    name: str
    items: tuple[Axiom, ...]

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def labels(self) -> list[str]:
        return [ax.label for ax in self.items]

    @property
    def needs_j2(self) -> bool:
        return any(ax.needs_j2 for ax in self.items)


def _build(name: str, entries) -> AxiomSet:
    items = tuple(Axiom(label, parse_quasi_identity(text)) for label, text in entries)
    if len({ax.label for ax in items}) != len(items):
        raise AssertionError(f"duplicate labels in {name}")
    return AxiomSet(name, items)


CATALOG = {
    "FG": lambda: _fg_text(),
    "BCA": lambda: BCA_TEXT,
    "IBSL": lambda: IBSL_TEXT,
    "SIBSL": lambda: IBSL_TEXT + [SIBSL_EXTRA],
    "K": lambda: K_TEXT,
    "V": lambda: K_TEXT + [V_EXTRA],
    "BA_rel": lambda: K_TEXT + [BA_EXTRA],
    "SL_rel": lambda: K_TEXT + [SL_EXTRA],
    "KD": lambda: K_DERIVED_TEXT,
}
ALIASES = {"BA": "BA_rel", "SL": "SL_rel"}
SET_NAMES = ("FG", "BCA", "IBSL", "SIBSL", "K", "V", "BA_rel", "SL_rel")


@lru_cache(maxsize=None)
def _cached(key: str) -> AxiomSet:
    return _build(key, CATALOG[key]())


def axiom_set(name: str) -> AxiomSet:
    key = ALIASES.get(name, name)
    if key not in CATALOG:
        raise KeyError(f"unknown axiom set {name!r}; known: {', '.join(SET_NAMES)}")
    return _cached(key)


@dataclass(frozen=True)
class AxiomReport:
    set_name: str
    results: tuple[tuple[str, Verdict], ...]

    @property
    def ok(self) -> bool:
        return all(v.holds for _, v in self.results)

    def __bool__(self) -> bool:
        return self.ok

    def failures(self) -> list[tuple[str, Verdict]]:
        return [(l, v) for l, v in self.results if not v.holds]

    def first_failure(self) -> tuple[str, Verdict] | None:
        f = self.failures()
        return f[0] if f else None

    def lines(self) -> list[str]:
        return [f"{label}: {v.describe()}" for label, v in self.results]

    def render(self) -> str:
        return "\n".join(self.lines())


def check_axiom_set(a: FiniteAlgebra, s: AxiomSet | str, stop_early: bool = False) -> AxiomReport:
    """One verdict per item; ``stop_early`` ends at the first failure."""
    if isinstance(s, str):
        s = axiom_set(s)
    if s.needs_j2 and not a.has_j2:
        raise SignatureError(f"axiom set {s.name} needs J2 but {a!r} has none")
    results = []
    for ax in s.items:
        v = check_quasi_identity(a, ax.formula)
        results.append((ax.label, v))
        if stop_early and not v.holds:
            break
    return AxiomReport(s.name, tuple(results))


def satisfies(a: FiniteAlgebra, name: str) -> bool:
    return check_axiom_set(a, name, stop_early=True).ok


def is_ibsl(a: FiniteAlgebra) -> bool:
    return satisfies(a, "IBSL")


@dataclass(frozen=True)
class Classification:
    verdicts: dict[str, bool]
    sibsl_reduct: bool
    fixpoints: int
    fibres: int | None
    derived: AxiomReport | None

    def lines(self) -> list[str]:
        out = [f"{name}: {'yes' if ok else 'no'}" for name, ok in self.verdicts.items()]
        out.append(f"SIBSL-reduct: {'yes' if self.sibsl_reduct else 'no'}")
        out.append(f"fixpoints: {self.fixpoints}")
        out.append(f"fibres: {self.fibres if self.fibres is not None else '-'}")
        if self.derived is not None:
            out += self.derived.lines()
        return out


def classify(a: FiniteAlgebra) -> Classification:
    from .plonka import count_fixpoints, decompose

    names = SET_NAMES if a.has_j2 else ("IBSL", "SIBSL")
    verdicts = {n: satisfies(a, n) for n in names}
    reduct = a.reduct()
    sib = satisfies(reduct, "SIBSL")
    fibres = len(decompose(reduct).system.index) if verdicts.get("IBSL") else None
    fix = count_fixpoints(a) if verdicts.get("IBSL") else sum(a.neg(x) == x for x in a.elements)
    lem = None
    if verdicts.get("K"):
        lem = check_axiom_set(a, "KD")
        if not lem.ok:
            raise AssertionError(f"consequence of K fails in a K-member: {lem.failures()}")
    return Classification(verdicts, sib, fix, fibres, lem)
