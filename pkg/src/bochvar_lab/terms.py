"""Terms, identities and quasi-identities, with exhaustive checking.

Concrete syntax::

    term   := disj
    disj   := conj ('|' conj)*
    conj   := unary ('&' unary)*
    unary  := '-' unary | ('J0'|'J1'|'J2') unary | atom
    atom   := var | '0' | '1' | '(' term ')'

    identity       := term '=' term
    quasi-identity := identity (',' identity)* '=>' identity

J0 and J1 are abbreviations: ``J0 t`` is ``J2 -t`` and ``J1 t`` is
``-(J2 t | J2 -t)``; they are kept in the tree and expanded on evaluation.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping, NamedTuple, Union

import numpy as np

from .algebra import AlgebraError, FiniteAlgebra, SignatureError, Tables


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: int  # 0 or 1


@dataclass(frozen=True)
class Not:
    arg: "Term"


@dataclass(frozen=True)
class J:
    k: int
    arg: "Term"


@dataclass(frozen=True)
class And:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Or:
    left: "Term"
    right: "Term"


Term = Union[Var, Const, Not, J, And, Or]


@dataclass(frozen=True)
class Identity:
    lhs: Term
    rhs: Term

    def __str__(self) -> str:
        return f"{show(self.lhs)} = {show(self.rhs)}"


@dataclass(frozen=True)
class QuasiIdentity:
    premises: tuple[Identity, ...]
    conclusion: Identity

    def __str__(self) -> str:
        if not self.premises:
            return str(self.conclusion)
        return " , ".join(map(str, self.premises)) + " => " + str(self.conclusion)

    @property
    def identities(self) -> tuple[Identity, ...]:
        return self.premises + (self.conclusion,)


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(?P<j>J[012])|(?P<var>[a-z][a-z0-9]*)|(?P<const>[01])(?![0-9])|(?P<op>=>|[-&|()=,]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value or tok[0] == "end":
            raise ParseError(f"expected {value!r}, found {tok[1] or 'end of input'!r}", self.text, tok[2])
        return tok

    def term(self) -> Term:
        left = self.conj()
        while self.peek()[1] == "|":
            self.take()
            left = Or(left, self.conj())
        return left

    def conj(self) -> Term:
        left = self.unary()
        while self.peek()[1] == "&":
            self.take()
            left = And(left, self.unary())
        return left

    def unary(self) -> Term:
        kind, val, pos = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return Not(self.unary())
        if kind == "j":
            self.take()
            return J(int(val[1]), self.unary())
        return self.atom()

    def atom(self) -> Term:
        kind, val, pos = self.take()
        if kind == "var":
            return Var(val)
        if kind == "const":
            return Const(int(val))
        if val == "(" and kind == "op":
            t = self.term()
            self.expect(")")
            return t
        raise ParseError(f"expected a term, found {val or 'end of input'!r}", self.text, pos)

    def identity(self) -> Identity:
        lhs = self.term()
        self.expect("=")
        return Identity(lhs, self.term())

    def done(self):
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", self.text, pos)


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    p.done()
    return t


def parse_identity(text: str) -> Identity:
    p = _Parser(text)
    eq = p.identity()
    p.done()
    return eq


def parse_quasi_identity(text: str) -> QuasiIdentity:
    """Parse ``s1 = t1 , ... => s = t``; a bare identity gives no premises."""
    p = _Parser(text)
    first = p.identity()
    if p.peek()[1] not in (",", "=>"):
        p.done()
        return QuasiIdentity((), first)
    premises = [first]
    while p.peek()[1] == ",":
        p.take()
        premises.append(p.identity())
    p.expect("=>")
    concl = p.identity()
    p.done()
    return QuasiIdentity(tuple(premises), concl)


# ---------------------------------------------------------------------------
# printing

def show(t: Term, level: int = 0) -> str:
    """Minimal-parenthesis rendering; ``parse_term(show(t)) == t``."""
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return str(t.value)
    if isinstance(t, Not):
        return "-" + show(t.arg, 3)
    if isinstance(t, J):
        return f"J{t.k} " + show(t.arg, 3)
    if isinstance(t, (And, Or)):
        prec, sym = (2, "&") if isinstance(t, And) else (1, "|")
        s = f"{show(t.left, prec)} {sym} {show(t.right, prec + 1)}"
        return f"({s})" if level > prec else s
    raise TypeError(t)


def variables(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Const):
        return set()
    if isinstance(t, (Not, J)):
        return variables(t.arg)
    return variables(t.left) | variables(t.right)


def formula_variables(q: QuasiIdentity | Identity) -> list[str]:
    ids = q.identities if isinstance(q, QuasiIdentity) else (q,)
    vs: set[str] = set()
    for eq in ids:
        vs |= variables(eq.lhs) | variables(eq.rhs)
    return sorted(vs)


def expand(t: Term) -> Term:
    """Rewrite J0/J1 in terms of J2 and negation."""
    if isinstance(t, (Var, Const)):
        return t
    if isinstance(t, Not):
        return Not(expand(t.arg))
    if isinstance(t, J):
        a = expand(t.arg)
        if t.k == 2:
            return J(2, a)
        if t.k == 0:
            return J(2, Not(a))
        return Not(Or(J(2, a), J(2, Not(a))))
    return type(t)(expand(t.left), expand(t.right))


def uses_j(t: Term) -> bool:
    if isinstance(t, (Var, Const)):
        return False
    if isinstance(t, J):
        return True
    if isinstance(t, Not):
        return uses_j(t.arg)
    return uses_j(t.left) or uses_j(t.right)


# ---------------------------------------------------------------------------
# evaluation

def _eval(t: Term, tb: Tables, env: Mapping[str, np.ndarray], size: int) -> np.ndarray:
    if isinstance(t, Var):
        return env[t.name]
    if isinstance(t, Const):
        return np.full(size, tb.one if t.value else tb.zero, dtype=np.intp)
    if isinstance(t, Not):
        return tb.not_[_eval(t.arg, tb, env, size)]
    if isinstance(t, J):
        if t.k != 2:
            return _eval(expand(t), tb, env, size)
        return tb.j2[_eval(t.arg, tb, env, size)]
    T = tb.and_ if isinstance(t, And) else tb.or_
    return T[_eval(t.left, tb, env, size), _eval(t.right, tb, env, size)]


def _check_signature(a: FiniteAlgebra, terms) -> None:
    if not a.has_j2 and any(uses_j(t) for t in terms):
        raise SignatureError(f"J-operators used on J2-free {a!r}")


def evaluate(t: Term, a: FiniteAlgebra, valuation: Mapping[str, str]) -> str:
    _check_signature(a, [t])
    missing = variables(t) - set(valuation)
    if missing:
        raise AlgebraError(f"valuation misses variables {sorted(missing)}")
    env = {v: np.array([a.index(x)], dtype=np.intp) for v, x in valuation.items() if v in variables(t)}
    return a.elements[int(_eval(t, a.tables, env, 1)[0])]


def valuation_grid(n: int, names: list[str]) -> tuple[dict[str, np.ndarray], int]:
    """All ``n**k`` valuations in lexicographic order (first variable slowest)."""
    k = len(names)
    size = n ** k
    if k == 0:
        return {}, 1
    idx = np.indices((n,) * k).reshape(k, size)
    return {v: idx[i].astype(np.intp) for i, v in enumerate(names)}, size


def evaluate_all(t: Term, a: FiniteAlgebra, names: list[str] | None = None) -> np.ndarray:
    names = sorted(variables(t)) if names is None else names
    _check_signature(a, [t])
    env, size = valuation_grid(len(a), names)
    return _eval(t, a.tables, env, size)


class Verdict(NamedTuple):
    holds: bool
    counterexample: dict[str, str] | None = None

    def __bool__(self) -> bool:
        return self.holds

    def describe(self) -> str:
        if self.holds:
            return "HOLDS"
        cx = self.counterexample or {}
        return "FAILS at " + ",".join(f"{v}={x}" for v, x in cx.items())


def violation_mask(q: QuasiIdentity, tb: Tables, env: Mapping[str, np.ndarray], size: int,
                   unknown: int | None = None) -> np.ndarray:
    """Boolean mask over valuations where ``q`` is definitely violated.

    With ``unknown`` set, that index is an absorbing "undetermined" value:
    an equation only counts as true/false when both sides are determined.
    """
    def sides(eq):
        return _eval(eq.lhs, tb, env, size), _eval(eq.rhs, tb, env, size)

    l, r = sides(q.conclusion)
    bad = l != r
    if unknown is not None:
        bad &= (l != unknown) & (r != unknown)
    for eq in q.premises:
        if not bad.any():
            break
        l, r = sides(eq)
        ok = l == r
        if unknown is not None:
            ok &= l != unknown
        bad &= ok
    return bad


def check_quasi_identity(a: FiniteAlgebra, q: QuasiIdentity | Identity) -> Verdict:
    """Exhaustive check; the counterexample is the first violating valuation."""
    if isinstance(q, Identity):
        q = QuasiIdentity((), q)
    _check_signature(a, [t for eq in q.identities for t in (eq.lhs, eq.rhs)])
    names = formula_variables(q)
    env, size = valuation_grid(len(a), names)
    bad = violation_mask(q, a.tables, env, size)
    if not bad.any():
        return Verdict(True)
    k = int(np.argmax(bad))
    return Verdict(False, {v: a.elements[int(env[v][k])] for v in names})


def check_identity(a: FiniteAlgebra, eq: Identity) -> Verdict:
    return check_quasi_identity(a, QuasiIdentity((), eq))


def holds(a: FiniteAlgebra, text: str) -> bool:
    return check_quasi_identity(a, parse_quasi_identity(text)).holds


# ---------------------------------------------------------------------------
# the external logics over WK^e

LOGICS = {"Be": frozenset({"1"}), "PWKe": frozenset({"1", "half"})}


def tautology(t: Term | str, designated: frozenset[str] | set[str] | str = "Be") -> Verdict:
    """Is ``t`` designated under every valuation into WK^e?

    ``designated`` is ``{"1"}`` (Bochvar's external logic) or ``{"1", "half"}``
    (its paraconsistent companion); the logic names are accepted as well.
    """
    from .fixtures import wke

    if isinstance(t, str):
        t = parse_term(t)
    if isinstance(designated, str):
        designated = LOGICS[designated]
    a = wke()
    names = sorted(variables(t))
    env, size = valuation_grid(len(a), names)
    vals = _eval(t, a.tables, env, size)
    good = np.isin(vals, [a.index(x) for x in designated])
    if good.all():
        return Verdict(True)
    k = int(np.argmin(good))
    return Verdict(False, {v: a.elements[int(env[v][k])] for v in names})


@lru_cache(maxsize=None)
def cached_formula(text: str) -> QuasiIdentity:
    return parse_quasi_identity(text)


def iter_subterms(t: Term) -> Iterator[Term]:
    yield t
    if isinstance(t, (Not, J)):
        yield from iter_subterms(t.arg)
    elif isinstance(t, (And, Or)):
        yield from iter_subterms(t.left)
        yield from iter_subterms(t.right)
