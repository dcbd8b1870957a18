"""Exhaustive search for J2 tables on a fixed J2-free reduct.

Tables are built one element at a time.  Partial tables are evaluated with an
extra absorbing "unknown" value, so an axiom is only reported violated once
both sides of an equation are determined; any such violation prunes the
whole subtree.  Candidate values are first restricted by K9 to the elements
``c`` with ``c | -c = 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .algebra import FiniteAlgebra, Tables
from .axioms import AxiomSet, axiom_set, check_axiom_set
from .terms import formula_variables, valuation_grid, violation_mask


def k9_codomain(a: FiniteAlgebra) -> list[str]:
    """Elements allowed as J2 values by ``J2 x | -J2 x = 1``."""
    return [c for c in a.elements if a.join(c, a.neg(c)) == a.one]


@dataclass(frozen=True)
class SearchResult:
    tables: tuple[tuple[str, ...], ...]
    codomain: tuple[str, ...]
    nodes: int              # partial tables examined
    size: int               # number of elements of the algebra

    @property
    def space(self) -> int:
        """Size of the (K9-pruned) candidate space the search exhausts."""
        return len(self.codomain) ** self.size


def _extended(t: Tables, partial: np.ndarray) -> Tables:
    n = t.n
    u = n

    def grow2(T):
        out = np.full((n + 1, n + 1), u, dtype=np.intp)
        out[:n, :n] = T
        return out

    not_ = np.append(t.not_, u)
    j2 = np.append(partial, u)
    return Tables(n + 1, grow2(t.and_), grow2(t.or_), not_, j2, t.zero, t.one)


def j2_search(a: FiniteAlgebra, axioms: AxiomSet | str, codomain: list[str] | None = None,
              order: list[str] | None = None) -> SearchResult:
    """Every J2 table on ``a`` (values in ``codomain``, default the K9
    candidates) satisfying ``axioms``."""
    s = axiom_set(axioms) if isinstance(axioms, str) else axioms
    r = a.reduct()
    t = r.tables
    n = t.n
    cod = k9_codomain(r) if codomain is None else list(codomain)
    cod_idx = [r.index(c) for c in cod]
    seq = [r.index(x) for x in (order or r.elements)]
    grids = {}
    items = []
    for ax in s.items:
        names = formula_variables(ax.formula)
        k = len(names)
        if k not in grids:
            grids[k] = valuation_grid(n, [f"v{m}" for m in range(k)])
        env, size = grids[k]
        renamed = {nm: env[f"v{m}"] for m, nm in enumerate(names)}
        items.append((ax.formula, renamed, size))

    partial = np.full(n, n, dtype=np.intp)
    found = []
    nodes = 0

    def violated() -> bool:
        tb = _extended(t, partial)
        return any(violation_mask(q, tb, env, size, unknown=n).any() for q, env, size in items)

    def rec(depth: int):
        nonlocal nodes
        if depth == n:
            found.append(tuple(r.elements[int(v)] for v in partial))
            return
        x = seq[depth]
        for c in cod_idx:
            partial[x] = c
            nodes += 1
            if not violated():
                rec(depth + 1)
        partial[x] = n

    rec(0)
    found.sort(key=lambda tab: [r.index(v) for v in tab])
    return SearchResult(tuple(found), tuple(cod), nodes, n)


def brute_force_j2(a: FiniteAlgebra, axioms: AxiomSet | str, codomain: list[str] | None = None) -> list[tuple[str, ...]]:
    """Oracle: check every table in ``codomain ** n`` in full."""
    r = a.reduct()
    cod = list(r.elements) if codomain is None else list(codomain)
    out = []
    for tab in product(cod, repeat=len(r)):
        if check_axiom_set(r.with_j2(tab), axioms, stop_early=True).ok:
            out.append(tab)
    out.sort(key=lambda tab: [r.index(v) for v in tab])
    return out
