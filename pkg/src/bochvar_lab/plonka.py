"""Semilattice direct systems, Płonka sums, and the decomposition of an
involutive bisemilattice into its fibres."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from .algebra import AlgebraError, FiniteAlgebra, is_homomorphism, validate_algebra

Pair = tuple[str, str]


def _closure(index: tuple[str, ...], pairs: Iterable[Pair]) -> frozenset[Pair]:
    pos = {x: k for k, x in enumerate(index)}
    n = len(index)
    m = np.eye(n, dtype=bool)
    for i, j in pairs:
        if i not in pos or j not in pos:
            raise AlgebraError(f"order pair ({i}, {j}) uses an unknown index")
        m[pos[i], pos[j]] = True
    for k in range(n):
        m |= m[:, k:k + 1] & m[k:k + 1, :]
    return frozenset((index[a], index[b]) for a in range(n) for b in range(n) if m[a, b])


@dataclass(frozen=True, eq=False)
class SemilatticeDirectSystem:
    index: tuple[str, ...]
    leq_pairs: frozenset[Pair]
    fibres: Mapping[str, FiniteAlgebra]
    homs: Mapping[Pair, Mapping[str, str]]          # every pair i <= j
    supplied: frozenset[Pair] = field(default=frozenset())
    errors: tuple[str, ...] = ()                     # problems met while deriving homs

    @classmethod
    def build(cls, index: Iterable[str], order: Iterable[Pair], fibres: Mapping[str, FiniteAlgebra],
              homs: Mapping[Pair, Mapping[str, str]]) -> SemilatticeDirectSystem:
        """Close ``order`` reflexively and transitively and derive every
        missing ``p_ij`` by composing supplied ones along a chain."""
        index = tuple(index)
        if len(set(index)) != len(index):
            raise AlgebraError("duplicate index names")
        leq = _closure(index, order)
        missing = [i for i in index if i not in fibres]
        if missing:
            raise AlgebraError(f"no fibre for index {missing}")
        supplied = {tuple(k): dict(v) for k, v in homs.items()}
        errors = []
        for (i, j) in supplied:
            if (i, j) not in leq:
                errors.append(f"hom {i}->{j} given but {i} <= {j} fails")
        derived: dict[Pair, dict[str, str]] = {}

        def get(i, j, depth=0):
            if (i, j) in derived:
                return derived[(i, j)]
            if (i, j) in supplied:
                m = supplied[(i, j)]
            elif i == j:
                m = {x: x for x in fibres[i].elements}
            else:
                m = None
                for (a, k) in sorted(supplied):
                    if a == i and k != i and (k, j) in leq and depth < len(index):
                        first, rest = supplied[(a, k)], get(k, j, depth + 1)
                        if rest is not None:
                            try:
                                m = {x: rest[first[x]] for x in fibres[i].elements}
                            except KeyError as e:
                                errors.append(f"hom {i}->{k}->{j}: undefined image {e}")
                                m = None
                            break
            derived[(i, j)] = m
            return m

        for (i, j) in sorted(leq):
            if get(i, j) is None:
                errors.append(f"no hom {i}->{j} and no chain of homs composes to it")
        full = {p: m for p, m in derived.items() if m is not None}
        return cls(index, leq, dict(fibres), full, frozenset(supplied), tuple(dict.fromkeys(errors)))

    def leq(self, i: str, j: str) -> bool:
        return (i, j) in self.leq_pairs

    def upper_bounds(self, i: str, j: str) -> list[str]:
        return [k for k in self.index if self.leq(i, k) and self.leq(j, k)]

    def join(self, i: str, j: str) -> str:
        ubs = self.upper_bounds(i, j)
        least = [k for k in ubs if all(self.leq(k, u) for u in ubs)]
        if len(least) != 1:
            raise AlgebraError(f"indices {i} and {j} have no join")
        return least[0]

    @cached_property
    def bottom(self) -> str:
        bots = [i for i in self.index if all(self.leq(i, j) for j in self.index)]
        if len(bots) != 1:
            raise AlgebraError("index order has no least element")
        return bots[0]

    def hom(self, i: str, j: str) -> Mapping[str, str]:
        return self.homs[(i, j)]

    def covers(self) -> list[Pair]:
        strict = [(i, j) for (i, j) in self.leq_pairs if i != j]
        return sorted((i, j) for (i, j) in strict
                      if not any(self.leq(i, k) and self.leq(k, j) and k not in (i, j) for k in self.index))


@dataclass(frozen=True)
class SystemReport:
    violations: tuple[str, ...]
    surjective: bool
    injective_from_bottom: tuple[tuple[str, bool], ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate_system(s: SemilatticeDirectSystem) -> SystemReport:
    out = list(s.errors)
    idx = s.index
    if not idx:
        out.append("index is empty")
    for i in idx:
        for j in idx:
            if i != j and s.leq(i, j) and s.leq(j, i):
                out.append(f"order is not antisymmetric: {i} and {j}")
    for a, i in enumerate(idx):
        for j in idx[a + 1:]:
            ubs = s.upper_bounds(i, j)
            if sum(all(s.leq(k, u) for u in ubs) for k in ubs) != 1:
                out.append(f"indices {i} and {j} have no join")
    if not any(all(s.leq(i, j) for j in idx) for i in idx):
        out.append("index order has no least element")
    sigs = set()
    for i in idx:
        f = s.fibres[i]
        sigs.add(f.has_j2)
        for p in validate_algebra(f):
            out.append(f"fibre {i}: {p}")
    if len(sigs) > 1:
        out.append("fibres disagree on the J2 signature")
    if out:
        return SystemReport(tuple(out), False, ())
    for (i, j) in sorted(s.leq_pairs):
        m = s.homs.get((i, j))
        if m is None:
            continue
        A, B = s.fibres[i], s.fibres[j]
        if set(m) != set(A.elements) or not set(m.values()) <= set(B.elements):
            out.append(f"hom {i}->{j} is not a map between the fibres")
            continue
        if i == j and any(m[x] != x for x in A.elements):
            out.append(f"hom {i}->{i} is not the identity")
        if not is_homomorphism(A, B, [m[x] for x in A.elements]):
            out.append(f"hom {i}->{j} is not a homomorphism")
    if out:
        return SystemReport(tuple(out), False, ())
    for i in idx:
        for j in idx:
            if i == j or not s.leq(i, j):
                continue
            for k in idx:
                if k == j or not s.leq(j, k):
                    continue
                pij, pjk, pik = s.hom(i, j), s.hom(j, k), s.hom(i, k)
                if any(pjk[pij[x]] != pik[x] for x in s.fibres[i].elements):
                    out.append(f"compatibility fails: {j}->{k} after {i}->{j} differs from {i}->{k}")
    surj = all(set(s.hom(i, j).values()) == set(s.fibres[j].elements) for (i, j) in s.leq_pairs)
    b = s.bottom
    inj = tuple((j, len(set(s.hom(b, j).values())) == len(s.fibres[b])) for j in idx)
    return SystemReport(tuple(out), surj, inj)


@dataclass(frozen=True, eq=False)
class Decomposition:
    source: FiniteAlgebra
    system: SemilatticeDirectSystem
    fibre_of: Mapping[str, str]       # source element -> index
    local: Mapping[str, str]          # source element -> its name inside the fibre

    def fibre(self, i: str) -> list[str]:
        return [x for x in self.source.elements if self.fibre_of[x] == i]

    @property
    def bottom_fibre(self) -> list[str]:
        return self.fibre(self.system.bottom)

    def top_of(self, i: str) -> str:
        """Source name of the unit ``1_i`` of fibre ``i``."""
        return self.global_name(i, self.system.fibres[i].one)

    def bottom_of(self, i: str) -> str:
        return self.global_name(i, self.system.fibres[i].zero)

    def global_name(self, i: str, x: str) -> str:
        return self._back[(i, x)]

    @cached_property
    def _back(self) -> dict[tuple[str, str], str]:
        return {(self.fibre_of[g], l): g for g, l in self.local.items()}

    def nontrivial(self) -> list[str]:
        return [i for i in self.system.index if len(self.system.fibres[i]) > 1]


def plonka_sum(s: SemilatticeDirectSystem, prefix: bool = True, name: str = "") -> tuple[FiniteAlgebra, Decomposition]:
    """Disjoint union of the fibres; every operation is evaluated in the fibre
    at the join of its arguments' indices."""
    rep = validate_system(s)
    if not rep.ok:
        raise AlgebraError("invalid system: " + "; ".join(rep.violations))
    if any(f.has_j2 for f in s.fibres.values()):
        raise AlgebraError("fibres must be J2-free")
    gname = (lambda i, x: f"{i}:{x}") if prefix else (lambda i, x: x)
    carrier = [(i, x) for i in s.index for x in s.fibres[i].elements]
    els = [gname(i, x) for i, x in carrier]
    if len(set(els)) != len(els):
        raise AlgebraError("fibre carriers overlap; use prefixed names")
    where = {c: k for k, c in enumerate(carrier)}
    n = len(carrier)
    joins = {(i, j): s.join(i, j) for i in s.index for j in s.index}

    def binop(op):
        T = np.empty((n, n), dtype=np.intp)
        for a, (i, x) in enumerate(carrier):
            for b, (j, y) in enumerate(carrier):
                k = joins[(i, j)]
                T[a, b] = where[(k, op(s.fibres[k], s.hom(i, k)[x], s.hom(j, k)[y]))]
        return T

    neg = [where[(i, s.fibres[i].neg(x))] for i, x in carrier]
    b = s.bottom
    fb = s.fibres[b]
    out = FiniteAlgebra.from_indices(
        els, binop(FiniteAlgebra.meet), binop(FiniteAlgebra.join), neg, None,
        where[(b, fb.zero)], where[(b, fb.one)], name,
    )
    d = Decomposition(out, s, {e: i for e, (i, _) in zip(els, carrier)},
                      {e: x for e, (_, x) in zip(els, carrier)})
    return out, d


def same_fibre(a: FiniteAlgebra, x: str, y: str) -> bool:
    return a.meet(x, a.join(x, y)) == x and a.meet(y, a.join(y, x)) == y


def fibre_partition(a: FiniteAlgebra) -> list[list[str]]:
    """Fibres of an IBSL as lists of elements, ordered by first member."""
    t = a.tables
    n = t.n
    idx = np.arange(n)
    xy = t.or_[idx[:, None], idx[None, :]]
    rel = t.and_[idx[:, None], xy] == idx[:, None]
    rel &= rel.T
    blocks: list[list[str]] = []
    seen = set()
    for i in range(n):
        if i in seen:
            continue
        members = [j for j in range(n) if rel[i, j]]
        seen.update(members)
        blocks.append([a.elements[j] for j in members])
    return blocks


def decompose(a: FiniteAlgebra) -> Decomposition:
    """Recover the direct system whose Płonka sum is ``a`` (an IBSL).

    Each index is named after the unit of its fibre and fibres keep the
    element names of ``a``.
    """
    from .axioms import is_ibsl
    r = a.reduct()
    if not is_ibsl(r):
        raise AlgebraError(f"{a!r} is not an involutive bisemilattice")
    blocks = fibre_partition(r)
    fibres: dict[str, FiniteAlgebra] = {}
    fibre_of: dict[str, str] = {}
    for blk in blocks:
        x = blk[0]
        top, bot = r.join(x, r.neg(x)), r.meet(x, r.neg(x))
        members = set(blk)
        if top not in members or bot not in members:
            raise AlgebraError(f"fibre of {x} lacks its bounds")
        fib = FiniteAlgebra(
            tuple(blk),
            tuple(tuple(r.meet(u, v) for v in blk) for u in blk),
            tuple(tuple(r.join(u, v) for v in blk) for u in blk),
            tuple(r.neg(u) for u in blk),
            bot, top, None, f"A[{top}]",
        )
        bad = [c for row in fib.and_table + fib.or_table for c in row if c not in members]
        if bad:
            raise AlgebraError(f"fibre of {x} is not closed under the operations")
        fibres[top] = fib
        for u in blk:
            fibre_of[u] = top
    index = tuple(fibres)
    order = []
    for i in index:
        x = fibres[i].elements[0]
        for j in index:
            y = fibres[j].elements[0]
            if fibre_of[r.join(x, y)] == j:
                order.append((i, j))
    homs = {}
    for (i, j) in order:
        y = fibres[j].elements[0]
        homs[(i, j)] = {x: r.meet(x, r.join(x, y)) for x in fibres[i].elements}
    s = SemilatticeDirectSystem.build(index, order, fibres, homs)
    rep = validate_system(s)
    if not rep.ok:
        raise AlgebraError("decomposition is not a valid system: " + "; ".join(rep.violations))
    return Decomposition(a, s, fibre_of, {x: x for x in a.elements})


def count_fixpoints(a: FiniteAlgebra) -> int:
    return sum(1 for x in a.elements if a.neg(x) == x)


def roundtrip_problems(s: SemilatticeDirectSystem) -> list[str]:
    """Compare ``s`` with the decomposition of its Płonka sum through the
    canonical correspondence (index ``i`` goes to the fibre holding ``i:1_i``)."""
    a, d = plonka_sum(s)
    back = decompose(a)
    t = back.system
    out = []
    imap = {i: back.fibre_of[d.top_of(i)] for i in s.index}
    if len(set(imap.values())) != len(s.index) or set(imap.values()) != set(t.index):
        return ["index correspondence is not a bijection"]
    for i in s.index:
        for j in s.index:
            if s.leq(i, j) != t.leq(imap[i], imap[j]):
                out.append(f"order differs at ({i}, {j})")
    for i in s.index:
        for x in s.fibres[i].elements:
            if back.fibre_of[d.global_name(i, x)] != imap[i]:
                out.append(f"{i}:{x} landed in the wrong fibre")
    for (i, j) in s.leq_pairs:
        p, q = s.hom(i, j), t.hom(imap[i], imap[j])
        for x in s.fibres[i].elements:
            if q[d.global_name(i, x)] != d.global_name(j, p[x]):
                out.append(f"hom {i}->{j} differs at {x}")
    return out
