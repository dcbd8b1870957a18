"""Finite algebras over the signature <and, or, not, J2, 0, 1>.

Elements are identified by name; tables are stored row-major in element
order, exactly as they appear in algebra files.  Integer-indexed numpy views
of the tables are built lazily and used by every search routine.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np


class AlgebraError(ValueError):
    """Raised when an algebra (or a map between algebras) is malformed."""


class SignatureError(AlgebraError):
    pass


class Tables(NamedTuple):
    n: int
    and_: np.ndarray
    or_: np.ndarray
    not_: np.ndarray
    j2: np.ndarray | None
    zero: int
    one: int


@dataclass(frozen=True)
class FiniteAlgebra:
    elements: tuple[str, ...]
    and_table: tuple[tuple[str, ...], ...]
    or_table: tuple[tuple[str, ...], ...]
    not_table: tuple[str, ...]
    zero: str
    one: str
    j2_table: tuple[str, ...] | None = None
    name: str = field(default="", compare=False)

    @property
    def has_j2(self) -> bool:
        return self.j2_table is not None

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        tag = self.name or "algebra"
        sig = "J2" if self.has_j2 else "no J2"
        return f"<FiniteAlgebra {tag}: {len(self)} elements, {sig}>"

    @cached_property
    def pos(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.elements)}

    def index(self, x: str) -> int:
        try:
            return self.pos[x]
        except KeyError:
            raise AlgebraError(f"{x!r} is not an element of {self!r}") from None

    @cached_property
    def tables(self) -> Tables:
        problems = validate_algebra(self)
        if problems:
            raise AlgebraError("; ".join(problems))
        p = self.pos
        n = len(self.elements)
        and_ = np.array([[p[c] for c in row] for row in self.and_table], dtype=np.intp).reshape(n, n)
        or_ = np.array([[p[c] for c in row] for row in self.or_table], dtype=np.intp).reshape(n, n)
        not_ = np.array([p[c] for c in self.not_table], dtype=np.intp)
        j2 = None
        if self.j2_table is not None:
            j2 = np.array([p[c] for c in self.j2_table], dtype=np.intp)
        for arr in (and_, or_, not_, j2):
            if arr is not None:
                arr.flags.writeable = False
        return Tables(n, and_, or_, not_, j2, p[self.zero], p[self.one])

    # name-level operations
    def meet(self, x: str, y: str) -> str:
        return self.and_table[self.index(x)][self.index(y)]

    def join(self, x: str, y: str) -> str:
        return self.or_table[self.index(x)][self.index(y)]

    def neg(self, x: str) -> str:
        return self.not_table[self.index(x)]

    def j2(self, x: str) -> str:
        if self.j2_table is None:
            raise SignatureError(f"{self!r} has no J2")
        return self.j2_table[self.index(x)]

    def reduct(self) -> FiniteAlgebra:
        """The J2-free reduct."""
        return FiniteAlgebra(self.elements, self.and_table, self.or_table,
                             self.not_table, self.zero, self.one, None, self.name)

    def with_j2(self, table: Sequence[str] | dict[str, str], name: str | None = None) -> FiniteAlgebra:
        if isinstance(table, dict):
            table = [table[x] for x in self.elements]
        return FiniteAlgebra(self.elements, self.and_table, self.or_table, self.not_table,
                             self.zero, self.one, tuple(table),
                             self.name if name is None else name)

    def renamed(self, mapping: dict[str, str], name: str | None = None) -> FiniteAlgebra:
        """Same algebra with every element ``x`` renamed to ``mapping[x]``."""
        r = mapping.__getitem__
        j2 = None if self.j2_table is None else tuple(map(r, self.j2_table))
        return FiniteAlgebra(
            tuple(map(r, self.elements)),
            tuple(tuple(map(r, row)) for row in self.and_table),
            tuple(tuple(map(r, row)) for row in self.or_table),
            tuple(map(r, self.not_table)),
            r(self.zero), r(self.one), j2,
            self.name if name is None else name,
        )

    @classmethod
    def from_indices(cls, elements: Sequence[str], and_, or_, not_, j2, zero: int, one: int,
                     name: str = "") -> FiniteAlgebra:
        """Build from integer tables (anything indexable, e.g. numpy arrays)."""
        el = tuple(elements)
        n = len(el)
        return cls(
            el,
            tuple(tuple(el[int(and_[i][j])] for j in range(n)) for i in range(n)),
            tuple(tuple(el[int(or_[i][j])] for j in range(n)) for i in range(n)),
            tuple(el[int(not_[i])] for i in range(n)),
            el[int(zero)], el[int(one)],
            None if j2 is None else tuple(el[int(j2[i])] for i in range(n)),
            name,
        )


def validate_algebra(a: FiniteAlgebra) -> list[str]:
    """Every violated structural invariant of ``a``; empty iff ``a`` is well formed."""
    out = []
    els = a.elements
    if not els:
        out.append("elements: carrier is empty")
    seen = set()
    for x in els:
        if x in seen:
            out.append(f"elements: duplicate name {x!r}")
        seen.add(x)
    n = len(els)

    def cell(where, value):
        if value not in seen:
            out.append(f"{where}: {value!r} is not an element")

    for tname, table in (("and", a.and_table), ("or", a.or_table)):
        if len(table) != n:
            out.append(f"{tname}: expected {n} rows, got {len(table)}")
        for i, row in enumerate(table):
            rname = els[i] if i < n else i
            if len(row) != n:
                out.append(f"{tname}[{rname}]: expected {n} columns, got {len(row)}")
            for j, v in enumerate(row):
                cname = els[j] if j < n else j
                cell(f"{tname}[{rname},{cname}]", v)
    unary = [("not", a.not_table)]
    if a.j2_table is not None:
        unary.append(("j2", a.j2_table))
    for tname, table in unary:
        if len(table) != n:
            out.append(f"{tname}: expected {n} entries, got {len(table)}")
        for i, v in enumerate(table):
            cell(f"{tname}[{els[i] if i < n else i}]", v)
    cell("zero", a.zero)
    cell("one", a.one)
    return out


def same_signature(a: FiniteAlgebra, b: FiniteAlgebra) -> bool:
    return a.has_j2 == b.has_j2


def _require_signature(a: FiniteAlgebra, b: FiniteAlgebra) -> None:
    if not same_signature(a, b):
        raise SignatureError(f"signature mismatch: {a!r} vs {b!r}")


# ---------------------------------------------------------------------------
# products and subalgebras

def pair_name(x: str, y: str) -> str:
    return f"({x},{y})"


def direct_product(a: FiniteAlgebra, b: FiniteAlgebra, name: str | None = None) -> FiniteAlgebra:
    _require_signature(a, b)
    ta, tb = a.tables, b.tables
    m = tb.n
    els = [pair_name(x, y) for x in a.elements for y in b.elements]
    n = len(els)
    ii = np.arange(n) // m
    jj = np.arange(n) % m

    def binop(A, B):
        return A[ii[:, None], ii[None, :]] * m + B[jj[:, None], jj[None, :]]

    j2 = None if ta.j2 is None else ta.j2[ii] * m + tb.j2[jj]
    return FiniteAlgebra.from_indices(
        els, binop(ta.and_, tb.and_), binop(ta.or_, tb.or_), ta.not_[ii] * m + tb.not_[jj], j2,
        ta.zero * m + tb.zero, ta.one * m + tb.one,
        name if name is not None else f"{a.name or 'A'}x{b.name or 'B'}",
    )


def projections(a: FiniteAlgebra, b: FiniteAlgebra, prod: FiniteAlgebra) -> tuple[Homomorphism, Homomorphism]:
    m = len(b)
    first = tuple(a.elements[i // m] for i in range(len(prod)))
    second = tuple(b.elements[i % m] for i in range(len(prod)))
    return Homomorphism(prod, a, first), Homomorphism(prod, b, second)


def _closure(t: Tables, members: set[int]) -> set[int]:
    s = set(members) | {t.zero, t.one}
    frontier = list(s)
    while frontier:
        new = set()
        for x in frontier:
            new.add(int(t.not_[x]))
            if t.j2 is not None:
                new.add(int(t.j2[x]))
            for y in s:
                new.update((int(t.and_[x, y]), int(t.and_[y, x]), int(t.or_[x, y]), int(t.or_[y, x])))
        frontier = list(new - s)
        s |= new
    return s


def subuniverse_generated(a: FiniteAlgebra, seed: Iterable[str]) -> frozenset[str]:
    t = a.tables
    idx = _closure(t, {a.index(x) for x in seed})
    return frozenset(a.elements[i] for i in idx)


def is_subuniverse(a: FiniteAlgebra, subset: Iterable[str]) -> bool:
    s = frozenset(subset)
    return bool(s) and subuniverse_generated(a, s) == s


def subalgebra(a: FiniteAlgebra, subset: Iterable[str], name: str | None = None) -> FiniteAlgebra:
    s = frozenset(subset)
    if not is_subuniverse(a, s):
        raise AlgebraError(f"{sorted(s)} is not a subuniverse of {a!r}")
    els = [x for x in a.elements if x in s]
    keep = [a.index(x) for x in els]
    return FiniteAlgebra(
        tuple(els),
        tuple(tuple(a.and_table[i][j] for j in keep) for i in keep),
        tuple(tuple(a.or_table[i][j] for j in keep) for i in keep),
        tuple(a.not_table[i] for i in keep),
        a.zero, a.one,
        None if a.j2_table is None else tuple(a.j2_table[i] for i in keep),
        a.name if name is None else name,
    )


def all_subuniverses(a: FiniteAlgebra) -> list[frozenset[str]]:
    """Every subuniverse, smallest first (by size, then element order)."""
    t = a.tables
    start = frozenset(_closure(t, set()))
    seen = {start}
    todo = [start]
    while todo:
        s = todo.pop()
        for x in range(t.n):
            if x not in s:
                u = frozenset(_closure(t, set(s) | {x}))
                if u not in seen:
                    seen.add(u)
                    todo.append(u)
    order = sorted(seen, key=lambda s: (len(s), sorted(s)))
    return [frozenset(a.elements[i] for i in s) for s in order]


# ---------------------------------------------------------------------------
# homomorphisms

@dataclass(frozen=True)
class Homomorphism:
    source: FiniteAlgebra
    target: FiniteAlgebra
    images: tuple[str, ...]   # image of each source element, in source order

    def __call__(self, x: str) -> str:
        return self.images[self.source.index(x)]

    def as_dict(self) -> dict[str, str]:
        return dict(zip(self.source.elements, self.images))

    @classmethod
    def from_dict(cls, source: FiniteAlgebra, target: FiniteAlgebra, m: dict[str, str]) -> Homomorphism:
        missing = [x for x in source.elements if x not in m]
        if missing:
            raise AlgebraError(f"map is not total, missing {missing}")
        return cls(source, target, tuple(m[x] for x in source.elements))

    def indices(self) -> np.ndarray:
        return np.array([self.target.index(y) for y in self.images], dtype=np.intp)

    def is_valid(self) -> bool:
        return is_homomorphism(self.source, self.target, self.images)

    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    def is_surjective(self) -> bool:
        return set(self.images) == set(self.target.elements)

    def then(self, other: Homomorphism) -> Homomorphism:
        """``other`` after ``self``."""
        return Homomorphism(self.source, other.target, tuple(other(y) for y in self.images))

    def inverse(self) -> Homomorphism:
        if not (self.is_injective() and self.is_surjective()):
            raise AlgebraError("map is not a bijection")
        back = {y: x for x, y in zip(self.source.elements, self.images)}
        return Homomorphism.from_dict(self.target, self.source, back)


def identity_hom(a: FiniteAlgebra) -> Homomorphism:
    return Homomorphism(a, a, a.elements)


def is_homomorphism(a: FiniteAlgebra, b: FiniteAlgebra, images: Sequence[str]) -> bool:
    if not same_signature(a, b) or len(images) != len(a):
        return False
    if any(y not in b.pos for y in images):
        return False
    ta, tb = a.tables, b.tables
    h = np.array([b.pos[y] for y in images], dtype=np.intp)
    if h[ta.zero] != tb.zero or h[ta.one] != tb.one:
        return False
    if not np.array_equal(h[ta.not_], tb.not_[h]):
        return False
    if ta.j2 is not None and not np.array_equal(h[ta.j2], tb.j2[h]):
        return False
    for A, B in ((ta.and_, tb.and_), (ta.or_, tb.or_)):
        if not np.array_equal(h[A], B[h[:, None], h[None, :]]):
            return False
    return True


def _hom_search(a: FiniteAlgebra, b: FiniteAlgebra, injective: bool = False) -> Iterator[tuple[int, ...]]:
    """Backtracking over partial maps; each assignment is propagated through
    the constants, the unary tables and all binary products with previously
    assigned elements, so contradictions surface early."""
    ta, tb = a.tables, b.tables
    n = ta.n
    assign = [-1] * n
    used: dict[int, int] = {}

    def extend(x: int, y: int, trail: list[int]) -> bool:
        stack = [(x, y)]
        while stack:
            u, v = stack.pop()
            cur = assign[u]
            if cur == v:
                continue
            if cur != -1:
                return False
            if injective:
                if v in used:
                    return False
                used[v] = u
            assign[u] = v
            trail.append(u)
            stack.append((int(ta.not_[u]), int(tb.not_[v])))
            if ta.j2 is not None:
                stack.append((int(ta.j2[u]), int(tb.j2[v])))
            for w in range(n):
                hw = assign[w]
                if hw == -1:
                    continue
                stack.append((int(ta.and_[u, w]), int(tb.and_[v, hw])))
                stack.append((int(ta.and_[w, u]), int(tb.and_[hw, v])))
                stack.append((int(ta.or_[u, w]), int(tb.or_[v, hw])))
                stack.append((int(ta.or_[w, u]), int(tb.or_[hw, v])))
        return True

    def undo(trail: list[int]) -> None:
        for u in trail:
            if injective:
                del used[assign[u]]
            assign[u] = -1

    base: list[int] = []
    if not (extend(ta.zero, tb.zero, base) and extend(ta.one, tb.one, base)):
        return

    def rec():
        try:
            x = assign.index(-1)
        except ValueError:
            yield tuple(assign)
            return
        for y in range(tb.n):
            trail: list[int] = []
            if extend(x, y, trail):
                yield from rec()
            undo(trail)

    yield from rec()


def iter_homs(a: FiniteAlgebra, b: FiniteAlgebra, injective: bool = False) -> Iterator[Homomorphism]:
    _require_signature(a, b)
    for m in _hom_search(a, b, injective):
        images = tuple(b.elements[i] for i in m)
        if not is_homomorphism(a, b, images):
            raise AssertionError("hom search produced a non-homomorphism")
        yield Homomorphism(a, b, images)


def enumerate_homs(a: FiniteAlgebra, b: FiniteAlgebra) -> list[Homomorphism]:
    """All homomorphisms ``a -> b`` in lexicographic order of their image tuples."""
    return list(iter_homs(a, b))


def _invariant(a: FiniteAlgebra) -> tuple:
    t = a.tables
    fix = int(np.sum(t.not_ == np.arange(t.n)))
    idem_or = int(np.sum(t.or_.diagonal() == np.arange(t.n)))
    jfix = -1 if t.j2 is None else int(np.sum(t.j2 == np.arange(t.n)))
    return (t.n, a.has_j2, fix, idem_or, jfix)


def find_isomorphism(a: FiniteAlgebra, b: FiniteAlgebra) -> Homomorphism | None:
    if not same_signature(a, b) or len(a) != len(b):
        return None
    if _invariant(a) != _invariant(b):
        return None
    for h in iter_homs(a, b, injective=True):
        if not h.inverse().is_valid():
            raise AssertionError("bijective homomorphism with non-homomorphic inverse")
        return h
    return None


def is_isomorphic(a: FiniteAlgebra, b: FiniteAlgebra) -> bool:
    return find_isomorphism(a, b) is not None


def automorphisms(a: FiniteAlgebra) -> list[Homomorphism]:
    return list(iter_homs(a, a, injective=True))


# ---------------------------------------------------------------------------
# congruences

def _canonical_labels(labels: Sequence[int]) -> tuple[int, ...]:
    """Relabel so that each block is named by its least member."""
    first: dict[int, int] = {}
    out = []
    for i, l in enumerate(labels):
        out.append(first.setdefault(int(l), i))
    return tuple(out)


@dataclass(frozen=True)
class Congruence:
    algebra: FiniteAlgebra = field(compare=False, repr=False)
    labels: tuple[int, ...]   # labels[i] = index of the least member of i's block

    @classmethod
    def from_blocks(cls, a: FiniteAlgebra, blocks: Iterable[Iterable[str]]) -> Congruence:
        lab = [-1] * len(a)
        for blk in blocks:
            members = sorted(a.index(x) for x in blk)
            if not members:
                raise AlgebraError("empty block")
            for i in members:
                if lab[i] != -1:
                    raise AlgebraError(f"{a.elements[i]!r} lies in two blocks")
                lab[i] = members[0]
        if -1 in lab:
            raise AlgebraError("blocks do not cover the carrier")
        return cls(a, tuple(lab))

    @classmethod
    def from_labels(cls, a: FiniteAlgebra, labels: Sequence[int]) -> Congruence:
        return cls(a, _canonical_labels(labels))

    @property
    def blocks(self) -> tuple[tuple[str, ...], ...]:
        groups: dict[int, list[str]] = {}
        for i, l in enumerate(self.labels):
            groups.setdefault(l, []).append(self.algebra.elements[i])
        return tuple(tuple(g) for _, g in sorted(groups.items()))

    def relates(self, x: str, y: str) -> bool:
        a = self.algebra
        return self.labels[a.index(x)] == self.labels[a.index(y)]

    def is_identity(self) -> bool:
        return len(set(self.labels)) == len(self.labels)

    def is_total(self) -> bool:
        return len(set(self.labels)) == 1

    def __le__(self, other: Congruence) -> bool:
        # refinement: every block of self lies inside a block of other
        return all(other.labels[i] == other.labels[l] for i, l in enumerate(self.labels))

    def __and__(self, other: Congruence) -> Congruence:
        n = len(self.labels)
        return Congruence.from_labels(self.algebra, [p * n + q for p, q in zip(self.labels, other.labels)])

    def __or__(self, other: Congruence) -> Congruence:
        uf = _UnionFind(len(self.labels))
        for lab in (self.labels, other.labels):
            for i, l in enumerate(lab):
                uf.union(i, l)
        return Congruence.from_labels(self.algebra, uf.labels())

    def __str__(self) -> str:
        return "{" + ", ".join("{" + ",".join(b) + "}" for b in self.blocks) + "}"


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if rx < ry:
            self.parent[ry] = rx
        else:
            self.parent[rx] = ry
        return True

    def labels(self) -> list[int]:
        return [self.find(i) for i in range(len(self.parent))]


def is_compatible(a: FiniteAlgebra, labels: Sequence[int]) -> bool:
    """Whether the partition given by ``labels`` respects every operation."""
    t = a.tables
    L = np.asarray(_canonical_labels(labels), dtype=np.intp)
    r = L  # representative of each element's block
    if not np.array_equal(L[t.not_], L[t.not_[r]]):
        return False
    if t.j2 is not None and not np.array_equal(L[t.j2], L[t.j2[r]]):
        return False
    for T in (t.and_, t.or_):
        if not np.array_equal(L[T], L[T[r, :]]) or not np.array_equal(L[T], L[T[:, r]]):
            return False
    return True


def identity_congruence(a: FiniteAlgebra) -> Congruence:
    return Congruence(a, tuple(range(len(a))))


def total_congruence(a: FiniteAlgebra) -> Congruence:
    return Congruence(a, (0,) * len(a))


def _translations(t: Tables) -> list[np.ndarray]:
    out = [t.not_]
    if t.j2 is not None:
        out.append(t.j2)
    for T in (t.and_, t.or_):
        for c in range(t.n):
            out.append(T[:, c])
            out.append(T[c, :])
    return out


def _generate(t: Tables, pairs: Iterable[tuple[int, int]]) -> list[int]:
    uf = _UnionFind(t.n)
    queue = [(x, y) for x, y in pairs if uf.union(x, y)]
    trans = _translations(t)
    while queue:
        u, v = queue.pop()
        for f in trans:
            p, q = int(f[u]), int(f[v])
            if uf.union(p, q):
                queue.append((p, q))
    return uf.labels()


def congruence_generated(a: FiniteAlgebra, pairs: Iterable[tuple[str, str]]) -> Congruence:
    t = a.tables
    return Congruence.from_labels(a, _generate(t, [(a.index(x), a.index(y)) for x, y in pairs]))


def principal_congruence(a: FiniteAlgebra, x: str, y: str) -> Congruence:
    """Least congruence identifying ``x`` and ``y``."""
    return congruence_generated(a, [(x, y)])


def principal_congruences(a: FiniteAlgebra) -> dict[tuple[str, str], Congruence]:
    els = a.elements
    return {(els[i], els[j]): principal_congruence(a, els[i], els[j])
            for i in range(len(els)) for j in range(i + 1, len(els))}


def all_congruences(a: FiniteAlgebra) -> list[Congruence]:
    """The whole congruence lattice, sorted by number of blocks (descending) then labels."""
    result = {identity_congruence(a)}
    for p in set(principal_congruences(a).values()):
        result |= {c | p for c in result}
    return sorted(result, key=lambda c: (-len(set(c.labels)), c.labels))


class SIResult(NamedTuple):
    irreducible: bool
    monolith: Congruence | None


def is_subdirectly_irreducible(a: FiniteAlgebra) -> SIResult:
    """SI iff the non-identity congruences have a least element.

    Every non-identity congruence contains a non-identity principal one, so
    the meet of the principal congruences decides it.
    """
    if len(a) < 2:
        raise AlgebraError("subdirect irreducibility needs at least two elements")
    mono = None
    for c in set(principal_congruences(a).values()):
        mono = c if mono is None else mono & c
    if mono is None or mono.is_identity():
        return SIResult(False, None)
    return SIResult(True, mono)


def quotient_algebra(a: FiniteAlgebra, c: Congruence, name: str | None = None) -> tuple[FiniteAlgebra, Homomorphism]:
    """``a/c`` with every block named after its least member, plus the projection."""
    if not is_compatible(a, c.labels):
        raise AlgebraError(f"{c} is not a congruence of {a!r}")
    t = a.tables
    reps = sorted(set(c.labels))
    new = {r: k for k, r in enumerate(reps)}
    L = np.array([new[l] for l in c.labels], dtype=np.intp)
    R = np.array(reps, dtype=np.intp)
    els = [a.elements[r] for r in reps]
    q = FiniteAlgebra.from_indices(
        els, L[t.and_[R[:, None], R[None, :]]], L[t.or_[R[:, None], R[None, :]]], L[t.not_[R]],
        None if t.j2 is None else L[t.j2[R]], L[t.zero], L[t.one],
        a.name + "/~" if name is None else name,
    )
    proj = Homomorphism(a, q, tuple(els[i] for i in L))
    return q, proj


def kernel(h: Homomorphism) -> Congruence:
    idx = h.indices()
    return Congruence.from_labels(h.source, idx.tolist())


def enumerate_partitions(n: int) -> Iterator[list[int]]:
    """Restricted growth strings of length n (all set partitions of range(n))."""
    if n == 0:
        yield []
        return
    def rec(prefix, mx):
        if len(prefix) == n:
            yield list(prefix)
            return
        for v in range(mx + 2):
            prefix.append(v)
            yield from rec(prefix, max(mx, v))
            prefix.pop()
    yield from rec([0], 0)


def brute_force_congruences(a: FiniteAlgebra) -> list[Congruence]:
    """Filter every partition of the carrier by compatibility.  Exponential; an
    oracle for tiny algebras only."""
    out = []
    for rgs in enumerate_partitions(len(a)):
        if is_compatible(a, rgs):
            out.append(Congruence.from_labels(a, rgs))
    return out


def all_maps(a: FiniteAlgebra, b: FiniteAlgebra) -> Iterator[tuple[str, ...]]:
    return product(b.elements, repeat=len(a))
