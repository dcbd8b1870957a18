"""Finite Boolean algebras as powersets of atoms, their filters and quotients."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Union

from .algebra import (
    AlgebraError, Congruence, FiniteAlgebra, Homomorphism, quotient_algebra,
)
from .terms import holds


@dataclass(frozen=True)
class BooleanAlgebra:
    """Powerset of ``atoms``; element ``k`` of the carrier is the subset with bitmask ``k``."""
    atoms: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.atoms)) != len(self.atoms):
            raise AlgebraError(f"duplicate atom names in {list(self.atoms)}")
        for a in self.atoms:
            if a in ("0", "1") or "+" in a or not a:
                raise AlgebraError(f"invalid atom name {a!r}")

    def __len__(self) -> int:
        return 1 << len(self.atoms)

    def name_of(self, mask: int) -> str:
        if mask == 0:
            return "0"
        return "+".join(a for k, a in enumerate(self.atoms) if mask >> k & 1)

    @cached_property
    def elements(self) -> tuple[str, ...]:
        return tuple(self.name_of(m) for m in range(len(self)))

    @property
    def top(self) -> str:
        return self.elements[-1]

    def mask(self, x: str) -> int:
        """Bitmask of an element name; ``"1"`` is accepted for the top."""
        if x == "1":
            return len(self) - 1
        if x == "0":
            return 0
        m = 0
        for part in x.split("+"):
            if part not in self.atoms:
                raise AlgebraError(f"{x!r} is not an element of B{len(self)}")
            m |= 1 << self.atoms.index(part)
        if self.name_of(m) != x:
            raise AlgebraError(f"{x!r} is not a canonical element name (expected {self.name_of(m)!r})")
        return m

    def canonical(self, x: str) -> str:
        return self.name_of(self.mask(x))

    def leq(self, x: str, y: str) -> bool:
        mx, my = self.mask(x), self.mask(y)
        return mx & my == mx

    @cached_property
    def algebra(self) -> FiniteAlgebra:
        n = len(self)
        full = n - 1
        return FiniteAlgebra.from_indices(
            self.elements,
            [[i & j for j in range(n)] for i in range(n)],
            [[i | j for j in range(n)] for i in range(n)],
            [full ^ i for i in range(n)],
            None, 0, full, name=f"B{n}",
        )


BooleanLike = Union[BooleanAlgebra, FiniteAlgebra]


def _alg(b: BooleanLike) -> FiniteAlgebra:
    return b.algebra if isinstance(b, BooleanAlgebra) else b


def _canon(b: BooleanLike, x: str) -> str:
    if isinstance(b, BooleanAlgebra):
        return b.canonical(x)
    b.index(x)
    return x


def generic_atom_names(k: int) -> list[str]:
    base = ["p", "q", "r", "s", "t"]
    return base[:k] if k <= len(base) else [f"p{m}" for m in range(k)]


def boolean_from_atoms(names: Iterable[str]) -> BooleanAlgebra:
    return BooleanAlgebra(tuple(names))


def is_boolean(a: FiniteAlgebra) -> bool:
    from .axioms import is_ibsl
    r = a.reduct()
    return is_ibsl(r) and holds(r, "x | -x = 1")


def leq(a: FiniteAlgebra, x: str, y: str) -> bool:
    """Lattice order of a Boolean algebra (or the meet order of any IBSL)."""
    return a.meet(x, y) == x


def boolean_atoms(a: FiniteAlgebra) -> list[str]:
    """Covers of 0 in the meet order, in element order."""
    nonzero = [x for x in a.elements if x != a.zero]
    return [x for x in nonzero if not any(y != x and leq(a, y, x) for y in nonzero)]


def boolean_from_algebra(a: FiniteAlgebra) -> tuple[BooleanAlgebra, Homomorphism]:
    """Powerset presentation of a finite Boolean algebra ``a`` and the
    isomorphism from ``a`` onto it (an element goes to the set of atoms below it)."""
    if not is_boolean(a):
        raise AlgebraError(f"{a!r} is not a Boolean algebra")
    atoms = boolean_atoms(a)
    names = tuple(atoms)
    if any(x in ("0", "1") or "+" in x for x in names):
        names = tuple(generic_atom_names(len(atoms)))
    b = BooleanAlgebra(names)
    images = []
    for x in a.elements:
        m = sum(1 << k for k, at in enumerate(atoms) if leq(a, at, x))
        images.append(b.elements[m])
    iso = Homomorphism(a.reduct(), b.algebra, tuple(images))
    if not (iso.is_valid() and iso.is_injective() and iso.is_surjective()):
        raise AlgebraError(f"{a!r} is not isomorphic to the powerset of its atoms")
    return b, iso


@dataclass(frozen=True)
class Filter:
    parent: FiniteAlgebra
    members: frozenset[str]

    def __contains__(self, x: str) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.members)

    def sorted(self) -> list[str]:
        return [x for x in self.parent.elements if x in self.members]

    def problems(self) -> list[str]:
        a = self.parent
        out = []
        if a.one not in self.members:
            out.append("does not contain 1")
        for x in self.members:
            a.index(x)
            for y in a.elements:
                if leq(a, x, y) and y not in self.members:
                    out.append(f"not upward closed: {x} <= {y}")
            for y in self.members:
                if a.meet(x, y) not in self.members:
                    out.append(f"not meet closed: {x} & {y}")
        return out

    def is_filter(self) -> bool:
        return not self.problems()

    def generator(self) -> str:
        """Meet of all members (finite filters are principal)."""
        a = self.parent
        g = a.one
        for x in self.sorted():
            g = a.meet(g, x)
        return g


def make_filter(b: BooleanLike, members: Iterable[str]) -> Filter:
    a = _alg(b)
    f = Filter(a, frozenset(_canon(b, x) for x in members))
    p = f.problems()
    if p:
        raise AlgebraError("not a filter: " + "; ".join(sorted(set(p))))
    return f


def principal_filter(b: BooleanLike, g: str) -> Filter:
    a = _alg(b)
    g = _canon(b, g)
    return Filter(a, frozenset(x for x in a.elements if leq(a, g, x)))


def filter_congruence(b: BooleanLike, f: Filter) -> Congruence:
    a = _alg(b)
    if f.parent != a or not f.is_filter():
        raise AlgebraError("not a filter of this algebra")
    els = a.elements

    def equiv(x, y):
        return a.meet(a.join(a.neg(x), y), a.join(a.neg(y), x)) in f.members

    labels = []
    for i, x in enumerate(els):
        labels.append(next(j for j in range(i + 1) if equiv(els[j], x)))
    return Congruence.from_labels(a, labels)


def quotient_by_filter(b: BooleanLike, f: Filter) -> tuple[FiniteAlgebra, Homomorphism]:
    a = _alg(b)
    return quotient_algebra(a, filter_congruence(a, f), name=f"{a.name}/[{f.generator()})")


def kernel_filter(h: Homomorphism) -> Filter:
    """``1/ker h``: the elements sent where 1 goes."""
    a = h.source
    if not is_boolean(a):
        raise AlgebraError(f"source {a!r} is not Boolean")
    top = h(a.one)
    return Filter(a.reduct() if a.has_j2 else a, frozenset(x for x in a.elements if h(x) == top))


def enumerate_unit_meet_subsemilattices(b: BooleanLike) -> list[frozenset[str]]:
    """Subsets containing 1 and closed under meet, by size then element order."""
    a = _alg(b)
    rest = [x for x in a.elements if x != a.one]
    out = []
    for r in range(len(rest) + 1):
        for combo in combinations(rest, r):
            s = frozenset(combo) | {a.one}
            if all(a.meet(x, y) in s for x in s for y in s):
                out.append(s)
    return out


def is_unit_meet_subsemilattice(b: BooleanLike, subset: Iterable[str]) -> bool:
    a = _alg(b)
    s = {_canon(b, x) for x in subset}
    return a.one in s and all(a.meet(x, y) in s for x in s for y in s)
