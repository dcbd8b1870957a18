"""Bochvar systems and the two constructions between them and Bochvar algebras.

A Bochvar system is a finite Boolean algebra ``B`` with a meet-subsemilattice
``I`` containing 1.  The algebra built from it has one fibre ``B/[i)`` per
``i`` in ``I``, indexed by ``I`` with the reversed order, and J2 sends
``a/[i)`` back to ``a & i`` in the bottom fibre ``B/[1) = B``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable

from .algebra import (
    AlgebraError, FiniteAlgebra, Homomorphism, enumerate_homs, find_isomorphism, iter_homs,
)
from .axioms import check_axiom_set
from .boolean import (
    BooleanAlgebra, boolean_from_algebra, boolean_from_atoms, enumerate_unit_meet_subsemilattices,
    generic_atom_names, is_unit_meet_subsemilattice,
)
from .plonka import Decomposition, SemilatticeDirectSystem, decompose, plonka_sum

ATOM_NAMES = tuple(generic_atom_names(5))


@dataclass(frozen=True)
class BochvarSystem:
    boolean: BooleanAlgebra
    subsemilattice: frozenset[str]

    def __post_init__(self):
        b = self.boolean
        s = frozenset(b.canonical(x) for x in self.subsemilattice)
        object.__setattr__(self, "subsemilattice", s)
        if not is_unit_meet_subsemilattice(b, s):
            raise AlgebraError(f"{sorted(s)} is not a meet-subsemilattice of B{len(b)} containing 1")

    @classmethod
    def of(cls, atoms: Iterable[str], members: Iterable[str]) -> BochvarSystem:
        return cls(boolean_from_atoms(atoms), frozenset(members))

    @property
    def members(self) -> list[str]:
        """``I`` in index order: largest first, so the unit (bottom index) leads."""
        b = self.boolean
        return sorted(self.subsemilattice, key=lambda x: (-bin(b.mask(x)).count("1"), b.mask(x)))

    def __str__(self) -> str:
        return f"<B{len(self.boolean)}, {{{', '.join(self.members)}}}>"


@dataclass(frozen=True)
class SystemMorphism:
    source: BochvarSystem
    target: BochvarSystem
    map: Homomorphism      # between the Boolean algebra views

    def __call__(self, x: str) -> str:
        return self.map(self.source.boolean.canonical(x))

    def problems(self) -> list[str]:
        out = []
        if self.map.source != self.source.boolean.algebra or self.map.target != self.target.boolean.algebra:
            out.append("map does not connect the underlying Boolean algebras")
            return out
        if not self.map.is_valid():
            out.append("map is not a Boolean homomorphism")
        for i in self.source.members:
            if self.map(i) not in self.target.subsemilattice:
                out.append(f"g({i}) = {self.map(i)} is not in the target subsemilattice")
        return out

    def is_valid(self) -> bool:
        return not self.problems()

    def then(self, other: SystemMorphism) -> SystemMorphism:
        return SystemMorphism(self.source, other.target, self.map.then(other.map))

    def __eq__(self, other) -> bool:
        return (isinstance(other, SystemMorphism) and self.source == other.source
                and self.target == other.target and self.map.images == other.map.images)

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.map.images))


def identity_morphism(s: BochvarSystem) -> SystemMorphism:
    a = s.boolean.algebra
    return SystemMorphism(s, s, Homomorphism(a, a, a.elements))


# ---------------------------------------------------------------------------
# system -> algebra

def element_name(b: BooleanAlgebra, x: str, i: str) -> str:
    """Name of the class ``x/[i)`` in the constructed algebra.

    The bottom fibre keeps the names of ``B``; other classes are written
    ``rep/i`` with ``rep = x & i`` the least member of the class."""
    rep = b.name_of(b.mask(x) & b.mask(i))
    top = b.elements[-1]
    return rep if b.canonical(i) == top else f"{rep}/{b.canonical(i)}"


def fibre_quotient(b: BooleanAlgebra, i: str) -> FiniteAlgebra:
    """``B/[i)`` with classes named as in :func:`element_name`."""
    mi = b.mask(i)
    reps = [m for m in range(len(b)) if m & mi == m]
    names = [element_name(b, b.name_of(m), i) for m in reps]
    pos = {m: k for k, m in enumerate(reps)}
    return FiniteAlgebra.from_indices(
        names,
        [[pos[x & y] for y in reps] for x in reps],
        [[pos[x | y] for y in reps] for x in reps],
        [pos[~x & mi] for x in reps],
        None, pos[0], pos[mi], name=f"B/[{b.canonical(i)})",
    )


def system_direct_system(s: BochvarSystem) -> SemilatticeDirectSystem:
    b = s.boolean
    I = s.members
    fibres = {i: fibre_quotient(b, i) for i in I}
    order, homs = [], {}
    for i in I:
        for j in I:
            if b.leq(j, i):        # reversed: j below i in B means i <= j as indices
                order.append((i, j))
                mi = b.mask(i)
                homs[(i, j)] = {element_name(b, b.name_of(m), i): element_name(b, b.name_of(m), j)
                                for m in range(len(b)) if m & mi == m}
    return SemilatticeDirectSystem.build(I, order, fibres, homs)


@lru_cache(maxsize=512)
def system_to_algebra(s: BochvarSystem) -> tuple[FiniteAlgebra, Decomposition]:
    b = s.boolean
    ds = system_direct_system(s)
    reduct, d = plonka_sum(ds, prefix=False, name=f"A{s}")
    bottom = ds.bottom
    j2 = []
    for x in reduct.elements:
        i = d.fibre_of[x]
        p = ds.hom(bottom, i)
        # preimages of x under p_{1,i} lying in [0, i]
        pre = [y for y in b.elements if b.leq(y, i) and p[y] == d.local[x]]
        if len(pre) != 1:
            raise AssertionError(f"{x}: expected one preimage in [0, {i}], found {pre}")
        j2.append(pre[0])
    a = reduct.with_j2(j2)
    d = Decomposition(a, ds, d.fibre_of, d.local)
    return a, d


# ---------------------------------------------------------------------------
# algebra -> system

@dataclass(frozen=True, eq=False)
class SystemData:
    """Everything recovered from a Bochvar algebra on the way to its system."""
    algebra: FiniteAlgebra
    system: BochvarSystem
    decomposition: Decomposition
    to_boolean: dict[str, str]      # bottom-fibre element -> element of system.boolean
    generator: dict[str, str]       # fibre index -> J2(1_i) as an element of system.boolean

    def unit_image(self, x: str) -> str:
        """Image of ``x`` in the algebra rebuilt from the system: ``J2 x / [J2 1_i)``."""
        i = self.decomposition.fibre_of[x]
        return element_name(self.system.boolean, self.to_boolean[self.algebra.j2(x)], self.generator[i])


class NotBochvarError(AlgebraError):
    pass


def require_bochvar(a: FiniteAlgebra) -> None:
    if not a.has_j2:
        raise NotBochvarError(f"{a!r} has no J2")
    rep = check_axiom_set(a, "BCA", stop_early=True)
    if not rep.ok:
        label, v = rep.first_failure()
        raise NotBochvarError(f"{a.name or 'algebra'} is not a Bochvar algebra: {label} {v.describe()}")


@lru_cache(maxsize=512)
def system_data(a: FiniteAlgebra, check: bool = True) -> SystemData:
    if check:
        require_bochvar(a)
    d = decompose(a)
    ds = d.system
    bottom = ds.fibres[ds.bottom]
    b, iso = boolean_from_algebra(bottom)
    to_b = iso.as_dict()
    gen = {}
    for i in ds.index:
        g = a.j2(d.top_of(i))
        if g not in to_b:
            raise AssertionError(f"J2 of the unit of fibre {i} is outside the bottom fibre")
        gen[i] = to_b[g]
    if len(set(gen.values())) != len(gen):
        raise AssertionError(f"distinct fibres share a generator in {a!r}: {gen}")
    for i in ds.index:
        for j in ds.index:
            if b.leq(gen[i], gen[j]) != ds.leq(j, i):
                raise AssertionError(
                    f"order on K disagrees with the index order at fibres {i}, {j} of {a!r}")
    s = BochvarSystem(b, frozenset(gen.values()))
    return SystemData(a, s, d, to_b, gen)


def algebra_to_system(a: FiniteAlgebra) -> BochvarSystem:
    return system_data(a).system


# ---------------------------------------------------------------------------
# round trips

def roundtrip_algebra(a: FiniteAlgebra) -> Homomorphism | None:
    """An isomorphism from ``a`` onto the algebra rebuilt from its system, found by search."""
    s = algebra_to_system(a)
    b, _ = system_to_algebra(s)
    return find_isomorphism(a, b)


def unit_map(a: FiniteAlgebra) -> Homomorphism:
    """The canonical map ``x -> J2 x / [J2 1_i)`` into the rebuilt algebra."""
    sd = system_data(a)
    b, _ = system_to_algebra(sd.system)
    return Homomorphism(a, b, tuple(sd.unit_image(x) for x in a.elements))


def boolean_isomorphisms(b: BooleanAlgebra, c: BooleanAlgebra) -> list[Homomorphism]:
    """Every isomorphism of powerset algebras, one per bijection of atoms."""
    if len(b.atoms) != len(c.atoms):
        return []
    out = []
    for perm in permutations(range(len(c.atoms))):
        imgs = []
        for m in range(len(b)):
            imgs.append(c.name_of(sum(1 << perm[k] for k in range(len(b.atoms)) if m >> k & 1)))
        out.append(Homomorphism(b.algebra, c.algebra, tuple(imgs)))
    return out


def system_isomorphism(s: BochvarSystem, t: BochvarSystem) -> SystemMorphism | None:
    for h in boolean_isomorphisms(s.boolean, t.boolean):
        if {h(i) for i in s.subsemilattice} == set(t.subsemilattice):
            return SystemMorphism(s, t, h)
    return None


def roundtrip_system(s: BochvarSystem) -> SystemMorphism | None:
    """An isomorphism from ``s`` onto the system recovered from its algebra.

    The canonical candidate (the bottom fibre is ``B`` itself) is tried first;
    otherwise every Boolean isomorphism is searched."""
    a, _ = system_to_algebra(s)
    sd = system_data(a)
    t = sd.system
    b = s.boolean
    canon = Homomorphism(b.algebra, t.boolean.algebra, tuple(sd.to_boolean[x] for x in b.elements))
    m = SystemMorphism(s, t, canon)
    if m.is_valid() and canon.is_injective() and {canon(i) for i in s.subsemilattice} == t.subsemilattice:
        return m
    return system_isomorphism(s, t)


# ---------------------------------------------------------------------------
# morphisms

def gamma_morphism(f: Homomorphism) -> SystemMorphism:
    """Restriction of a homomorphism of Bochvar algebras to the bottom fibres."""
    if not f.is_valid():
        raise AlgebraError("not a homomorphism")
    src, tgt = system_data(f.source), system_data(f.target)
    back = {v: k for k, v in src.to_boolean.items()}
    bs, bt = src.system.boolean, tgt.system.boolean
    imgs = []
    for x in bs.elements:
        y = f(back[x])
        if y not in tgt.to_boolean:
            raise AssertionError(f"f({back[x]}) = {y} leaves the bottom fibre")
        imgs.append(tgt.to_boolean[y])
    g = SystemMorphism(src.system, tgt.system, Homomorphism(bs.algebra, bt.algebra, tuple(imgs)))
    p = g.problems()
    if p:
        raise AssertionError("restriction is not a system morphism: " + "; ".join(p))
    return g


def xi_morphism(g: SystemMorphism) -> Homomorphism:
    """The induced map ``a/[i) -> g(a)/[g(i))`` between the constructed algebras."""
    p = g.problems()
    if p:
        raise AlgebraError("invalid system morphism: " + "; ".join(p))
    A, da = system_to_algebra(g.source)
    B, _ = system_to_algebra(g.target)
    bt = g.target.boolean
    imgs = []
    for x in A.elements:
        i = da.fibre_of[x]
        rep = A.j2(x)          # the representative a & i
        imgs.append(element_name(bt, g(rep), g(i)))
    h = Homomorphism(A, B, tuple(imgs))
    if not h.is_valid():
        raise AssertionError(f"induced map of {g.map.images} is not a homomorphism")
    return h


def naturality_problems(f: Homomorphism) -> list[str]:
    """Pointwise check that the induced map of the restriction of ``f``
    commutes with the canonical unit maps."""
    g = gamma_morphism(f)
    h = xi_morphism(g)
    ua, ub = unit_map(f.source), unit_map(f.target)
    out = []
    for x in f.source.elements:
        if h(ua(x)) != ub(f(x)):
            out.append(f"square fails at {x}: {h(ua(x))} vs {ub(f(x))}")
    return out


def system_morphisms(s: BochvarSystem, t: BochvarSystem) -> list[SystemMorphism]:
    out = []
    for h in iter_homs(s.boolean.algebra, t.boolean.algebra):
        m = SystemMorphism(s, t, h)
        if m.is_valid():
            out.append(m)
    return out


def bochvar_homs(a: FiniteAlgebra, b: FiniteAlgebra) -> list[Homomorphism]:
    return enumerate_homs(a, b)


# ---------------------------------------------------------------------------
# enumeration

def enumerate_systems(max_atoms: int, min_atoms: int = 0) -> list[BochvarSystem]:
    """All systems over ``B`` with ``min_atoms..max_atoms`` atoms named p, q, r, ..."""
    if max_atoms > len(ATOM_NAMES):
        raise ValueError(f"at most {len(ATOM_NAMES)} atoms supported")
    out = []
    for k in range(min_atoms, max_atoms + 1):
        b = boolean_from_atoms(ATOM_NAMES[:k])
        for I in enumerate_unit_meet_subsemilattices(b):
            out.append(BochvarSystem(b, I))
    return out
