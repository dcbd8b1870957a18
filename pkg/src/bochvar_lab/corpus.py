"""A bounded, reproducible collection of finite members of K.

Members: the algebras built from every Bochvar system with at most 3 atoms,
every semilattice with zero up to 4 elements, pairwise direct products up to
16 elements, and the subalgebras and quotients of members with at most 12
elements.  Everything is deduplicated up to isomorphism.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import (
    FiniteAlgebra, all_congruences, all_subuniverses, direct_product, find_isomorphism,
    quotient_algebra, subalgebra,
)
from .axioms import satisfies
from .equivalence import enumerate_systems, system_to_algebra
from .fixtures import semilattices_with_zero


@dataclass(frozen=True)
class CorpusConfig:
    max_atoms: int = 3
    semilattice_size: int = 4
    product_size: int = 16
    closure_size: int = 12


def fingerprint(a: FiniteAlgebra) -> tuple:
    t = a.tables
    n = t.n
    fix = sum(int(t.not_[i]) == i for i in range(n))
    j2fix = sum(int(t.j2[i]) == i for i in range(n)) if t.j2 is not None else -1
    idem = sum(int(t.and_[i, i]) == i for i in range(n))
    comm = int((t.and_ == t.or_).sum())
    row_profile = sorted(len(set(t.or_[i].tolist())) for i in range(n))
    return (n, a.has_j2, fix, j2fix, idem, comm, tuple(row_profile))


class IsoCatalog:
    """Algebras up to isomorphism, bucketed by fingerprint."""

    def __init__(self):
        self.buckets: dict[tuple, list[FiniteAlgebra]] = {}
        self.members: list[FiniteAlgebra] = []

    def add(self, a: FiniteAlgebra) -> bool:
        bucket = self.buckets.setdefault(fingerprint(a), [])
        if any(find_isomorphism(a, b) is not None for b in bucket):
            return False
        bucket.append(a)
        self.members.append(a)
        return True

    def __len__(self) -> int:
        return len(self.members)


def build_corpus(cfg: CorpusConfig = CorpusConfig()) -> list[FiniteAlgebra]:
    cat = IsoCatalog()
    for s in enumerate_systems(cfg.max_atoms):
        a, _ = system_to_algebra(s)
        cat.add(a)
    for sl in semilattices_with_zero(cfg.semilattice_size):
        cat.add(sl)
    base = list(cat.members)
    for i, a in enumerate(base):
        for b in base[i:]:
            if len(a) * len(b) <= cfg.product_size and len(a) > 1 and len(b) > 1:
                cat.add(direct_product(a, b, name=f"{a.name}x{b.name}"))
    for a in list(cat.members):
        if len(a) > cfg.closure_size:
            continue
        for k, sub in enumerate(all_subuniverses(a)):
            if len(sub) < len(a):
                cat.add(subalgebra(a, sub, name=f"{a.name}|S{k}"))
        for k, c in enumerate(all_congruences(a)):
            if not c.is_identity():
                q, _ = quotient_algebra(a, c, name=f"{a.name}/Q{k}")
                cat.add(q)
    bad = [a for a in cat.members if not satisfies(a, "K")]
    if bad:
        raise AssertionError(f"corpus members outside K: {[a.name for a in bad]}")
    return sorted(cat.members, key=lambda a: (len(a), a.name))


@lru_cache(maxsize=None)
def corpus(cfg: CorpusConfig = CorpusConfig()) -> tuple[FiniteAlgebra, ...]:
    return tuple(build_corpus(cfg))
