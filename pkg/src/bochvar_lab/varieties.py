"""Structure theory of the variety generated by Bochvar algebras: the forced J2
extension, the forbidden configuration, fibre congruences, HS/ISP membership
of WK^e, and the open/dense embedding."""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    AlgebraError, Congruence, FiniteAlgebra, Homomorphism, direct_product, enumerate_homs,
    is_compatible, is_homomorphism, is_isomorphic, is_subuniverse, pair_name, quotient_algebra,
    subalgebra, find_isomorphism,
)
from .axioms import AxiomReport, check_axiom_set, satisfies
from .boolean import is_boolean
from .fixtures import b2, semilattice, sl2, trivial, wke
from .plonka import decompose
from .search import j2_search
from .terms import evaluate_all, parse_term


# ---------------------------------------------------------------------------
# forced J2

@dataclass(frozen=True)
class JDefResult:
    algebra: FiniteAlgebra
    report: AxiomReport

    @property
    def ok(self) -> bool:
        return self.report.ok

    @property
    def failing(self) -> str | None:
        f = self.report.first_failure()
        return None if f is None else f[0]


def jdef_table(a: FiniteAlgebra) -> tuple[str, ...]:
    """J2 x = 1 when x is the unit of a non-trivial fibre, else 0."""
    d = decompose(a.reduct())
    if len(d.bottom_fibre) != 2:
        raise AlgebraError(
            f"the forced J2 needs a 2-element bottom fibre; {a.name or 'input'} has {len(d.bottom_fibre)}")
    units = {d.top_of(i) for i in d.nontrivial()}
    return tuple(a.one if x in units else a.zero for x in a.elements)


def jdef_extension(a: FiniteAlgebra) -> JDefResult:
    b = a.reduct().with_j2(jdef_table(a))
    return JDefResult(b, check_axiom_set(b, "K"))


def forbidden_search(a: FiniteAlgebra):
    """All J2 tables turning ``a`` into a member of K, with search statistics."""
    return j2_search(a.reduct(), "K")


# ---------------------------------------------------------------------------
# congruences from the bottom fibre

def theta_a(a: FiniteAlgebra, g: str) -> Congruence:
    """b ~ c iff g|b = g|c and g|-b = g|-c; asserted compatible with every operation."""
    d = decompose(a)
    if g not in d.bottom_fibre:
        raise AlgebraError(f"{g} is not in the bottom fibre")
    key = {x: (a.join(g, x), a.join(g, a.neg(x))) for x in a.elements}
    labels = [next(j for j, y in enumerate(a.elements) if key[y] == key[x]) for x in a.elements]
    c = Congruence.from_labels(a, labels)
    if not is_compatible(a, c.labels):
        raise AssertionError(f"theta({g}) is not a congruence of {a!r}")
    return c


def fibre_congruence(a: FiniteAlgebra) -> Congruence:
    d = decompose(a)
    idx = {i: k for k, i in enumerate(d.system.index)}
    c = Congruence.from_labels(a, [idx[d.fibre_of[x]] for x in a.elements])
    if not is_compatible(a, c.labels):
        raise AssertionError(f"the fibre partition is not a congruence of {a!r}")
    return c


def nontrivial_join_violations(a: FiniteAlgebra) -> list[tuple[str, str]]:
    """Pairs of non-trivial fibres whose join fibre is trivial (expected empty
    for K-members with 2-element bottom fibre)."""
    d = decompose(a)
    s = d.system
    nt = set(d.nontrivial())
    return [(i, j) for i in s.index for j in s.index
            if i in nt and j in nt and s.join(i, j) not in nt]


# ---------------------------------------------------------------------------
# HS(WK^e) and ISP(WK^e)

def hs_members() -> dict[str, FiniteAlgebra]:
    return {"trivial": trivial(), "B2": b2(j2=True), "SL2": sl2(), "WKe": wke()}


def hs_wke_classify(a: FiniteAlgebra) -> str:
    for name, m in hs_members().items():
        ref = m if a.has_j2 else m.reduct()
        if len(ref) == len(a) and is_isomorphic(a, ref):
            return name
    return "none"


@dataclass(frozen=True)
class ISPVerdict:
    bca: bool
    embeds: bool
    homs: tuple[Homomorphism, ...]      # the separating family used (empty if none)

    @property
    def agree(self) -> bool:
        return self.bca == self.embeds

    @property
    def power(self) -> int:
        return len(self.homs)

    def embedding(self, a: FiniteAlgebra) -> dict[str, tuple[str, ...]]:
        return {x: tuple(h(x) for h in self.homs) for x in a.elements}


def isp_wke_check(a: FiniteAlgebra, bound: int = 16) -> ISPVerdict:
    """BCA verdict against separation of points by homomorphisms into WK^e."""
    if len(a) > bound:
        raise ValueError(f"{len(a)} elements exceeds the bound {bound}")
    bca = satisfies(a, "BCA")
    homs = enumerate_homs(a, wke())
    els = a.elements
    pairs = {(x, y) for i, x in enumerate(els) for y in els[i + 1:]}
    chosen = []
    # greedy: keep a hom whenever it separates a pair not yet separated
    for h in homs:
        split = {(x, y) for x, y in pairs if h(x) != h(y)}
        if split:
            chosen.append(h)
            pairs -= split
    embeds = not pairs
    if len(els) == 1:
        # the trivial algebra is the empty power of WK^e
        chosen = []
    if embeds:
        imgs = {tuple(h(x) for h in chosen) for x in els}
        if len(imgs) != len(els):
            raise AssertionError("separating family is not injective")
    return ISPVerdict(bca, embeds, tuple(chosen) if embeds else ())


# ---------------------------------------------------------------------------
# open and dense elements

def open_elements(a: FiniteAlgebra) -> list[str]:
    out = [x for x in a.elements if a.j2(x) == x]
    if set(out) != {a.j2(x) for x in a.elements}:
        raise AssertionError("fixpoints of J2 differ from its range")
    return out


def dense_elements(a: FiniteAlgebra) -> list[str]:
    out = [x for x in a.elements if a.j2(x) == a.zero]
    if set(out) != {a.meet(x, a.neg(x)) for x in a.elements}:
        raise AssertionError("J2-kernel of 0 differs from the range of x & -x")
    return out


@dataclass(frozen=True, eq=False)
class ODDecomposition:
    algebra: FiniteAlgebra
    open_part: FiniteAlgebra
    dense_part: FiniteAlgebra
    embedding: dict[str, str]       # element -> name of (J2 x, x & -x) in the product
    product: FiniteAlgebra

    @property
    def is_isomorphism(self) -> bool:
        return len(set(self.embedding.values())) == len(self.product)


def dense_semilattice(a: FiniteAlgebra, members: list[str]) -> FiniteAlgebra:
    """The dense elements with the join of ``a`` as both lattice operations."""
    for x in members:
        for y in members:
            if a.join(x, y) not in members:
                raise AssertionError(f"dense elements not closed under join: {x} | {y}")
    d = semilattice(members, lambda x, y: a.join(x, y) == y, j2=True, name="D")
    if d.zero != a.zero:
        raise AssertionError("0 is not the least dense element")
    return d


def od_embedding(a: FiniteAlgebra) -> ODDecomposition:
    if not a.has_j2 or not satisfies(a, "V"):
        raise AlgebraError(f"{a.name or 'algebra'} is not in V")
    O = open_elements(a)
    D = dense_elements(a)
    if not is_subuniverse(a, O):
        raise AssertionError("open elements do not form a subalgebra")
    oa = subalgebra(a, O, name="O")
    if not is_boolean(oa):
        raise AssertionError("open subalgebra is not Boolean")
    da = dense_semilattice(a, D)
    key = {x: a.meet(x, a.neg(x)) for x in a.elements}
    theta = Congruence.from_labels(a, [a.index(key[x]) for x in a.elements])
    q, _ = quotient_algebra(a, theta)
    if find_isomorphism(q, da) is None:
        raise AssertionError("dense semilattice is not isomorphic to the quotient by x & -x")
    prod = direct_product(oa, da, name="OxD")
    emb = {x: pair_name(a.j2(x), key[x]) for x in a.elements}
    images = [emb[x] for x in a.elements]
    if len(set(images)) != len(images):
        raise AssertionError("open/dense map is not injective")
    if not is_homomorphism(a, prod, images):
        raise AssertionError("open/dense map is not a homomorphism")
    return ODDecomposition(a, oa, da, emb, prod)


# ---------------------------------------------------------------------------
# independence of BA and SL

INDEPENDENCE_TERM = parse_term("J2 x | (J2 x & y)")


@dataclass(frozen=True)
class IndependenceVerdict:
    boolean_class: bool
    semilattice_class: bool
    holds: bool


def independence_check(a: FiniteAlgebra) -> IndependenceVerdict:
    """phi(x, y) = x on BA-members and phi(x, y) = y on SL-members, exhaustively."""
    ba, sl = satisfies(a, "BA_rel"), satisfies(a, "SL_rel")
    if not (ba or sl):
        raise AlgebraError(f"{a.name or 'algebra'} is in neither BA nor SL")
    vals = evaluate_all(INDEPENDENCE_TERM, a, ["x", "y"])
    n = len(a)
    xs = [i // n for i in range(n * n)]
    ys = [i % n for i in range(n * n)]
    ok = True
    if ba:
        ok &= all(int(v) == x for v, x in zip(vals, xs))
    if sl:
        ok &= all(int(v) == y for v, y in zip(vals, ys))
    return IndependenceVerdict(ba, sl, bool(ok))


def ba_sl_factorization(a: FiniteAlgebra, boolean_factors: list[FiniteAlgebra],
                        semilattice_factors: list[FiniteAlgebra]) -> tuple[FiniteAlgebra, FiniteAlgebra] | None:
    for bf in boolean_factors:
        for sf in semilattice_factors:
            if len(bf) * len(sf) == len(a) and is_isomorphic(a, direct_product(bf, sf)):
                return bf, sf
    return None
