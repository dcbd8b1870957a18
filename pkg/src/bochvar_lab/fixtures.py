"""Small named algebras used throughout: WK^e, its reduct, B2, SL2, the
7-element forbidden configuration, and semilattices with zero."""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .algebra import FiniteAlgebra

HALF = "half"

WKE_NOT = {"0": "1", HALF: HALF, "1": "0"}
WKE_OR = {
    "0": {"0": "0", HALF: HALF, "1": "1"},
    HALF: {"0": HALF, HALF: HALF, "1": HALF},
    "1": {"0": "1", HALF: HALF, "1": "1"},
}
WKE_AND = {
    "0": {"0": "0", HALF: HALF, "1": "0"},
    HALF: {"0": HALF, HALF: HALF, "1": HALF},
    "1": {"0": "0", HALF: HALF, "1": "1"},
}
WKE_J2 = {"1": "1", HALF: "0", "0": "0"}


def from_maps(elements, and_, or_, not_, zero, one, j2=None, name="") -> FiniteAlgebra:
    els = tuple(elements)
    return FiniteAlgebra(
        els,
        tuple(tuple(and_[x][y] for y in els) for x in els),
        tuple(tuple(or_[x][y] for y in els) for x in els),
        tuple(not_[x] for x in els),
        zero, one,
        None if j2 is None else tuple(j2[x] for x in els),
        name,
    )


@lru_cache(maxsize=None)
def wke() -> FiniteAlgebra:
    return from_maps(("0", HALF, "1"), WKE_AND, WKE_OR, WKE_NOT, "0", "1", WKE_J2, "WKe")


@lru_cache(maxsize=None)
def wk() -> FiniteAlgebra:
    return from_maps(("0", HALF, "1"), WKE_AND, WKE_OR, WKE_NOT, "0", "1", None, "WK")


@lru_cache(maxsize=None)
def b2(j2: bool = False) -> FiniteAlgebra:
    """Two-element Boolean algebra; with ``j2`` the J2 operation is the identity."""
    els = ("0", "1")
    and_ = {x: {y: str(int(x) & int(y)) for y in els} for x in els}
    or_ = {x: {y: str(int(x) | int(y)) for y in els} for x in els}
    return from_maps(els, and_, or_, {"0": "1", "1": "0"}, "0", "1",
                     {"0": "0", "1": "1"} if j2 else None, "B2e" if j2 else "B2")


def semilattice(elements, leq, j2: bool = True, name: str = "") -> FiniteAlgebra:
    """A join-semilattice with least element as an involutive bisemilattice:
    meet = join, negation = identity, 0 = 1 = bottom, J2 constantly bottom."""
    els = tuple(elements)
    up = {x: {y for y in els if leq(x, y)} for x in els}

    def lub(x, y):
        ubs = up[x] & up[y]
        least = [u for u in ubs if all(leq(u, v) for v in ubs)]
        if len(least) != 1:
            raise ValueError(f"{x} and {y} have no join")
        return least[0]

    bottoms = [x for x in els if all(leq(x, y) for y in els)]
    if len(bottoms) != 1:
        raise ValueError("no least element")
    bot = bottoms[0]
    join = {x: {y: lub(x, y) for y in els} for x in els}
    return from_maps(els, join, join, {x: x for x in els}, bot, bot,
                     {x: bot for x in els} if j2 else None, name)


@lru_cache(maxsize=None)
def sl2(j2: bool = True) -> FiniteAlgebra:
    """Two-element semilattice with zero: bottom ``0`` and top ``e``."""
    return semilattice(("0", "e"), lambda x, y: x == y or x == "0", j2, "SL2" if j2 else "SL2-")


@lru_cache(maxsize=None)
def trivial(j2: bool = True) -> FiniteAlgebra:
    return from_maps(("0",), {"0": {"0": "0"}}, {"0": {"0": "0"}}, {"0": "0"}, "0", "0",
                     {"0": "0"} if j2 else None, "1")


def chain(n: int, j2: bool = True) -> FiniteAlgebra:
    els = tuple(f"c{i}" for i in range(n))
    return semilattice(els, lambda x, y: int(x[1:]) <= int(y[1:]), j2, f"C{n}")


def diamond(j2: bool = True) -> FiniteAlgebra:
    order = {("b", "a"), ("b", "c"), ("b", "t"), ("a", "t"), ("c", "t")}
    return semilattice(("b", "a", "c", "t"), lambda x, y: x == y or (x, y) in order, j2, "M2")


def semilattices_with_zero(max_size: int = 4, j2: bool = True) -> list[FiniteAlgebra]:
    """Every join-semilattice with bottom up to ``max_size`` elements, up to isomorphism."""
    out = [trivial(j2)]
    if max_size >= 2:
        out.append(sl2(j2))
    for n in range(3, max_size + 1):
        out.append(chain(n, j2))
    if max_size >= 4:
        out.append(diamond(j2))
    return out


@lru_cache(maxsize=None)
def forbidden() -> FiniteAlgebra:
    """The forbidden configuration: bottom fibre {0,1}, two incomparable
    two-element fibres i and j, and a trivial fibre k on top."""
    from .plonka import plonka_sum
    return plonka_sum(forbidden_system(), prefix=False, name="FORB")[0]


def _two(lo: str, hi: str) -> FiniteAlgebra:
    and_ = {lo: {lo: lo, hi: lo}, hi: {lo: lo, hi: hi}}
    or_ = {lo: {lo: lo, hi: hi}, hi: {lo: hi, hi: hi}}
    return from_maps((lo, hi), and_, or_, {lo: hi, hi: lo}, lo, hi)


def _one(x: str) -> FiniteAlgebra:
    return from_maps((x,), {x: {x: x}}, {x: {x: x}}, {x: x}, x, x)


@lru_cache(maxsize=None)
def forbidden_system():
    from .plonka import SemilatticeDirectSystem
    return SemilatticeDirectSystem.build(
        index=("o", "i", "j", "k"),
        order=[("o", "i"), ("o", "j"), ("i", "k"), ("j", "k")],
        fibres={"o": _two("0", "1"), "i": _two("0i", "1i"), "j": _two("0j", "1j"), "k": _one("k")},
        homs={
            ("o", "i"): {"0": "0i", "1": "1i"},
            ("o", "j"): {"0": "0j", "1": "1j"},
            ("i", "k"): {"0i": "k", "1i": "k"},
            ("j", "k"): {"0j": "k", "1j": "k"},
        },
    )


def two_valued_sums(max_index: int = 4) -> list[FiniteAlgebra]:
    """J2-free Plonka sums with a {0,1} bottom fibre and every other fibre
    either two-element or trivial, over each index semilattice with at most
    ``max_index`` elements.  The trivial fibres must form an up-set, since
    nothing maps a trivial fibre into a two-element one."""
    from .plonka import SemilatticeDirectSystem, plonka_sum
    out = []
    for sl in semilattices_with_zero(max_index, j2=False):
        idx = sl.elements
        bottom = sl.zero
        leq = [(x, y) for x in idx for y in idx if sl.join(x, y) == y]
        for up in subsets([x for x in idx if x != bottom]):
            up = set(up)
            if any(x in up and y not in up for x, y in leq):
                continue
            fibres, names = {}, {}
            for x in idx:
                if x == bottom:
                    fibres[x], names[x] = _two("0", "1"), ("0", "1")
                elif x in up:
                    fibres[x], names[x] = _one(f"u{x}"), (f"u{x}", f"u{x}")
                else:
                    fibres[x], names[x] = _two(f"0{x}", f"1{x}"), (f"0{x}", f"1{x}")
            homs = {(x, y): {names[x][0]: names[y][0], names[x][1]: names[y][1]} for x, y in leq}
            s = SemilatticeDirectSystem.build(idx, leq, fibres, homs)
            tag = "".join(sorted(up)) or "-"
            out.append(plonka_sum(s, prefix=False, name=f"{sl.name}[{tag}]")[0])
    return out


def wk_system():
    """WK as a direct system: B2 under a trivial fibre."""
    from .plonka import SemilatticeDirectSystem
    bool2 = from_maps(("0", "1"), WKE_AND, WKE_OR, WKE_NOT, "0", "1")
    half = from_maps((HALF,), {HALF: {HALF: HALF}}, {HALF: {HALF: HALF}}, {HALF: HALF}, HALF, HALF)
    return SemilatticeDirectSystem.build(
        index=("b", "t"), order=[("b", "t")],
        fibres={"b": bool2, "t": half},
        homs={("b", "t"): {"0": HALF, "1": HALF}},
    )


def subsets(xs):
    xs = list(xs)
    for r in range(len(xs) + 1):
        yield from combinations(xs, r)
