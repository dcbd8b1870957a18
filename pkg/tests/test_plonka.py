import pytest
from hypothesis import given, strategies as st

from bochvar_lab.algebra import AlgebraError, find_isomorphism
from bochvar_lab.axioms import is_ibsl, satisfies
from bochvar_lab.boolean import boolean_from_atoms, is_boolean
from bochvar_lab.equivalence import system_direct_system
from bochvar_lab.fixtures import (
    b2, chain, diamond, forbidden, forbidden_system, from_maps, semilattices_with_zero, sl2, trivial, wk,
    wk_system,
)
from bochvar_lab.plonka import (
    SemilatticeDirectSystem, count_fixpoints, decompose, plonka_sum, roundtrip_problems,
    same_fibre, validate_system,
)
from bochvar_lab.terms import holds

from strategies import bochvar_systems


def embedding_system():
    """B2 below B4 with a non-surjective embedding."""
    B2, B4 = boolean_from_atoms("p").algebra, boolean_from_atoms("xy").algebra
    return SemilatticeDirectSystem.build(
        ("lo", "hi"), [("lo", "hi")], {"lo": B2, "hi": B4},
        {("lo", "hi"): {"0": "0", "p": "x+y"}},
    )


def trivial_fibre_system(sl):
    """A semilattice with zero as a direct system of trivial fibres."""
    one = trivial(j2=False)
    fibres = {x: one.renamed({"0": f"t{x}"}) for x in sl.elements}
    order = [(x, y) for x in sl.elements for y in sl.elements if sl.join(x, y) == y]
    homs = {(x, y): {f"t{x}": f"t{y}"} for x, y in order}
    return SemilatticeDirectSystem.build(sl.elements, order, fibres, homs)


def systems():
    fixed = st.sampled_from([wk_system(), forbidden_system(), embedding_system()]
                            + [trivial_fibre_system(s) for s in semilattices_with_zero(4)])
    return st.one_of(fixed, bochvar_systems(max_atoms=3).map(system_direct_system))


# -- validation ------------------------------------------------------------------

def test_wk_system_report():
    rep = validate_system(wk_system())
    assert rep.ok and rep.surjective
    assert dict(rep.injective_from_bottom) == {"b": True, "t": False}


def test_forbidden_system_is_valid():
    rep = validate_system(forbidden_system())
    assert rep.ok and rep.surjective


def test_incompatible_homs_give_one_violation():
    B2, B4 = boolean_from_atoms("p").algebra, boolean_from_atoms("xy").algebra
    s = SemilatticeDirectSystem.build(
        ("a", "b", "c"), [("a", "b"), ("b", "c")],
        {"a": B2, "b": B4, "c": B4},
        {("a", "b"): {"0": "0", "p": "x+y"},
         ("b", "c"): {"0": "0", "x": "y", "y": "x", "x+y": "x+y"},
         ("a", "c"): {"0": "0", "p": "x+y"}},
    )
    assert validate_system(s).ok
    # a swap on the middle step makes the direct map disagree with the composite
    s2 = SemilatticeDirectSystem.build(
        ("a", "b", "c"), [("a", "b"), ("b", "c")],
        {"a": B4, "b": B4, "c": B4},
        {("a", "b"): {"0": "0", "x": "x", "y": "y", "x+y": "x+y"},
         ("b", "c"): {"0": "0", "x": "y", "y": "x", "x+y": "x+y"},
         ("a", "c"): {"0": "0", "x": "x", "y": "y", "x+y": "x+y"}},
    )
    rep = validate_system(s2)
    assert len(rep.violations) == 1
    assert "compatibility" in rep.violations[0]


def test_non_homomorphism_is_reported():
    B = boolean_from_atoms("p").algebra
    s = SemilatticeDirectSystem.build(("a", "b"), [("a", "b")], {"a": B, "b": B},
                                      {("a", "b"): {"0": "p", "p": "0"}})
    assert any("not a homomorphism" in v for v in validate_system(s).violations)


def test_missing_hom_and_bad_order():
    B = boolean_from_atoms("p").algebra
    s = SemilatticeDirectSystem.build(("a", "b"), [("a", "b")], {"a": B, "b": B}, {})
    assert not validate_system(s).ok
    s = SemilatticeDirectSystem.build(("a", "b", "c"), [("a", "b"), ("a", "c")],
                                      {"a": B, "b": B, "c": B},
                                      {("a", "b"): {"0": "0", "p": "p"}, ("a", "c"): {"0": "0", "p": "p"}})
    assert any("no join" in v for v in validate_system(s).violations)


# -- sums ------------------------------------------------------------------------

def test_wk_sum_matches_reduct():
    a, _ = plonka_sum(wk_system(), prefix=False)
    assert a.join("1", "half") == "half"
    assert find_isomorphism(a, wk()) is not None


def test_prefixed_names():
    a, d = plonka_sum(wk_system())
    assert a.elements == ("b:0", "b:1", "t:half")
    assert d.local["t:half"] == "half"


def test_single_fibre_sum():
    B4 = boolean_from_atoms("pq").algebra
    s = SemilatticeDirectSystem.build(("o",), [], {"o": B4}, {})
    a, _ = plonka_sum(s, prefix=False)
    assert a == B4


def test_forbidden_join():
    a = forbidden()
    assert len(a) == 7
    assert a.join("0i", "1j") == "k"
    assert a.meet("1i", "0j") == "k"


def test_sum_rejects_overlapping_names():
    B = boolean_from_atoms("p").algebra
    s = SemilatticeDirectSystem.build(("a", "b"), [("a", "b")], {"a": B, "b": B},
                                      {("a", "b"): {"0": "0", "p": "p"}})
    with pytest.raises(AlgebraError):
        plonka_sum(s, prefix=False)


@given(systems())
def test_sums_are_ibsl(s):
    a, _ = plonka_sum(s)
    assert is_ibsl(a)


@given(systems())
def test_fibre_membership_criterion(s):
    a, d = plonka_sum(s)
    for x in a.elements:
        for y in a.elements:
            assert same_fibre(a, x, y) == (d.fibre_of[x] == d.fibre_of[y])


@given(systems())
def test_round_trip_through_decomposition(s):
    assert roundtrip_problems(s) == []


@given(systems())
def test_decomposition_rebuilds_source(s):
    a, _ = plonka_sum(s)
    d = decompose(a)
    b, _ = plonka_sum(d.system, prefix=False)
    assert {x: (b.neg(x), tuple(b.join(x, y) for y in a.elements)) for x in a.elements} == \
           {x: (a.neg(x), tuple(a.join(x, y) for y in a.elements)) for x in a.elements}


def test_boolean_and_trivial_sums():
    a, _ = plonka_sum(SemilatticeDirectSystem.build(("o",), [], {"o": b2()}, {}), prefix=False)
    assert is_boolean(a)
    t, _ = plonka_sum(trivial_fibre_system(diamond(j2=False)))
    assert holds(t, "x | y = x & y")


# -- decomposition ---------------------------------------------------------------

def test_decompose_wk():
    d = decompose(wk())
    assert d.system.index == ("1", "half")
    assert d.fibre("1") == ["0", "1"] and d.fibre("half") == ["half"]
    assert d.system.hom("1", "half") == {"0": "half", "1": "half"}


def test_decompose_boolean_is_one_fibre():
    assert len(decompose(boolean_from_atoms("pq").algebra).system.index) == 1


def test_decompose_semilattice_is_trivial_fibres():
    d = decompose(sl2())
    assert [len(d.system.fibres[i]) for i in d.system.index] == [1, 1]


def test_decompose_trivial_algebra():
    d = decompose(trivial())
    assert d.system.index == ("0",)


def test_decompose_rejects_non_ibsl():
    # identity negation on a two-element lattice breaks De Morgan
    lattice = from_maps(("0", "1"), {"0": {"0": "0", "1": "0"}, "1": {"0": "0", "1": "1"}},
                        {"0": {"0": "0", "1": "1"}, "1": {"0": "1", "1": "1"}},
                        {"0": "0", "1": "1"}, "0", "1")
    with pytest.raises(AlgebraError):
        decompose(lattice)


def test_fixpoints():
    assert count_fixpoints(wk()) == 1
    assert count_fixpoints(boolean_from_atoms("pq").algebra) == 0
    assert count_fixpoints(sl2()) == 2
    assert count_fixpoints(chain(3)) == 3


@given(systems())
def test_fixpoint_bound_matches_sibsl(s):
    a, _ = plonka_sum(s)
    assert (count_fixpoints(a) <= 1) == satisfies(a, "SIBSL")
