import pytest
from hypothesis import given

from bochvar_lab.algebra import AlgebraError, Homomorphism, enumerate_homs, find_isomorphism
from bochvar_lab.axioms import satisfies
from bochvar_lab.equivalence import (
    BochvarSystem, NotBochvarError, SystemMorphism, algebra_to_system, enumerate_systems,
    gamma_morphism, identity_morphism, naturality_problems, roundtrip_algebra, roundtrip_system,
    system_data, system_isomorphism, system_morphisms, system_to_algebra, unit_map, xi_morphism,
)
from bochvar_lab.fixtures import b2, forbidden, sl2, wk, wke
from bochvar_lab.search import brute_force_j2, j2_search, k9_codomain

from strategies import bochvar_algebras, bochvar_systems

B2_FULL = BochvarSystem.of("p", ["1", "0"])
B4_ONE_P = BochvarSystem.of("pq", ["1", "p"])


# -- systems ---------------------------------------------------------------------

def test_system_validation():
    with pytest.raises(AlgebraError):
        BochvarSystem.of("pq", ["p", "q", "1"])      # p & q = 0 missing
    with pytest.raises(AlgebraError):
        BochvarSystem.of("pq", ["p"])                # 1 missing
    assert BochvarSystem.of("pq", ["1"]) == BochvarSystem.of("pq", ["p+q"])


def test_system_display():
    assert str(B4_ONE_P) == "<B4, {p+q, p}>"
    assert B2_FULL.members == ["p", "0"]


def test_enumeration_counts():
    assert [len(enumerate_systems(k, k)) for k in range(4)] == [1, 2, 7, 61]
    assert len(enumerate_systems(3)) == 71


# -- system -> algebra -----------------------------------------------------------

def test_two_element_system_is_wke():
    a, d = system_to_algebra(B2_FULL)
    assert a.elements == ("0", "p", "0/0")
    assert find_isomorphism(a, wke()) is not None
    assert d.system.index == ("p", "0")


def test_singleton_system_is_boolean_with_identity_j2():
    a, _ = system_to_algebra(BochvarSystem.of("pq", ["1"]))
    assert len(a) == 4
    assert all(a.j2(x) == x for x in a.elements)


def test_six_element_example():
    a, d = system_to_algebra(B4_ONE_P)
    assert a.elements == ("0", "p", "q", "p+q", "0/p", "p/p")
    assert [a.j2(x) for x in a.elements] == ["0", "p", "q", "p+q", "0", "p"]
    assert d.fibre("p") == ["0/p", "p/p"]
    # the projection p_{1,p} sends q to 0/p and p+q to p/p
    assert d.system.hom("p+q", "p") == {"0": "0/p", "p": "p/p", "q": "0/p", "p+q": "p/p"}


@given(bochvar_systems(max_atoms=3))
def test_constructed_algebras_are_bochvar(s):
    a, d = system_to_algebra(s)
    assert satisfies(a, "BCA")
    assert len(d.system.index) == len(s.subsemilattice)


# -- algebra -> system -----------------------------------------------------------

def test_wke_gives_the_full_two_element_system():
    s = algebra_to_system(wke())
    assert s.boolean.atoms == ("p",)
    assert s.subsemilattice == {"p", "0"}


def test_generators_are_j2_of_fibre_units():
    sd = system_data(system_to_algebra(B4_ONE_P)[0])
    assert sd.generator == {"p+q": "p+q", "p/p": "p"}


def test_non_bochvar_inputs_are_refused():
    with pytest.raises(NotBochvarError):
        algebra_to_system(wk())                 # no J2
    with pytest.raises(NotBochvarError):
        algebra_to_system(sl2())                # two fibres with trivial bottom
    bad = wke().with_j2(["0", "half", "1"])
    with pytest.raises(NotBochvarError) as e:
        algebra_to_system(bad)
    assert "FAILS" in str(e.value)


# -- round trips -----------------------------------------------------------------

@given(bochvar_systems(max_atoms=3))
def test_system_round_trip(s):
    m = roundtrip_system(s)
    assert m is not None and m.is_valid() and m.map.is_injective()


@given(bochvar_algebras(max_atoms=3))
def test_algebra_round_trip_and_unit_map(a):
    assert roundtrip_algebra(a) is not None
    u = unit_map(a)
    assert u.is_valid() and u.is_injective() and u.is_surjective()


def test_unit_map_on_wke():
    assert unit_map(wke()).images == ("0", "0/0", "p")


def test_round_trip_of_system_isomorphism_search():
    s = BochvarSystem.of("pq", ["1", "p"])
    t = BochvarSystem.of("pq", ["1", "q"])
    m = system_isomorphism(s, t)
    assert m is not None and m("p") == "q"
    assert system_isomorphism(s, BochvarSystem.of("pq", ["1", "0"])) is None


# -- uniqueness of J2 on a fixed reduct ------------------------------------------

@given(bochvar_algebras(max_atoms=2))
def test_j2_is_unique_on_reduct(a):
    assert j2_search(a, "BCA").tables == (a.j2_table,)


def test_j2_uniqueness_brute_force_on_small_members():
    for s in enumerate_systems(2):
        a, _ = system_to_algebra(s)
        if len(a) <= 5:
            assert brute_force_j2(a, "BCA", codomain=k9_codomain(a)) == [a.j2_table]


# -- functors --------------------------------------------------------------------

def test_xi_on_example():
    g = system_morphisms(B4_ONE_P, B2_FULL)
    assert [m.map.images for m in g] == [("0", "0", "p", "p"), ("0", "p", "0", "p")]
    assert xi_morphism(g[0]).images == ("0", "0", "p", "p", "0/0", "0/0")
    assert xi_morphism(g[1]).images == ("0", "p", "0", "p", "0", "p")


def test_xi_rejects_invalid_morphism():
    b4, b2_ = B4_ONE_P.boolean.algebra, B2_FULL.boolean.algebra
    h = Homomorphism(b2_, b4, ("0", "p+q"))
    m = SystemMorphism(B2_FULL, B4_ONE_P, h)
    assert "g(0) = 0 is not in the target subsemilattice" in m.problems()
    with pytest.raises(AlgebraError):
        xi_morphism(m)


def test_identities_are_preserved():
    for s in enumerate_systems(2):
        a, _ = system_to_algebra(s)
        ident = xi_morphism(identity_morphism(s))
        assert ident.images == a.elements
        assert gamma_morphism(ident) == identity_morphism(s)


def test_functor_laws_and_naturality_on_small_systems():
    systems = enumerate_systems(2)
    checked = 0
    for s in systems:
        for t in systems:
            for g in system_morphisms(s, t):
                f = xi_morphism(g)
                assert gamma_morphism(f) == g
                assert naturality_problems(f) == []
                for u in systems:
                    for k in system_morphisms(t, u):
                        assert xi_morphism(g.then(k)).images == f.then(xi_morphism(k)).images
                checked += 1
    assert checked > 50


def test_every_algebra_hom_comes_from_a_system_morphism():
    systems = enumerate_systems(2)
    for s in systems:
        a, _ = system_to_algebra(s)
        for t in systems:
            b, _ = system_to_algebra(t)
            homs = sorted(h.images for h in enumerate_homs(a, b))
            induced = sorted(xi_morphism(g).images for g in system_morphisms(s, t))
            assert homs == induced


def test_naturality_on_non_canonical_names():
    w = wke()
    b = b2(j2=True)
    # the only hom B2e -> WKe is the inclusion of {0, 1}
    homs = enumerate_homs(b, w)
    assert [h.images for h in homs] == [("0", "1")]
    assert naturality_problems(homs[0]) == []


def test_forbidden_reduct_has_no_system():
    with pytest.raises(NotBochvarError):
        algebra_to_system(forbidden())
