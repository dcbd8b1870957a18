"""Statements checked over every member of the bounded corpus."""
import pytest

from bochvar_lab.algebra import is_compatible, is_isomorphic, is_subdirectly_irreducible
from bochvar_lab.axioms import satisfies
from bochvar_lab.boolean import boolean_from_atoms
from bochvar_lab.corpus import CorpusConfig, IsoCatalog, build_corpus, corpus, fingerprint
from bochvar_lab.equivalence import enumerate_systems, roundtrip_algebra, system_to_algebra, unit_map
from bochvar_lab.fixtures import b2, semilattices_with_zero, sl2, wke
from bochvar_lab.plonka import decompose
from bochvar_lab.varieties import (
    ba_sl_factorization, hs_wke_classify, isp_wke_check, nontrivial_join_violations, od_embedding,
    theta_a,
)


@pytest.fixture(scope="module")
def members():
    return corpus()


def test_corpus_size_and_membership(members):
    assert len(members) == 316
    assert all(satisfies(a, "K") for a in members)
    assert [len(a) for a in members] == sorted(len(a) for a in members)


def test_small_config_is_deterministic():
    cfg = CorpusConfig(max_atoms=1, semilattice_size=3, product_size=4, closure_size=4)
    first = [a.elements for a in build_corpus(cfg)]
    assert first == [a.elements for a in build_corpus(cfg)]


def test_catalog_rejects_isomorphic_copies():
    cat = IsoCatalog()
    assert cat.add(wke())
    assert not cat.add(wke().renamed({"0": "a", "half": "b", "1": "c"}))
    assert cat.add(sl2())
    assert len(cat) == 2


def test_fingerprint_is_isomorphism_invariant(members):
    for a in members[:60]:
        perm = {x: f"_{x}" for x in a.elements}
        assert fingerprint(a.renamed(perm)) == fingerprint(a)


def test_subdirectly_irreducible_members(members):
    si = [a for a in members if len(a) > 1 and is_subdirectly_irreducible(a).irreducible]
    assert sorted(hs_wke_classify(a) for a in si) == ["B2", "SL2", "WKe"]


def test_isp_agrees_with_bca(members):
    small = [a for a in members if len(a) <= 16]
    verdicts = [isp_wke_check(a) for a in small]
    assert all(v.agree for v in verdicts)
    # every system algebra within the bound shows up as an embeddable member
    embeddable = [a for a, v in zip(small, verdicts) if v.embeds]
    for sys in enumerate_systems(3):
        a, _ = system_to_algebra(sys)
        if len(a) <= 16:
            assert any(is_isomorphic(a, b) for b in embeddable if len(b) == len(a))


def test_bochvar_members_round_trip(members):
    for a in members:
        if satisfies(a, "BCA"):
            assert roundtrip_algebra(a) is not None
            assert unit_map(a).is_injective()


def test_theta_on_bochvar_members(members):
    for a in members:
        if satisfies(a, "BCA"):
            for g in decompose(a).bottom_fibre:
                assert is_compatible(a, theta_a(a, g).labels)


def test_nontrivial_joins_in_k(members):
    for a in members:
        if len(decompose(a).bottom_fibre) == 2:
            assert nontrivial_join_violations(a) == []


def test_od_embedding_on_v_members(members):
    vs = [a for a in members if satisfies(a, "V")]
    assert len(vs) == 241
    assert all(od_embedding(a).is_isomorphism for a in vs)


def test_four_element_v_members_factor(members):
    b4 = boolean_from_atoms("pq")
    bools = [b2(True), b4.algebra.with_j2(b4.elements)]
    sls = semilattices_with_zero(4)
    for a in members:
        if len(a) == 4 and satisfies(a, "V"):
            assert (satisfies(a, "BA") or satisfies(a, "SL")
                    or ba_sl_factorization(a, bools, sls) is not None)
