import pytest
from hypothesis import given, settings

from bochvar_lab.fixtures import b2, forbidden, sl2, trivial, wk, wke
from bochvar_lab.search import brute_force_j2, j2_search, k9_codomain

from strategies import bochvar_algebras, small_fixtures


def test_k9_codomain():
    assert k9_codomain(wk()) == ["0", "1"]
    assert k9_codomain(sl2()) == ["0"]          # 0 and 1 coincide in SL2, and e | -e = e
    assert k9_codomain(forbidden()) == ["0", "1"]


def test_unique_tables_on_named_reducts():
    assert j2_search(wk(), "BCA").tables == (wke().j2_table,)
    assert j2_search(b2(), "BCA").tables == (("0", "1"),)
    assert j2_search(wk(), "K").tables == (("0", "0", "1"),)


def test_sl2_is_in_k_but_not_bochvar():
    assert j2_search(sl2(), "BCA").tables == ()
    assert j2_search(sl2(), "K").tables == (sl2().j2_table,)


def test_forbidden_search_statistics():
    r = j2_search(forbidden(), "K")
    assert r.tables == ()
    assert r.space == 2 ** 7
    assert r.nodes < r.space


@pytest.mark.parametrize("axioms", ["BCA", "K", "V"])
@pytest.mark.parametrize("make", [wke, lambda: b2(True), sl2, trivial])
def test_search_matches_brute_force_on_fixtures(make, axioms):
    a = make()
    assert list(j2_search(a, axioms).tables) == brute_force_j2(a, axioms, codomain=k9_codomain(a))


def test_k9_pruning_loses_nothing():
    # with the full codomain the brute force finds the same tables
    for a in (wk(), b2(), sl2()):
        assert brute_force_j2(a, "K") == list(j2_search(a, "K").tables)


@given(bochvar_algebras(max_atoms=1))
def test_search_matches_brute_force_on_system_algebras(a):
    assert list(j2_search(a, "BCA").tables) == brute_force_j2(a, "BCA", codomain=k9_codomain(a))


@given(small_fixtures())
@settings(max_examples=20)
def test_search_order_does_not_change_result(a):
    fwd = j2_search(a, "K").tables
    rev = j2_search(a, "K", order=list(reversed(a.elements))).tables
    assert fwd == rev
