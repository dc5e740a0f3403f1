import random

import pytest
from hypothesis import given, settings, strategies as st

from insep.chase import canonical_for_concept
from insep.eldiff import cwtn_lhs, cwtn_rhs, el_diff, tbox_rcq_entails_el
from insep.errors import UnsupportedFragment
from insep.reasoner import el_subsumes
from insep.syntax import Name, Signature, TBox, parse_signature, parse_tbox, sig_of

from support import acyclic_el_tbox, brute_greatest_relation, el_tbox

FOOD_T1 = parse_tbox("(sub Human (some eats Top)) (sub Plant (some grows_in Area)) (sub Vegetarian Healthy)")
FOOD_T2 = parse_tbox("""
(sub Human (some eats Top)) (sub Plant (some grows_in Area)) (sub Vegetarian Healthy)
(sub Human (some eats Food)) (sub (and Food Plant) Vegetarian)
""")
S_A = parse_signature("concept:A,A1,A2;role:r")


def _valid(rep, t1, t2, sigma):
    for ax, side in rep.examples:
        assert el_subsumes(t2, ax.lhs, ax.rhs), ax
        assert not el_subsumes(t1, ax.lhs, ax.rhs), ax
        assert sig_of(ax) <= sigma
        if side == "lhs":
            assert isinstance(ax.lhs, Name) and ax.lhs.name in rep.lhs_witnesses
        else:
            assert isinstance(ax.rhs, Name) and ax.rhs.name in rep.rhs_witnesses


def test_conservative_extension():
    sigma = sig_of(FOOD_T1)
    rep = el_diff(FOOD_T1, FOOD_T2, sigma)
    assert rep.inseparable and not rep.lhs_witnesses and not rep.rhs_witnesses
    assert cwtn_lhs(FOOD_T1, FOOD_T2, sigma) == set()


def test_food_in_signature_separates():
    sigma = sig_of(FOOD_T2)
    rep = el_diff(FOOD_T1, FOOD_T2, sigma, examples=3)
    assert not rep.inseparable
    assert rep.lhs_witnesses == {"Human"}
    assert "Vegetarian" in rep.rhs_witnesses
    _valid(rep, FOOD_T1, FOOD_T2, sigma)


def test_stronger_filler_is_lhs_witness():
    t1, t2 = parse_tbox("(sub A (some r B))"), parse_tbox("(sub A (some r (and B C)))")
    sigma = parse_signature("concept:A,B,C;role:r")
    assert cwtn_lhs(t1, t2, sigma) == {"A"}
    # the canonical pointed models of A differ by simulation
    i2, d2 = canonical_for_concept(t2, Name("A"))
    i1, d1 = canonical_for_concept(t1, Name("A"))
    assert (d2, d1) not in brute_greatest_relation(i2, i1, sigma, zag=False)
    assert (d1, d2) in brute_greatest_relation(i1, i2, sigma, zag=False)


def test_identical_tboxes():
    t = parse_tbox("(equiv A (and B (some r C))) (sub B (some s D))")
    sigma = sig_of(t)
    assert cwtn_lhs(t, t, sigma) == set() and cwtn_rhs(t, t, sigma) == set()
    assert el_diff(t, t, sigma).inseparable


def test_single_filler_rhs_witness():
    t1, t2 = parse_tbox("(equiv A (some r A1))"), parse_tbox("(equiv A (some r A2))")
    assert "A" in cwtn_rhs(t1, t2, S_A)
    rep = el_diff(t1, t2, S_A)
    assert rep.inseparable is False and rep.rhs_witnesses == {"A"}
    _valid(rep, t1, t2, S_A)


def test_two_filler_rhs_witness():
    t1 = parse_tbox("(equiv A (and (some r A1) (some r A2)))")
    t2 = parse_tbox("(equiv A (some r A2))")
    assert cwtn_rhs(t1, t2, S_A) == {"A"}
    rep = el_diff(t1, t2, S_A, examples=2)
    assert rep.rhs_witnesses == {"A"} and rep.lhs_witnesses == set()
    _valid(rep, t1, t2, S_A)


def test_empty_pair():
    for sigma in (Signature(), S_A):
        assert el_diff(TBox(), TBox(), sigma).inseparable


def test_cyclic_t1_rhs_rejected():
    t1 = parse_tbox("(equiv A (some r A))")
    with pytest.raises(UnsupportedFragment):
        cwtn_rhs(t1, t1, S_A)
    rep = el_diff(t1, parse_tbox("(sub A (some r (and A A1)))"), S_A)
    assert rep.mode == "lhs-only" and rep.rhs_witnesses is None
    assert rep.inseparable is False and rep.lhs_witnesses == {"A"}
    # open: no left witness, and T1 does not entail T2 outright
    rep = el_diff(t1, parse_tbox("(sub (some r A1) A)"), S_A)
    assert rep.inseparable is None and rep.lhs_witnesses == set()


def test_cyclic_t1_entailing_t2():
    t1 = parse_tbox("(equiv A (some r A)) (sub B C)")
    rep = el_diff(t1, parse_tbox("(sub (and A B) (and C (some r A)))"), S_A)
    assert rep.inseparable is True and rep.mode == "t1-entails-t2"


def test_non_el_rejected():
    with pytest.raises(UnsupportedFragment):
        el_diff(parse_tbox("(sub A (all r B))"), TBox(), S_A)


def test_rooted_query_entailment():
    sigma = sig_of(FOOD_T1)
    assert tbox_rcq_entails_el(FOOD_T1, FOOD_T2, sigma)
    assert tbox_rcq_entails_el(FOOD_T2, FOOD_T1, sigma)
    t1, t2 = parse_tbox("(equiv A (some r A1))"), parse_tbox("(equiv A (some r A2))")
    assert not tbox_rcq_entails_el(t1, t2, S_A)
    assert tbox_rcq_entails_el(t1, t1, S_A)


def test_example_cap_reports_truncation():
    # the only distinguishing concepts are r-chains of length 6
    t1 = parse_tbox("(sub A (some r (some r (some r (some r (some r Top))))))")
    t2 = parse_tbox("(sub A (some r (some r (some r (some r (some r (some r Top)))))))")
    sigma = parse_signature("concept:A;role:r")
    rep = el_diff(t1, t2, sigma, examples=1, cap=3)
    assert rep.lhs_witnesses == {"A"} and rep.truncated == [("A", "lhs")] and not rep.examples
    rep = el_diff(t1, t2, sigma, examples=1)
    assert not rep.truncated and len(rep.examples) == 1


def test_json_shape():
    rep = el_diff(*map(parse_tbox, ["(equiv A (some r A1))", "(equiv A (some r A2))"]), S_A)
    js = rep.to_json()
    assert set(js) >= {"inseparable", "lhsWitnesses", "rhsWitnesses", "examples"}
    assert {e["side"] for e in js["examples"]} == {"lhs", "rhs"}


# ------------------------------------------------------------------ properties

NAMES, ROLES = ["A", "B", "C", "D"], ["r", "s"]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_examples_are_sound(seed):
    rng = random.Random(seed)
    t1 = acyclic_el_tbox(rng, NAMES, ROLES, rng.randint(0, 4))
    t2 = acyclic_el_tbox(rng, NAMES, ROLES, rng.randint(0, 4))
    sigma = Signature(set(rng.sample(NAMES, 3)), set(ROLES))
    rep = el_diff(t1, t2, sigma, examples=3)
    _valid(rep, t1, t2, sigma)
    assert rep.inseparable == (not rep.lhs_witnesses and not rep.rhs_witnesses)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_shrinking_signature_never_adds_witnesses(seed):
    rng = random.Random(seed)
    t1 = acyclic_el_tbox(rng, NAMES, ROLES, rng.randint(0, 4))
    t2 = acyclic_el_tbox(rng, NAMES, ROLES, rng.randint(0, 4))
    big = Signature(set(NAMES), set(ROLES))
    small = Signature(set(rng.sample(NAMES, 2)), set(rng.sample(ROLES, 1)))
    a, b = el_diff(t1, t2, small, examples=0), el_diff(t1, t2, big, examples=0)
    assert a.lhs_witnesses <= b.lhs_witnesses
    assert a.rhs_witnesses <= b.rhs_witnesses


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_lhs_on_general_el(seed):
    rng = random.Random(seed)
    t1 = el_tbox(rng, NAMES, ROLES, rng.randint(0, 5))
    t2 = TBox(t1.axioms + el_tbox(rng, NAMES, ROLES, 2).axioms)
    sigma = Signature(set(NAMES), set(ROLES))
    assert cwtn_lhs(t2, t1, sigma) == set()  # the bigger TBox entails everything the smaller does
    for a in cwtn_lhs(t1, t2, sigma):
        i2, d2 = canonical_for_concept(t2, Name(a))
        i1, d1 = canonical_for_concept(t1, Name(a))
        if len(i1.domain) * len(i2.domain) <= 16:  # keep the enumeration small
            assert (d2, d1) not in brute_greatest_relation(i2, i1, sigma, zag=False)
