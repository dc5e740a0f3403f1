import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from insep.errors import ShapeError, UnsupportedFragment
from insep.interp import FiniteInterpretation, all_interpretations, satisfies
from insep.safety import (
    direct_dependency, extract_module, find_countermodel, indirect_dependency, is_depleting,
    model_insep_empty, semantic_empty_locality, syntactic_bot_locality, syntactic_top_locality,
)
from insep.syntax import Signature, TBox, parse_signature, parse_tbox, sig_of

from support import acyclic_el_tbox, dllite_tbox, el_tbox

DEP_A = parse_tbox("(sub A (some r B)) (sub B (some s E))")
DEP_B = parse_tbox("(sub A1 (some r B1)) (sub A2 (some r B2)) (equiv A (and B1 B2))")
S_AS = parse_signature("concept:A;role:s")
S_B = parse_signature("concept:A1,A2,A")


def extends(t: TBox, i: FiniteInterpretation, sigma: Signature) -> bool:
    """Brute force: does some interpretation of the non-Σ symbols of t turn i into a model?"""
    s = sig_of(t)
    free_c = sorted(s.concepts - sigma.concepts)
    free_r = sorted(s.roles - sigma.roles)
    n = len(i.domain)
    dom = sorted(i.domain)
    sets = [frozenset(x for k, x in enumerate(dom) if m >> k & 1) for m in range(1 << n)]
    pairs = [(x, y) for x in dom for y in dom]
    rels = [frozenset(p for k, p in enumerate(pairs) if m >> k & 1) for m in range(1 << len(pairs))]
    for cv in product(sets, repeat=len(free_c)):
        for rv in product(rels, repeat=len(free_r)):
            j = FiniteInterpretation(i.domain, {**i.concept_ext, **dict(zip(free_c, cv))},
                                     {**i.role_ext, **dict(zip(free_r, rv))})
            if satisfies(j, t):
                return True
    return False


# ------------------------------------------------------------------ dependencies


def test_direct_dependency_through_chain():
    assert direct_dependency(DEP_A, S_AS) == {"A"}


def test_no_dependency_outside_sigma():
    assert direct_dependency(DEP_A, parse_signature("concept:A,Z")) == set()


def test_direct_dependency_on_filler():
    assert direct_dependency(parse_tbox("(sub A (some r B))"), parse_signature("concept:A,B")) == {"A"}


def test_indirect_dependency():
    assert indirect_dependency(DEP_B, S_B) == {("A", frozenset({"A1", "A2"}))}
    assert direct_dependency(DEP_B, S_B) == set()


def test_indirect_needs_no_defined_names():
    t = parse_tbox("(sub A1 (some r B1)) (sub A2 (some r B2))")
    assert indirect_dependency(t, S_B) == set()


def test_indirect_needs_full_cover():
    t = parse_tbox("(sub A1 (some r B1)) (equiv A (and B1 B2))")
    assert indirect_dependency(t, S_B) == set()
    assert model_insep_empty(t, S_B).safe


def test_dependencies_need_definitorial_shape():
    with pytest.raises(ShapeError):
        direct_dependency(parse_tbox("(sub (some r A) B)"), S_B)


# ------------------------------------------------------------------ safety


def test_unsafe_with_direct_witness():
    rep = model_insep_empty(DEP_A, S_AS)
    assert not rep.safe and rep.direct_witnesses == {"A"}
    assert rep.countermodel is not None
    assert not extends(DEP_A, rep.countermodel, S_AS)


def test_unsafe_with_indirect_witness():
    rep = model_insep_empty(DEP_B, S_B)
    assert not rep.safe and rep.indirect_witnesses == {("A", frozenset({"A1", "A2"}))}
    assert rep.countermodel is not None
    assert not extends(DEP_B, rep.countermodel, S_B)


def test_primitive_inclusion_is_safe_but_not_local():
    t, sigma = parse_tbox("(sub A B)"), parse_signature("concept:A")
    assert model_insep_empty(t, sigma).safe
    assert not semantic_empty_locality(t, sigma)
    assert not syntactic_bot_locality(t, sigma)


def test_empty_tbox_is_safe():
    for sigma in (Signature(), S_B, S_AS):
        rep = model_insep_empty(TBox(), sigma)
        assert rep.safe and rep.countermodel is None


def test_safety_needs_acyclic_el():
    with pytest.raises(UnsupportedFragment):
        model_insep_empty(parse_tbox("(equiv A (some r A))"), S_B)


def test_countermodel_search_can_be_skipped():
    rep = model_insep_empty(DEP_A, S_AS, countermodel=False)
    assert not rep.safe and rep.countermodel is None


def test_countermodel_budget_degrades_gracefully():
    cm, note = find_countermodel(DEP_A, S_AS, budget=1)
    assert cm is None and "budget" in note


def test_report_json():
    js = model_insep_empty(DEP_B, S_B).to_json()
    assert js["indirectWitnesses"] == [{"name": "A", "inducedBy": ["A1", "A2"]}]
    assert js["safe"] is False and js["countermodel"]


# ------------------------------------------------------------------ locality


def test_empty_signature_makes_lhs_bottom():
    assert semantic_empty_locality(parse_tbox("(sub A B)"), Signature())


def test_existential_over_foreign_role():
    t = parse_tbox("(sub (some r B) A)")
    assert semantic_empty_locality(t, parse_signature("concept:A"))
    assert syntactic_bot_locality(t, parse_signature("concept:A"))
    assert not syntactic_bot_locality(t, parse_signature("concept:A,B;role:r"))


def test_foreign_lhs_name_is_bot_local():
    assert syntactic_bot_locality(parse_tbox("(sub A (some r C))"), parse_signature("concept:C;role:r"))


def test_semantic_finds_tautologies_grammar_misses():
    t = parse_tbox("(sub (and A B) A)")
    sigma = parse_signature("concept:A,B")
    assert semantic_empty_locality(t, sigma)
    assert not syntactic_bot_locality(t, sigma)


def test_role_inclusions():
    ri = parse_tbox("(rsub r s)")
    assert syntactic_bot_locality(ri, parse_signature("role:s"))
    assert not syntactic_bot_locality(ri, parse_signature("role:r"))
    assert syntactic_top_locality(ri, parse_signature("role:r"))


def test_top_locality():
    sigma = parse_signature("concept:A")
    assert syntactic_top_locality(parse_tbox("(sub A B) (sub A (some r C))"), sigma)
    assert not syntactic_top_locality(parse_tbox("(sub B A)"), sigma)


def test_semantic_locality_rejects_non_horn():
    with pytest.raises(UnsupportedFragment):
        semantic_empty_locality(parse_tbox("(sub A (or B C))"), Signature())


# ------------------------------------------------------------------ modules


def test_module_of_two_primitives():
    t = parse_tbox("(sub A B) (sub C D)")
    m = extract_module(t, parse_signature("concept:A"))
    assert m.indices == [0] and is_depleting(t, m, parse_signature("concept:A"))


def test_full_signature_keeps_everything():
    t = parse_tbox("(sub A B) (sub C (some r D))")
    assert extract_module(t, sig_of(t)).module == t


def test_empty_tbox_module():
    m = extract_module(TBox(), S_B)
    assert m.module == TBox() and m.iterations == 1


def test_module_grows_through_signature():
    t = parse_tbox("(sub A (some r B)) (sub B C) (sub C D) (sub E F)")
    m = extract_module(t, parse_signature("concept:A"))
    assert m.indices == [0, 1, 2] and m.trace == [[0], [1], [2]]
    for kind in ("empty_semantic", "empty-semantic"):
        assert extract_module(t, parse_signature("concept:A"), kind).indices == [0, 1, 2]


def test_unknown_module_kind():
    with pytest.raises(ValueError):
        extract_module(TBox(), S_B, "star")


# ------------------------------------------------------------------ properties

NAMES, ROLES = ["A", "B", "C"], ["r", "s"]


def _random_tbox(rng):
    if rng.random() < 0.5:
        return el_tbox(rng, NAMES, ROLES, rng.randint(1, 4))
    return dllite_tbox(rng, NAMES, ROLES, rng.randint(1, 4))


def _random_sigma(rng):
    return Signature(set(rng.sample(NAMES, rng.randint(0, 3))), set(rng.sample(ROLES, rng.randint(0, 2))))


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_bot_locality_implies_empty_locality(seed):
    rng = random.Random(seed)
    t, sigma = _random_tbox(rng), _random_sigma(rng)
    if syntactic_bot_locality(t, sigma):
        assert semantic_empty_locality(t, sigma)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_empty_local_tboxes_extend_trivially(seed):
    rng = random.Random(seed)
    t = _random_tbox(rng)
    sigma = Signature(set(rng.sample(NAMES, 1)), set(rng.sample(ROLES, rng.randint(0, 1))))
    if not semantic_empty_locality(t, sigma):
        return
    s = sig_of(t) & sigma
    for n in (1, 2):
        for i in all_interpretations(s.concepts, s.roles, n):
            assert satisfies(i, t), i  # non-Σ symbols are simply absent, i.e. empty


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_top_local_tboxes_extend_with_full_extensions(seed):
    rng = random.Random(seed)
    t = el_tbox(rng, NAMES, ROLES, rng.randint(1, 4))
    sigma = Signature(set(rng.sample(NAMES, 1)), set(rng.sample(ROLES, rng.randint(0, 1))))
    if not syntactic_top_locality(t, sigma):
        return
    s = sig_of(t)
    for n in (1, 2):
        for i in all_interpretations(s.concepts & sigma.concepts, s.roles & sigma.roles, n):
            full_c = {a: i.domain for a in s.concepts - sigma.concepts}
            full_r = {r: {(x, y) for x in i.domain for y in i.domain} for r in s.roles - sigma.roles}
            j = FiniteInterpretation(i.domain, {**i.concept_ext, **full_c}, {**i.role_ext, **full_r})
            assert satisfies(j, t)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from(["bot_syntactic", "empty_semantic", "top_syntactic"]))
def test_modules_are_depleting_and_monotone(seed, kind):
    rng = random.Random(seed)
    t = TBox(_random_tbox(rng).axioms + _random_tbox(rng).axioms)
    small = _random_sigma(rng)
    big = small | _random_sigma(rng)
    m_small, m_big = extract_module(t, small, kind), extract_module(t, big, kind)
    assert is_depleting(t, m_small, small) and is_depleting(t, m_big, big)
    assert set(m_small.indices) <= set(m_big.indices)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_safety_verdicts_against_small_countermodels(seed):
    rng = random.Random(seed)
    t = acyclic_el_tbox(rng, NAMES, ["r"], rng.randint(1, 3), depth=1)
    sigma = Signature(set(rng.sample(NAMES, rng.randint(1, 2))), set(rng.sample(["r"], rng.randint(0, 1))))
    rep = model_insep_empty(t, sigma)
    cm, note = find_countermodel(t, sigma, max_size=2)
    if rep.safe:
        assert cm is None, (t, sigma)
    if rep.countermodel is not None:
        assert not extends(t, rep.countermodel, sigma)
