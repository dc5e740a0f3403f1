"""Satisfaction of axioms and assertions in finite interpretations."""
from __future__ import annotations

from itertools import product
from typing import Iterable, Iterator

from ..syntax.terms import (
    ABox, Axiom, ConceptAssertion, Equiv, KB, RSub, Role, RoleAssertion, Sub, TBox,
)
from .model import FiniteInterpretation, evaluate


def _role_pairs(i: FiniteInterpretation, r: Role) -> frozenset:
    pairs = i.role_ext.get(r.name, frozenset())
    return frozenset((y, x) for x, y in pairs) if r.inverted else pairs


def satisfies(i: FiniteInterpretation, item) -> bool:
    """True iff i satisfies the axiom, assertion, TBox, ABox or KB."""
    if isinstance(item, Sub):
        return evaluate(i, item.lhs) <= evaluate(i, item.rhs)
    if isinstance(item, Equiv):
        return evaluate(i, item.lhs) == evaluate(i, item.rhs)
    if isinstance(item, RSub):
        return _role_pairs(i, item.sub) <= _role_pairs(i, item.sup)
    if isinstance(item, ConceptAssertion):
        x = i.individuals.get(item.ind)
        return x is not None and x in i.concept_ext.get(item.concept, ())
    if isinstance(item, RoleAssertion):
        x, y = i.individuals.get(item.subj), i.individuals.get(item.obj)
        return x is not None and y is not None and (x, y) in i.role_ext.get(item.role, ())
    if isinstance(item, TBox):
        return all(satisfies(i, a) for a in item.axioms)
    if isinstance(item, ABox):
        return all(satisfies(i, a) for a in item.assertions())
    if isinstance(item, KB):
        return satisfies(i, item.tbox) and satisfies(i, item.abox)
    if isinstance(item, (list, tuple)):
        return all(satisfies(i, a) for a in item)
    raise TypeError(f"cannot evaluate {type(item).__name__}")


def violations(i: FiniteInterpretation, axioms: Iterable[Axiom]) -> Iterator[tuple[Axiom, frozenset]]:
    """Yield (axiom, offending elements) for every violated concept inclusion."""
    for ax in axioms:
        subs = ax.expand() if isinstance(ax, Equiv) else (ax,)
        for s in subs:
            if isinstance(s, Sub):
                bad = evaluate(i, s.lhs) - evaluate(i, s.rhs)
                if bad:
                    yield ax, bad
            elif isinstance(s, RSub):
                bad = _role_pairs(i, s.sub) - _role_pairs(i, s.sup)
                if bad:
                    yield ax, frozenset(x for x, _ in bad)


def all_interpretations(concepts: Iterable[str], roles: Iterable[str], size: int,
                        individuals: Iterable[str] = ()) -> Iterator[FiniteInterpretation]:
    """Every interpretation over domain {0..size-1}; individuals get distinct elements.

    Exponential; intended for test oracles on tiny signatures.
    """
    concepts, roles, inds = sorted(concepts), sorted(roles), sorted(individuals)
    dom = list(range(size))
    if len(inds) > size:
        return
    pairs = [(x, y) for x in dom for y in dom]
    subsets = [frozenset(x for k, x in enumerate(dom) if m >> k & 1) for m in range(1 << size)]
    rel_subsets = range(1 << len(pairs))
    from itertools import permutations
    for assign in permutations(dom, len(inds)):
        for cvals in product(subsets, repeat=len(concepts)):
            for rvals in product(rel_subsets, repeat=len(roles)):
                rext = {r: frozenset(p for k, p in enumerate(pairs) if m >> k & 1)
                        for r, m in zip(roles, rvals)}
                yield FiniteInterpretation(frozenset(dom), dict(zip(concepts, cvals)), rext,
                                           dict(zip(inds, assign)))
