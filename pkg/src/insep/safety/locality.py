"""Semantic ∅-locality and syntactic ⊥-/⊤-locality of axioms and TBoxes."""
from __future__ import annotations

from typing import Iterable, Union

from ..errors import UnsupportedFragment
from ..reasoner.entail import Entailer
from ..reasoner.core import HornReasoner
from ..syntax.fragments import detect_fragment, is_horn
from ..syntax.normal import simplify
from ..syntax.terms import (
    And, Axiom, BOT, Bot, Concept, Equiv, Exists, Forall, Name, Not, Or, RSub, Signature,
    Sub, TBox, TOP, Top, conj, disj,
)

_EMPTY = Entailer(HornReasoner(TBox()))


def restrict_empty(c: Concept, sigma: Signature) -> Concept:
    """Replace non-Σ names and ∃r.C with r ∉ Σ by ⊥ (∀r.C with r ∉ Σ becomes ⊤)."""
    if isinstance(c, (Top, Bot)):
        return c
    if isinstance(c, Name):
        return c if c.name in sigma.concepts else BOT
    if isinstance(c, Not):
        return Not(restrict_empty(c.arg, sigma))
    if isinstance(c, And):
        return conj(*(restrict_empty(a, sigma) for a in c.args))
    if isinstance(c, Or):
        return disj(*(restrict_empty(a, sigma) for a in c.args))
    if isinstance(c, Exists):
        if c.role.name not in sigma.roles:
            return BOT
        return Exists(c.role, restrict_empty(c.filler, sigma))
    if isinstance(c, Forall):
        if c.role.name not in sigma.roles:
            return TOP
        return Forall(c.role, restrict_empty(c.filler, sigma))
    raise TypeError(c)


def _subs(ax: Axiom) -> tuple:
    return ax.expand() if isinstance(ax, Equiv) else (ax,)


def semantic_empty_local_axiom(ax: Axiom, sigma: Signature) -> bool:
    if isinstance(ax, RSub):
        return ax.sub.name not in sigma.roles or ax.sub == ax.sup
    for s in _subs(ax):
        lhs = simplify(restrict_empty(s.lhs, sigma))
        rhs = simplify(restrict_empty(s.rhs, sigma))
        if isinstance(lhs, Bot) or isinstance(rhs, Top):
            continue
        if not _EMPTY.subsumes(lhs, rhs):
            return False
    return True


def semantic_empty_locality(t: Union[TBox, Axiom], sigma: Signature) -> bool:
    """Is every Σ-interpretation extendable to a model by emptying non-Σ symbols?"""
    tbox = t if isinstance(t, TBox) else TBox((t,))
    if not is_horn(tbox):
        raise UnsupportedFragment(
            f"semantic locality is decided for Horn TBoxes only, got {detect_fragment(tbox).value}")
    return all(semantic_empty_local_axiom(ax, sigma) for ax in tbox.axioms)


# ------------------------------------------------------------ ⊥-locality grammar
# ⊔ and ∀ are read through their definitions: C ⊔ D = ¬(¬C ⊓ ¬D), ∀r.C = ¬∃r.¬C.

def is_bot_concept(c: Concept, sigma: Signature) -> bool:
    """c ∈ C⊥: c is empty whenever non-Σ symbols are empty."""
    if isinstance(c, Bot):
        return True
    if isinstance(c, Name):
        return c.name not in sigma.concepts
    if isinstance(c, Not):
        return is_top_concept(c.arg, sigma)
    if isinstance(c, And):
        return any(is_bot_concept(a, sigma) for a in c.args)
    if isinstance(c, Or):
        return all(is_bot_concept(a, sigma) for a in c.args)
    if isinstance(c, Exists):
        return c.role.name not in sigma.roles or is_bot_concept(c.filler, sigma)
    return False  # Top, Forall


def is_top_concept(c: Concept, sigma: Signature) -> bool:
    """c ∈ C⊤: c is everything whenever non-Σ symbols are empty."""
    if isinstance(c, Top):
        return True
    if isinstance(c, Not):
        return is_bot_concept(c.arg, sigma)
    if isinstance(c, And):
        return all(is_top_concept(a, sigma) for a in c.args)
    if isinstance(c, Or):
        return any(is_top_concept(a, sigma) for a in c.args)
    if isinstance(c, Forall):
        return c.role.name not in sigma.roles or is_top_concept(c.filler, sigma)
    return False


def bot_local_axiom(ax: Axiom, sigma: Signature) -> bool:
    if isinstance(ax, RSub):
        return ax.sub.name not in sigma.roles
    return all(is_bot_concept(s.lhs, sigma) or is_top_concept(s.rhs, sigma) for s in _subs(ax))


def syntactic_bot_locality(t: Union[TBox, Axiom], sigma: Signature) -> bool:
    axioms = t.axioms if isinstance(t, TBox) else (t,)
    return all(bot_local_axiom(ax, sigma) for ax in axioms)


# ------------------------------------------------------------ ⊤-locality grammar
# Non-Σ concept names denote the domain and non-Σ roles the full relation.

def is_top_bot_concept(c: Concept, sigma: Signature) -> bool:
    """Empty whenever non-Σ symbols are universal."""
    if isinstance(c, Bot):
        return True
    if isinstance(c, Not):
        return is_top_top_concept(c.arg, sigma)
    if isinstance(c, And):
        return any(is_top_bot_concept(a, sigma) for a in c.args)
    if isinstance(c, Or):
        return all(is_top_bot_concept(a, sigma) for a in c.args)
    if isinstance(c, Exists):
        return is_top_bot_concept(c.filler, sigma)
    if isinstance(c, Forall):
        return c.role.name not in sigma.roles and is_top_bot_concept(c.filler, sigma)
    return False


def is_top_top_concept(c: Concept, sigma: Signature) -> bool:
    """Everything whenever non-Σ symbols are universal."""
    if isinstance(c, Top):
        return True
    if isinstance(c, Name):
        return c.name not in sigma.concepts
    if isinstance(c, Not):
        return is_top_bot_concept(c.arg, sigma)
    if isinstance(c, And):
        return all(is_top_top_concept(a, sigma) for a in c.args)
    if isinstance(c, Or):
        return any(is_top_top_concept(a, sigma) for a in c.args)
    if isinstance(c, Exists):
        return c.role.name not in sigma.roles and is_top_top_concept(c.filler, sigma)
    if isinstance(c, Forall):
        return is_top_top_concept(c.filler, sigma)
    return False


def top_local_axiom(ax: Axiom, sigma: Signature) -> bool:
    if isinstance(ax, RSub):
        return ax.sup.name not in sigma.roles
    return all(is_top_bot_concept(s.lhs, sigma) or is_top_top_concept(s.rhs, sigma)
               for s in _subs(ax))


def syntactic_top_locality(t: Union[TBox, Axiom], sigma: Signature) -> bool:
    axioms = t.axioms if isinstance(t, TBox) else (t,)
    return all(top_local_axiom(ax, sigma) for ax in axioms)
