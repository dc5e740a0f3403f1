"""Left-hand witnesses: names A with T2 ⊨ A ⊑ C but T1 ⊭ A ⊑ C for some Σ-concept C."""
from __future__ import annotations

from typing import Optional

from ..interp.relations import greatest_simulation
from ..syntax.terms import Concept, Exists, Name, Signature, TBox, conj
from .canon import global_structure, root_of


def _sigma_names(sigma: Signature) -> frozenset[str]:
    return frozenset(sigma.concepts)


def lhs_simulation(t1: TBox, t2: TBox, sigma: Signature):
    names = _sigma_names(sigma)
    g1 = global_structure(t1, names)
    g2 = global_structure(t2, names)
    seeds = [(root_of(a), root_of(a)) for a in sorted(names)]
    reasons: dict = {}
    sim = greatest_simulation(g2.base, g1.base, sigma, seeds=seeds, reasons=reasons)
    return g1, g2, sim, reasons


def cwtn_lhs(t1: TBox, t2: TBox, sigma: Signature) -> frozenset[str]:
    _, _, sim, _ = lhs_simulation(t1, t2, sigma)
    return frozenset(a for a in sigma.concepts if (root_of(a), root_of(a)) not in sim)


class _TooBig(Exception):
    pass


def distinguishing_concept(g1, g2, sim, reasons, x, y, sigma: Signature,
                           cap: int = 200) -> tuple[Optional[Concept], bool]:
    """An EL Σ-concept true at x in g2 and false at y in g1; (None, True) past the size cap."""
    budget = [cap]
    memo: dict = {}

    def build(x, y) -> Concept:
        if (x, y) in memo:
            return memo[(x, y)]
        budget[0] -= 1
        if budget[0] < 0:
            raise _TooBig
        missing = sorted((g2.base.labels.get(x, frozenset()) & sigma.concepts)
                         - g1.base.labels.get(y, frozenset()))
        if missing:
            c: Concept = Name(missing[0])
        else:
            r, x2 = reasons[(x, y)]
            parts = [build(x2, y2) for y2 in sorted(g1.base.succ(y, r))]
            c = Exists(r, conj(*parts))
        memo[(x, y)] = c
        return c

    try:
        return build(x, y), False
    except _TooBig:
        return None, True
