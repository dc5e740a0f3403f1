"""Σ-homomorphisms between finite interpretations by backtracking search.

Candidate domains are first filtered by labels and then kept arc
consistent (AC-3) over the Σ-edges of the source; variables are assigned in
descending order of degree, re-propagating after each choice.
"""
from __future__ import annotations

from collections import deque
from typing import Optional

from ..errors import InsepError
from ..syntax.terms import Role, Signature
from .model import Elem, FiniteInterpretation, elem_key
from .relations import RelationWitness


def _arcs(src: FiniteInterpretation, sigma: Signature) -> dict[Elem, list[tuple[Role, Elem]]]:
    """For each element, its Σ-neighbours with the role leading to them (both directions)."""
    arcs: dict[Elem, list] = {x: [] for x in src.domain}
    for r in sigma.roles:
        for x, y in src.role_ext.get(r, ()):
            arcs[x].append((Role(r), y))
            arcs[y].append((Role(r, True), x))
    return arcs


def _revise(dom: dict, dst: FiniteInterpretation, x: Elem, role: Role, y: Elem) -> bool:
    """Shrink dom[x] to values with a role-successor in dom[y]; report change."""
    dy = dom[y]
    keep = {v for v in dom[x] if any(w in dy for w in dst.succ(v, role))}
    if len(keep) != len(dom[x]):
        dom[x] = keep
        return True
    return False


def _propagate(dom: dict, dst: FiniteInterpretation, arcs: dict, queue: deque) -> bool:
    while queue:
        y = queue.popleft()
        for role, x in arcs[y]:
            # arc x --role.inv()--> y
            if _revise(dom, dst, x, role.inv(), y):
                if not dom[x]:
                    return False
                queue.append(x)
    return True


def find_homomorphism(src: FiniteInterpretation, dst: FiniteInterpretation, sigma: Signature,
                      fixed: Optional[dict] = None, limit: Optional[int] = None) -> Optional[dict]:
    """A total map src.domain -> dst.domain preserving Σ-labels and Σ-edges, or None.

    ``fixed`` pins some elements; ``limit`` bounds the number of search nodes
    (None means unbounded).
    """
    fixed = fixed or {}
    dom: dict[Elem, set] = {}
    dst_by_label = {a: dst.concept_ext.get(a, frozenset()) for a in sigma.concepts}
    for x in src.domain:
        need = src.labels.get(x, frozenset()) & sigma.concepts
        if x in fixed:
            cand = {fixed[x]} if fixed[x] in dst.domain else set()
        else:
            cand = set(dst.domain)
        for a in need:
            cand &= dst_by_label[a]
        if not cand:
            return None
        dom[x] = cand
    arcs = _arcs(src, sigma)
    if not _propagate(dom, dst, arcs, deque(src.domain)):
        return None
    order = sorted(src.domain, key=lambda x: (-len(arcs[x]), elem_key(x)))
    nodes = [0]

    def search(k: int, dom: dict) -> Optional[dict]:
        while k < len(order) and len(dom[order[k]]) == 1:
            k += 1
        if k == len(order):
            return {x: next(iter(v)) for x, v in dom.items()}
        x = order[k]
        for v in sorted(dom[x], key=elem_key):
            nodes[0] += 1
            if limit is not None and nodes[0] > limit:
                return None
            trial = {y: set(s) for y, s in dom.items()}
            trial[x] = {v}
            if _propagate(trial, dst, arcs, deque([x])):
                got = search(k + 1, trial)
                if got is not None:
                    return got
        return None

    return search(0, dom)


def check_homomorphism(src: FiniteInterpretation, dst: FiniteInterpretation, sigma: Signature,
                       anchored: bool = True) -> Optional[RelationWitness]:
    """Σ-homomorphism from src to dst; anchored maps each src individual to its dst namesake."""
    fixed = {}
    if anchored:
        missing = set(src.individuals) - set(dst.individuals)
        if missing:
            raise InsepError(f"anchored homomorphism: individuals {sorted(missing)} absent from target")
        fixed = {src.individuals[a]: dst.individuals[a] for a in src.individuals}
    h = find_homomorphism(src, dst, sigma, fixed)
    if h is None:
        return None
    return RelationWitness(frozenset(h.items()), "homomorphism")


def is_homomorphism(src: FiniteInterpretation, dst: FiniteInterpretation, h: dict,
                    sigma: Signature) -> bool:
    if set(h) != set(src.domain):
        return False
    for x, y in h.items():
        if not (src.labels.get(x, frozenset()) & sigma.concepts) <= dst.labels.get(y, frozenset()):
            return False
    for r in sigma.roles:
        tgt = dst.role_ext.get(r, frozenset())
        for x, y in src.role_ext.get(r, ()):
            if (h[x], h[y]) not in tgt:
                return False
    return True
