"""Σ-simulations and Σ-bisimulations by greatest-fixpoint refinement.

The refinement keeps, for every pair (x', y) and role r, a counter of the
r-successors y' of y with (x', y') still in the relation.  Removing a pair
decrements counters; a counter reaching zero kills every (x, y) where x
has x' as an r-successor.  This is the classic counter-based algorithm and
runs in O(|R| * edges) after initialisation.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

from ..syntax.terms import Role, Signature
from .model import Elem, FiniteInterpretation


@dataclass(frozen=True)
class RelationWitness:
    pairs: frozenset
    kind: str  # "simulation" | "bisimulation" | "homomorphism"

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, p) -> bool:
        return p in self.pairs

    def as_map(self) -> dict:
        return dict(self.pairs)


def _sig_labels(i: FiniteInterpretation, x: Elem, sigma: Signature) -> frozenset:
    return i.labels.get(x, frozenset()) & sigma.concepts


def _roles(sigma: Signature, left: FiniteInterpretation, right: FiniteInterpretation,
           inverse: bool) -> list[Role]:
    names = sorted(sigma.roles & (set(left.role_ext) | set(right.role_ext)))
    out = [Role(r) for r in names]
    if inverse:
        out += [Role(r, True) for r in names]
    return out


def _refine(left: FiniteInterpretation, right: FiniteInterpretation, rel: set,
            roles: list[Role], reasons: Optional[dict] = None) -> set:
    """Largest subset of rel satisfying (zig) from left into right.

    If ``reasons`` is given, every removed pair (x, y) is mapped to (r, x2):
    the r-successor x2 of x that no r-successor of y can match any more.
    """
    count: dict = {}
    # count[(x2, r, y)] = |{y2 in succ_r(y) : (x2, y2) in rel}|
    for (x2, y2) in rel:
        for r in roles:
            for y in right.succ(y2, r.inv()):
                k = (x2, r, y)
                count[k] = count.get(k, 0) + 1
    queue: deque = deque()
    dead: set = set()

    def kill(p, why):
        if p in rel and p not in dead:
            dead.add(p)
            queue.append(p)
            if reasons is not None:
                reasons[p] = why

    for (x, y) in rel:
        for r in roles:
            for x2 in left.succ(x, r):
                if count.get((x2, r, y), 0) == 0:
                    kill((x, y), (r, x2))
                    break
            if (x, y) in dead:
                break
    while queue:
        x2, y2 = queue.popleft()
        for r in roles:
            for y in right.succ(y2, r.inv()):
                k = (x2, r, y)
                count[k] -= 1
                if count[k] == 0:
                    for x in left.succ(x2, r.inv()):
                        kill((x, y), (r, x2))
    return rel - dead


def _reachable_pairs(left, right, start, compatible, roles) -> set:
    """Pairs reachable from start by matching successor moves, filtered by compatible."""
    seen = set()
    stack = [p for p in start if compatible(*p)]
    seen.update(stack)
    while stack:
        x, y = stack.pop()
        for r in roles:
            ys = right.succ(y, r)
            if not ys:
                continue
            for x2 in left.succ(x, r):
                for y2 in ys:
                    p = (x2, y2)
                    if p not in seen and compatible(x2, y2):
                        seen.add(p)
                        stack.append(p)
    return seen


def greatest_simulation(left: FiniteInterpretation, right: FiniteInterpretation,
                        sigma: Signature, seeds: Optional[Iterable] = None,
                        inverse: bool = False, reasons: Optional[dict] = None) -> frozenset:
    """Greatest Σ-simulation from left to right.

    With ``seeds`` only pairs reachable from them are explored; the result is
    then the greatest simulation intersected with that reachable set, which
    is itself a simulation and decides membership of every seed.
    """
    roles = _roles(sigma, left, right, inverse)

    def compatible(x, y):
        return _sig_labels(left, x, sigma) <= right.labels.get(y, frozenset())

    if seeds is None:
        rel = {(x, y) for x in left.domain for y in right.domain if compatible(x, y)}
    else:
        rel = _reachable_pairs(left, right, seeds, compatible, roles)
    return frozenset(_refine(left, right, rel, roles, reasons))


def greatest_bisimulation(left: FiniteInterpretation, right: FiniteInterpretation,
                          sigma: Signature, seeds: Optional[Iterable] = None) -> frozenset:
    roles = _roles(sigma, left, right, False)

    def compatible(x, y):
        return _sig_labels(left, x, sigma) == _sig_labels(right, y, sigma)

    if seeds is None:
        rel = {(x, y) for x in left.domain for y in right.domain if compatible(x, y)}
    else:
        # explore both zig and zag successors
        rel = set()
        stack = [p for p in seeds if compatible(*p)]
        rel.update(stack)
        while stack:
            x, y = stack.pop()
            for r in roles:
                for x2 in left.succ(x, r):
                    for y2 in right.succ(y, r):
                        if (x2, y2) not in rel and compatible(x2, y2):
                            rel.add((x2, y2))
                            stack.append((x2, y2))
    while True:
        fwd = _refine(left, right, rel, roles)
        back = {(x, y) for (y, x) in _refine(right, left, {(y, x) for (x, y) in fwd}, roles)}
        if back == rel:
            return frozenset(rel)
        rel = back


def check_simulation(src: FiniteInterpretation, d1: Elem, dst: FiniteInterpretation,
                     d2: Elem, sigma: Signature) -> Optional[RelationWitness]:
    """A Σ-simulation from (src, d1) to (dst, d2), or None.

    The witness is the greatest simulation restricted to pairs reachable
    from (d1, d2).
    """
    rel = greatest_simulation(src, dst, sigma, seeds=[(d1, d2)])
    if (d1, d2) not in rel:
        return None
    return RelationWitness(_reachable_from(src, dst, rel, (d1, d2), sigma), "simulation")


def check_bisimulation(src: FiniteInterpretation, d1: Elem, dst: FiniteInterpretation,
                       d2: Elem, sigma: Signature) -> Optional[RelationWitness]:
    rel = greatest_bisimulation(src, dst, sigma, seeds=[(d1, d2)])
    if (d1, d2) not in rel:
        return None
    return RelationWitness(rel, "bisimulation")


def _reachable_from(left, right, rel, start, sigma) -> frozenset:
    roles = _roles(sigma, left, right, False)
    seen = {start}
    stack = [start]
    while stack:
        x, y = stack.pop()
        for r in roles:
            for x2 in left.succ(x, r):
                for y2 in right.succ(y, r):
                    p = (x2, y2)
                    if p in rel and p not in seen:
                        seen.add(p)
                        stack.append(p)
    return frozenset(seen)


def equisimilar(i1, d1, i2, d2, sigma: Signature) -> bool:
    return (check_simulation(i1, d1, i2, d2, sigma) is not None
            and check_simulation(i2, d2, i1, d1, sigma) is not None)


def is_simulation(left, right, pairs: Iterable, sigma: Signature, zag: bool = False) -> bool:
    """One-pass validation of (base), (zig) and optionally (zag)."""
    rel = set(pairs)
    roles = _roles(sigma, left, right, False)
    for x, y in rel:
        lx, ly = _sig_labels(left, x, sigma), _sig_labels(right, y, sigma)
        if not (lx == ly if zag else lx <= ly):
            return False
        for r in roles:
            for x2 in left.succ(x, r):
                if not any((x2, y2) in rel for y2 in right.succ(y, r)):
                    return False
            if zag:
                for y2 in right.succ(y, r):
                    if not any((x2, y2) in rel for x2 in left.succ(x, r)):
                        return False
    return True
