"""Role hierarchy closure, including the inverse closure r ⊑ s ⇒ r⁻ ⊑ s⁻."""
from __future__ import annotations

from collections import defaultdict
from typing import Iterable

from ..syntax.terms import Role


class RoleHierarchy:
    def __init__(self, rsubs: Iterable[tuple[Role, Role]] = ()):
        self.edges: dict[Role, set[Role]] = defaultdict(set)
        for r, s in rsubs:
            self.edges[r].add(s)
            self.edges[r.inv()].add(s.inv())
        self._sup: dict[Role, frozenset[Role]] = {}

    def sup(self, r: Role) -> frozenset[Role]:
        """All S with r ⊑* S (reflexive, transitive)."""
        hit = self._sup.get(r)
        if hit is None:
            seen = {r}
            stack = [r]
            while stack:
                for s in self.edges.get(stack.pop(), ()):
                    if s not in seen:
                        seen.add(s)
                        stack.append(s)
            hit = self._sup[r] = frozenset(seen)
        return hit

    def subsumes(self, sub: Role, sup: Role) -> bool:
        return sup in self.sup(sub)

    def names_of(self, r: Role) -> frozenset[Role]:
        """Closed label set of an edge created for role r."""
        return self.sup(r)

    def is_trivial(self) -> bool:
        return not self.edges
