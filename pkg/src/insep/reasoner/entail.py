"""Entailment of Horn-shaped concepts at individuals and concept subsumption.

Right-hand sides are decided recursively:

* names, ⊓ and positive existentials are read off the canonical model,
  navigated lazily (anonymous elements carry a parent pointer so inverse
  roles can walk back up);
* ∀R.E adds a fresh R-successor and checks E there;
* ¬E checks that adding an E-shaped tree makes the KB inconsistent;
* ∃R.E with ∀ or ¬ inside E tries every R-successor of the canonical model,
  promoted to a named individual.  This is sound; if no successor works we
  refuse to answer rather than guess.
"""
from __future__ import annotations

from itertools import count, product
from typing import Iterator, Optional

from ..errors import UnsupportedFragment
from ..syntax.normal import simplify
from ..syntax.terms import (
    ABox, And, BOT_NAME, Bot, Concept, ConceptAssertion, Exists, Forall, Name, Not,
    Or, Role, RoleAssertion, TOP_NAME, Top, conj, disj, roles_in,
)
from .core import ABoxTypes, HornReasoner


def dnf(c: Concept) -> list[Concept]:
    """Disjuncts of an ⊔-free equivalent split; c must be built from ⊤ ⊥ A ⊓ ⊔ ∃."""
    if isinstance(c, Bot):
        return []
    if isinstance(c, (Top, Name)):
        return [c]
    if isinstance(c, Or):
        return [d for a in c.args for d in dnf(a)]
    if isinstance(c, And):
        parts = [dnf(a) for a in c.args]
        return [conj(*combo) for combo in product(*parts)]
    if isinstance(c, Exists):
        return [Exists(c.role, d) for d in dnf(c.filler)]
    raise UnsupportedFragment(f"{type(c).__name__} cannot occur on the left of a Horn inclusion: {c}")


def is_positive(c: Concept) -> bool:
    if isinstance(c, (Top, Bot, Name)):
        return True
    if isinstance(c, And):
        return all(is_positive(a) for a in c.args)
    if isinstance(c, Exists):
        return is_positive(c.filler)
    return False


class _Fresh:
    def __init__(self, prefix: str, taken: set[str]):
        self.prefix, self.taken, self.ctr = prefix, taken, count(1)

    def __call__(self) -> str:
        while True:
            n = f"{self.prefix}{next(self.ctr)}"
            if n not in self.taken:
                self.taken.add(n)
                return n


def tree_abox(c: Concept, root: str, fresh) -> Optional[ABox]:
    """Assertions describing an ⊔-free positive concept as a tree under root; None if ⊥ occurs."""
    cas: set = set()
    ras: set = set()

    def walk(d: Concept, node: str) -> bool:
        if isinstance(d, Top):
            return True
        if isinstance(d, Bot):
            return False
        if isinstance(d, Name):
            cas.add(ConceptAssertion(d.name, node))
            return True
        if isinstance(d, And):
            return all(walk(a, node) for a in d.args)
        if isinstance(d, Exists):
            child = fresh()
            r = d.role
            ras.add(RoleAssertion(r.name, child, node) if r.inverted else RoleAssertion(r.name, node, child))
            return walk(d.filler, child)
        raise UnsupportedFragment(f"not a positive concept: {d}")

    if not walk(c, root):
        return None
    return ABox(frozenset(cas), frozenset(ras))


def _role_edge(r: Role, x: str, y: str) -> RoleAssertion:
    return RoleAssertion(r.name, y, x) if r.inverted else RoleAssertion(r.name, x, y)


class Entailer:
    """Instance checking of Horn right-hand sides over KBs sharing one TBox."""

    def __init__(self, reasoner: HornReasoner):
        self.r = reasoner
        self._name_sats: dict[str, ABoxTypes] = {}
        # without inverse roles an anonymous node never looks back at its parent,
        # so what it satisfies depends on its start key alone
        self._forward = not reasoner.tbox.uses_inverse()
        self._anon_memo: dict[tuple[frozenset, Concept], bool] = {}

    def _name_sat(self, a: str) -> ABoxTypes:
        """Saturation of the one-individual ABox {a(_root)}, shared by subsumption checks."""
        if a not in self._name_sats:
            self._name_sats[a] = self.r.saturate_abox(ABox.of(ConceptAssertion(a, "_root")))
        return self._name_sats[a]

    # ---- lazy canonical model
    def _node_type(self, sat: ABoxTypes, node) -> frozenset:
        if node[0] == "i":
            return sat.types[node[1]]
        return self.r.anon_type(node[3])

    def successors(self, sat: ABoxTypes, node, s: Role) -> Iterator[tuple]:
        r = self.r
        if node[0] == "i":
            for role, b in sat.neighbours.get(node[1], ()):
                if s in r.roles.sup(role):
                    yield ("i", b)
        else:
            _, parent, r_in, _ = node
            if s in r.roles.sup(r_in.inv()):
                yield parent
        for role, _, ck, _ in r.children(self._node_type(sat, node)):
            if s in r.roles.sup(role):
                yield ("w", node, role, ck)

    def member(self, sat: ABoxTypes, node, d: Concept) -> bool:
        if isinstance(d, Top):
            return True
        if isinstance(d, Bot):
            return False
        if isinstance(d, Name):
            return d.name in self._node_type(sat, node)
        if isinstance(d, And):
            return all(self.member(sat, node, a) for a in d.args)
        if isinstance(d, Exists):
            if self._forward and node[0] == "w" and not any(r.inverted for r in roles_in(d)):
                key = (node[3], d)
                hit = self._anon_memo.get(key)
                if hit is None:
                    hit = self._anon_memo[key] = any(
                        self.member(sat, y, d.filler) for y in self.successors(sat, node, d.role))
                return hit
            return any(self.member(sat, y, d.filler) for y in self.successors(sat, node, d.role))
        raise TypeError(d)

    # ---- instance checking
    def entails(self, abox: ABox, ind: str, d: Concept) -> bool:
        d = simplify(d)
        sat = self.r.saturate_abox(abox, {ind: ()})
        if not sat.consistent:
            return True
        return self._entails(abox, sat, ind, d)

    def _fresh_for(self, abox: ABox):
        return _Fresh("_z", set(abox.individuals()))

    def _entails(self, abox: ABox, sat: ABoxTypes, ind: str, d: Concept) -> bool:
        if isinstance(d, Top):
            return True
        if isinstance(d, Bot):
            return False
        if isinstance(d, Name):
            return d.name in sat.types[ind]
        if isinstance(d, And):
            return all(self._entails(abox, sat, ind, a) for a in d.args)
        if is_positive(d):
            return self.member(sat, ("i", ind), d)
        if isinstance(d, Forall):
            z = self._fresh_for(abox)()
            return self.entails(abox | ABox.of(_role_edge(d.role, ind, z)), z, d.filler)
        if isinstance(d, Not):
            for part in dnf(simplify(d.arg)):
                t = tree_abox(part, ind, self._fresh_for(abox))
                if t is None:
                    continue
                if self.r.saturate_abox(abox | t, {ind: ()}).consistent:
                    return False
            return True
        if isinstance(d, Exists):
            return self._exists_general(abox, sat, ind, d)
        if isinstance(d, Or):
            raise UnsupportedFragment(f"disjunction on the right is not Horn: {d}")
        raise TypeError(d)

    def _exists_general(self, abox: ABox, sat: ABoxTypes, ind: str, d: Exists) -> bool:
        for role, b in sat.neighbours.get(ind, ()):
            if d.role in self.r.roles.sup(role) and self.entails(abox, b, d.filler):
                return True
        fresh = self._fresh_for(abox)
        for role, _, ck, ct in self.r.children(sat.types[ind]):
            if d.role not in self.r.roles.sup(role):
                continue
            z = fresh()
            promoted = abox | ABox.of(_role_edge(role, ind, z),
                                      *(ConceptAssertion(n, z) for n in sorted(ck) if n != TOP_NAME))
            if self.entails(promoted, z, d.filler):
                return True
        raise UnsupportedFragment(
            f"cannot decide an existential with a non-positive filler on the right: {d}")

    # ---- subsumption
    def subsumes(self, lhs: Concept, rhs: Concept) -> bool:
        lhs, rhs = simplify(lhs), simplify(rhs)
        if isinstance(rhs, Top) or isinstance(lhs, Bot):
            return True
        if isinstance(lhs, Name) and isinstance(rhs, Name):
            t = self.r.anon_type({lhs.name})
            return rhs.name in t or BOT_NAME in t
        if isinstance(lhs, Name) and is_positive(rhs):
            sat = self._name_sat(lhs.name)
            return not sat.consistent or self.member(sat, ("i", "_root"), rhs)
        for part in dnf(lhs):
            t = tree_abox(part, "_root", _Fresh("_n", set()))
            if t is None:
                continue
            if not self.entails(t, "_root", rhs):
                return False
        return True
