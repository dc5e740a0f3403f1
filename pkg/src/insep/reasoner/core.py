"""Horn saturation: types of elements of the canonical model.

Elements of the canonical model of a Horn TBox are described by their
*start set*: the concept names forced on them by their parent edge and
their own requirement.  ``HornReasoner.anon_type(start)`` is the set of
concept names entailed for such an element; it is the least fixpoint of

    T(S) = closure(S ∪ ⋃ back(R, T(child)))

where children come from ``A ⊑ ∃R.B`` with A ∈ T(S) and have start set
{B} ∪ back(R⁻, T(S)).  ``back(R, τ)`` is what a neighbour of type τ,
reached over an R-edge, contributes (via ∃S.X ⊑ Y and X ⊑ ∀S.Y).
ABox individuals are saturated the same way, with ABox edges read in both
directions.
"""
from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

from ..config import DEFAULT_BUDGET, witness_cap as default_witness_cap
from ..errors import ResourceCap
from ..syntax.normal import HornNF, normalize_horn
from ..syntax.terms import ABox, BOT_NAME, Role, TBox, TOP_NAME
from .roles import RoleHierarchy

Type = frozenset  # of concept names, always containing "Top"
TOP_SET = frozenset({TOP_NAME})


class HornReasoner:
    """Saturation engine for one Horn TBox; memoizes anonymous types."""

    def __init__(self, tbox: TBox, budget: int = DEFAULT_BUDGET,
                 witness_cap: Optional[int] = None, nf: Optional[HornNF] = None,
                 taken: Iterable[str] = ()):
        self.tbox = tbox
        self.nf = nf if nf is not None else normalize_horn(tbox.axioms, taken)
        self.fresh = frozenset(self.nf.fresh)
        self.roles = RoleHierarchy(self.nf.rsub)
        self.budget = budget
        self.witness_cap = witness_cap or default_witness_cap()
        self.steps = 0
        # conjunctive rules
        self._rule_lhs: list[int] = []
        self._rule_rhs: list[str] = []
        self._by_name: dict[str, list[int]] = defaultdict(list)
        for lhs, rhs in dict.fromkeys(self.nf.conj):
            rid = len(self._rule_rhs)
            self._rule_lhs.append(len(lhs))
            self._rule_rhs.append(rhs)
            for n in lhs:
                self._by_name[n].append(rid)
        self.some_by: dict[str, list[tuple[Role, str]]] = defaultdict(list)
        for a, r, b in dict.fromkeys(self.nf.some):
            self.some_by[a].append((r, b))
        self._some_lhs_by: dict[str, list[tuple[Role, str]]] = defaultdict(list)
        for r, x, y in dict.fromkeys(self.nf.some_lhs):
            self._some_lhs_by[x].append((r, y))
        self._only_by: dict[str, list[tuple[Role, str]]] = defaultdict(list)
        for x, r, y in dict.fromkeys(self.nf.only):
            self._only_by[x].append((r, y))
        self._closure_memo: dict[frozenset, Type] = {}
        self._back_memo: dict[tuple[Role, Type], frozenset] = {}
        # anonymous fixpoint state
        self.anon: dict[frozenset, Type] = {}
        self._parents: dict[frozenset, set[frozenset]] = defaultdict(set)
        self._work: deque = deque()
        self._queued: set = set()

    # ------------------------------------------------------------ local rules
    def _tick(self, n: int = 1):
        self.steps += n
        if self.steps > self.budget:
            raise ResourceCap("saturation exceeded its consequence budget", self.budget)

    def closure(self, names: Iterable[str]) -> Type:
        s = frozenset(names) | TOP_SET
        hit = self._closure_memo.get(s)
        if hit is not None:
            return hit
        out = set(s)
        queue = list(s)
        left: dict[int, int] = {}
        while queue:
            n = queue.pop()
            for rid in self._by_name.get(n, ()):
                k = left.get(rid, self._rule_lhs[rid]) - 1
                left[rid] = k
                if k == 0:
                    h = self._rule_rhs[rid]
                    if h not in out:
                        out.add(h)
                        queue.append(h)
        self._tick(len(out))
        res = frozenset(out)
        self._closure_memo[s] = res
        return res

    def back(self, r: Role, tau: Type) -> frozenset:
        """Names a neighbour of type tau, reached over an r-edge, forces on this element."""
        key = (r, tau)
        hit = self._back_memo.get(key)
        if hit is not None:
            return hit
        out = set()
        sup = self.roles.sup(r)
        sup_inv = self.roles.sup(r.inv())
        for x in tau:
            for s, y in self._some_lhs_by.get(x, ()):
                if s in sup:
                    out.add(y)
            for s, y in self._only_by.get(x, ()):
                if s in sup_inv:
                    out.add(y)
        if BOT_NAME in tau:
            out.add(BOT_NAME)
        res = frozenset(out)
        self._back_memo[key] = res
        return res

    def requirements(self, tau: Type) -> list[tuple[Role, str]]:
        reqs = {rb for x in tau for rb in self.some_by.get(x, ())}
        return sorted(reqs)

    def child_start(self, tau: Type, r: Role, filler: str) -> frozenset:
        return frozenset({filler, TOP_NAME}) | self.back(r.inv(), tau)

    # -------------------------------------------------------- anonymous types
    def _add_key(self, key: frozenset) -> Type:
        t = self.anon.get(key)
        if t is None:
            if len(self.anon) >= self.witness_cap:
                raise ResourceCap("too many anonymous element types", self.witness_cap)
            t = self.anon[key] = self.closure(key)
            self._push(key)
        return t

    def _push(self, key):
        if key not in self._queued:
            self._queued.add(key)
            self._work.append(key)

    def _run(self):
        while self._work:
            key = self._work.popleft()
            self._queued.discard(key)
            tau = self.anon[key]
            while BOT_NAME not in tau:
                add = set()
                for r, b in self.requirements(tau):
                    ck = self.child_start(tau, r, b)
                    ct = self._add_key(ck)
                    self._parents[ck].add(key)
                    add |= self.back(r, ct)
                new = self.closure(tau | add)
                if new == tau:
                    break
                tau = new
            if tau != self.anon[key]:
                self.anon[key] = tau
                for p in self._parents.get(key, ()):
                    self._push(p)

    def anon_type(self, start: Iterable[str]) -> Type:
        key = frozenset(start) | TOP_SET
        self._add_key(key)
        self._run()
        return self.anon[key]

    def children(self, tau: Type) -> list[tuple[Role, str, frozenset, Type]]:
        """(role, filler, child start, child type) for every requirement of tau."""
        out = []
        if BOT_NAME in tau:
            return out
        for r, b in self.requirements(tau):
            ck = self.child_start(tau, r, b)
            out.append((r, b, ck, self.anon_type(ck)))
        return out

    # ------------------------------------------------------------------ ABoxes
    def saturate_abox(self, abox: ABox, extra: Optional[dict[str, Iterable[str]]] = None) -> "ABoxTypes":
        """Types of all individuals of abox (plus optional extra labels)."""
        inds = sorted(abox.individuals() | set(extra or ()))
        nbrs: dict[str, list[tuple[Role, str]]] = {a: [] for a in inds}
        for ra in sorted(abox.role_assertions):
            nbrs[ra.subj].append((Role(ra.role), ra.obj))
            nbrs[ra.obj].append((Role(ra.role, True), ra.subj))
        base: dict[str, set[str]] = {a: {TOP_NAME} for a in inds}
        for ca in abox.concept_assertions:
            base[ca.ind].add(ca.concept)
        for a, names in (extra or {}).items():
            base[a].update(names)
        types = {a: self.closure(base[a]) for a in inds}
        work = deque(inds)
        queued = set(inds)
        while work:
            a = work.popleft()
            queued.discard(a)
            tau = types[a]
            while BOT_NAME not in tau:
                add = set()
                for r, b in nbrs[a]:
                    add |= self.back(r, types[b])
                for r, _, _, ct in self.children(tau):
                    add |= self.back(r, ct)
                new = self.closure(tau | add)
                if new == tau:
                    break
                tau = new
            if tau != types[a]:
                types[a] = tau
                for _, b in nbrs[a]:
                    if b not in queued:
                        queued.add(b)
                        work.append(b)
            if BOT_NAME in tau:
                return ABoxTypes(types, nbrs, consistent=False)
        return ABoxTypes(types, nbrs, consistent=True)

    def visible(self, tau: Type) -> frozenset:
        """Type without internal fresh names and Top."""
        return frozenset(n for n in tau if n not in self.fresh and n != TOP_NAME)


@dataclass
class ABoxTypes:
    types: dict[str, Type]
    neighbours: dict[str, list[tuple[Role, str]]] = field(default_factory=dict)
    consistent: bool = True
