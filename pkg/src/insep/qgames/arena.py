"""Embeddability games between generating structures.

The challenger plays on the generating structure G2 of K2 and the
responder on the canonical model of K1.  Canonical-model elements are
represented finitely:

* an individual ``("i", a)``;
* a context ``("c", w, E, A)``: an anonymous element built from the
  witness ``w`` of G1, entered from its parent along the Σ-role labels
  ``E``, where ``A`` is the set of challenger elements the parent can
  still host.  Moving back up to the parent is allowed for a challenge
  whose roles are covered by the inverse of ``E`` and whose target lies
  in ``A``.  ``A`` is ``None`` when ``E`` is empty (no way up).

The forward variant drops ``E`` and ``A`` altogether; it is exact only
when neither TBox uses inverse roles.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Optional

from ..chase.structure import GeneratingStructure, role_label
from ..syntax.terms import Role, Signature

Pos = tuple
VARIANTS = ("forward", "set_state")


def inv_label(lab: str) -> str:
    return lab[:-1] if lab.endswith("-") else lab + "-"


def sigma_labels(roles: Iterable[Role], sigma: Signature) -> frozenset[str]:
    return frozenset(role_label(r) for r in roles if r.name in sigma.roles)


def individual_edges(g: GeneratingStructure, sigma: Signature) -> dict:
    """(a, b) -> Σ-labels of the edge between two individuals, in both directions."""
    out: dict = {}
    inds = g.abox_elements
    for r, pairs in g.base.role_ext.items():
        if r not in sigma.roles:
            continue
        for x, y in pairs:
            if x in inds and y in inds:
                out.setdefault((x, y), set()).add(r)
                out.setdefault((y, x), set()).add(r + "-")
    return {k: frozenset(v) for k, v in out.items()}


@dataclass(eq=False)
class GameArena:
    left: GeneratingStructure  # challenger, from K2
    right: GeneratingStructure  # responder, from K1
    sigma: Signature
    variant: str = "set_state"
    rooted: bool = False

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown game variant {self.variant!r}")
        s = self.sigma
        g2, g1 = self.left, self.right
        self.anon2 = frozenset(g2.witnesses)
        self.lab2 = {y: g2.labels(y) & s.concepts for y in g2.base.domain}
        self.lab1 = {x: g1.labels(x) for x in g1.base.domain}
        # challenges: generating triples carrying at least one Σ-role
        self.challenges: dict = {y: [] for y in g2.base.domain}
        for y, r, w in g2.generating:
            lab = sigma_labels(g2.closed(r), s)
            if lab:
                self.challenges[y].append((w, lab))
        self.kids: dict = {x: [] for x in g1.base.domain}
        self.parents: dict = {x: [] for x in g1.base.domain}
        for x, r, w in g1.generating:
            lab = sigma_labels(g1.closed(r), s)
            self.kids[x].append((lab, w))
            self.parents[w].append((x, lab))
        edges = individual_edges(g1, s)
        self.neighbours: dict = {a: [] for a in g1.abox_elements}
        for (a, b), lab in sorted(edges.items(), key=lambda kv: (str(kv[0][0]), str(kv[0][1]))):
            self.neighbours[a].append((b, lab))

    @property
    def forward(self) -> bool:
        return self.variant == "forward"

    def candidates(self, pos: Pos) -> frozenset:
        """Challenger elements that may occupy pos, before any game constraint."""
        labs = self.lab1[pos[1]]
        base = set(self.anon2)
        if pos[0] == "i" and pos[1] in self.left.abox_elements:
            base.add(pos[1])
        return frozenset(y for y in base if self.lab2[y] <= labs)

    def context(self, w: Hashable, edge: frozenset, above: Optional[frozenset]) -> Pos:
        if self.forward:
            return ("c", w, None, None)
        if not edge:
            return ("c", w, frozenset(), None)
        return ("c", w, edge, frozenset(above))


def describe(pos: Pos) -> str:
    if pos[0] == "i":
        return str(pos[1])
    _, w, e, a = pos
    if e is None:
        return str(w)
    s = f"{w}@{{{','.join(sorted(e))}}}"
    if a is not None:
        s += "|{" + ",".join(sorted(map(str, a))) + "}"
    return s


@dataclass
class WinningRegion:
    states: dict  # position -> frozenset of challenger elements it can host
    fixpoint_rounds: int
    backed: frozenset = frozenset()
    removed_at: dict = field(default_factory=dict)  # (element, position) -> round

    def individual(self, a) -> frozenset:
        return self.states.get(("i", a), frozenset())

    def hosts(self, w) -> list:
        """Backed positions built from witness (or individual) w."""
        if ("i", w) in self.states:
            return [("i", w)]
        return [p for p in self.backed if p[1] == w]

    def accepts(self, xi: Iterable, w) -> bool:
        """Can the set ξ of challenger elements be mapped together onto an element built from w?"""
        xi = frozenset(xi)
        return any(xi <= self.states[p] for p in self.hosts(w))

    def anchor(self, y) -> Optional[Pos]:
        for p in sorted(self.states, key=describe):
            if p[0] == "i" and y in self.states[p]:
                return p
        for p in sorted(self.backed, key=describe):
            if y in self.states[p]:
                return p
        return None

    def size(self) -> int:
        return sum(len(v) for v in self.states.values())


class _Solver:
    def __init__(self, arena: GameArena):
        self.ar = arena
        self.V: dict = {}
        self.readers: dict = {}
        self.removed_at: dict = {}

    def ensure(self, pos: Pos, dirty: set) -> None:
        if pos not in self.V:
            self.V[pos] = set(self.ar.candidates(pos))
            dirty.add(pos)

    def child(self, pos: Pos, lab: frozenset, w) -> Pos:
        above = self.V[pos]
        if pos[0] == "i":
            above = above & self.ar.anon2
        return self.ar.context(w, lab, above)

    def responses(self, pos: Pos) -> list:
        """(labels, target position) for every responder move out of pos."""
        ar = self.ar
        out = []
        if pos[0] == "i":
            for b, lab in ar.neighbours.get(pos[1], ()):
                out.append((lab, ("i", b)))
        for lab, w in ar.kids[pos[1]]:
            if lab:
                out.append((lab, self.child(pos, lab, w)))
        return out

    def survives(self, y, pos: Pos, moves: list, snapshot: dict) -> bool:
        up = None
        if pos[0] == "c" and pos[2]:
            up = frozenset(inv_label(l) for l in pos[2])
        for y2, need in self.ar.challenges[y]:
            if up is not None and need <= up and y2 in pos[3]:
                continue
            if any(need <= lab and y2 in snapshot[t] for lab, t in moves):
                continue
            return False
        return True

    def solve(self, seeds: Iterable[Pos]) -> WinningRegion:
        dirty: set = set()
        for p in seeds:
            self.ensure(p, dirty)
        rounds = 0
        while dirty:
            rounds += 1
            # make sure every position read this round exists
            plan = {pos: self.responses(pos) for pos in dirty}
            fresh: set = set()
            for pos, moves in plan.items():
                for _, t in moves:
                    self.ensure(t, fresh)
                    self.readers.setdefault(t, set()).add(pos)
            snapshot = {p: frozenset(v) for p, v in self.V.items()}
            changed = []
            for pos, moves in plan.items():
                keep = {y for y in snapshot[pos] if self.survives(y, pos, moves, snapshot)}
                if keep != snapshot[pos]:
                    for y in snapshot[pos] - keep:
                        self.removed_at[(y, pos)] = rounds
                    self.V[pos] = keep
                    changed.append(pos)
            dirty = set(fresh)
            for pos in changed:
                dirty.add(pos)
                dirty.update(self.readers.get(pos, ()))
            if not changed and not fresh:
                break
        states = {p: frozenset(v) for p, v in self.V.items()}
        return WinningRegion(states, rounds, self._backed(states), dict(self.removed_at))

    def _backed(self, states: dict) -> frozenset:
        """Contexts realised by an individual-rooted or unbounded chain of parents."""
        ar = self.ar
        ctx = [p for p in states if p[0] == "c"]
        if ar.forward:
            return frozenset(ctx)
        by_w: dict = {}
        for p in ctx:
            by_w.setdefault(p[1], []).append(p)
        alive = set(ctx)
        changed = True
        while changed:
            changed = False
            for p in list(alive):
                _, w, e, a = p
                ok = False
                for x, lab in ar.parents[w]:
                    if lab != e:
                        continue
                    if a is None:
                        ok = True
                    elif x in ar.right.abox_elements:
                        ok = a <= states.get(("i", x), frozenset())
                    else:
                        ok = any(a <= states[q] for q in by_w.get(x, ()) if q in alive)
                    if ok:
                        break
                if not ok:
                    alive.discard(p)
                    changed = True
        return frozenset(alive)


def initial_positions(arena: GameArena) -> list[Pos]:
    """Individuals, plus the open-ended contexts needed for unbounded parent chains."""
    seeds: list[Pos] = [("i", a) for a in sorted(arena.right.abox_elements)]
    if arena.forward:
        seeds += [("c", w, None, None) for w in sorted(arena.right.witnesses)]
        return seeds
    everything = arena.anon2
    for x, r, w in arena.right.generating:
        if x in arena.right.abox_elements:
            continue
        lab = sigma_labels(arena.right.closed(r), arena.sigma)
        seeds.append(arena.context(w, lab, everything))
    return seeds


def winning_region(arena: GameArena) -> WinningRegion:
    """Greatest fixpoint of the survival condition over the lazily explored positions."""
    return _Solver(arena).solve(initial_positions(arena))


def moves(arena: GameArena, region: WinningRegion, pos: Pos) -> list:
    """Responder moves out of pos as (labels, target), using the region to key child contexts."""
    s = _Solver(arena)
    s.V = {p: set(v) for p, v in region.states.items()}
    return s.responses(pos)
