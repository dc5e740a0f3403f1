"""Σ-CQ entailment and inseparability of Horn KBs, and the DL-Lite TBox reduction."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from ..chase.query import CQ, answer_in_structure, certain_answer
from ..chase.structure import GeneratingStructure, _witness_mode, build_from_types
from ..errors import InconsistentKB, UnsupportedFragment
from ..reasoner.api import reasoner_for
from ..syntax.fragments import Fragment, HORN_FRAGMENTS, detect_fragment, validate_fragment
from ..syntax.terms import ABox, ConceptAssertion, KB, Name, RoleAssertion, Signature, TBox
from .arena import GameArena, WinningRegion, describe, individual_edges, winning_region

DEFAULT_QUERY_DEPTH = 8
DEFAULT_QUERY_NODES = 40


@dataclass
class GameReport:
    entailed: bool
    variant: str
    fragments: tuple[str, str]
    rooted: bool = False
    region: Optional[WinningRegion] = None
    failure: Optional[dict] = None
    query: Optional[CQ] = None
    answer: tuple = ()
    query_note: str = ""
    strategy: dict = field(default_factory=dict)  # challenger element -> anchor position
    inconsistent: tuple[bool, bool] = (False, False)

    def to_json(self) -> dict:
        reg = self.region
        out = {
            "entailed": self.entailed,
            "variant": self.variant,
            "fragment": {"k1": self.fragments[0], "k2": self.fragments[1]},
            "rooted": self.rooted,
            "inconsistent": {"k1": self.inconsistent[0], "k2": self.inconsistent[1]},
            "failure": self.failure,
            "separatingQuery": None if self.query is None else str(self.query),
            "answerTuple": list(self.answer),
            "queryNote": self.query_note,
            "strategy": {str(k): v for k, v in sorted(self.strategy.items(), key=lambda kv: str(kv[0]))},
        }
        if reg is not None:
            out["states"] = {
                "positions": len(reg.states),
                "contexts": sum(1 for p in reg.states if p[0] == "c"),
                "backed": len(reg.backed),
                "pairs": reg.size(),
            }
            out["fixpointRounds"] = reg.fixpoint_rounds
        return out


def _fragment(t: TBox) -> Fragment:
    f = detect_fragment(t)
    if f not in HORN_FRAGMENTS:
        raise UnsupportedFragment(f"KB games need a Horn TBox (EL, DL-Lite, Horn-ALC), got {f.value}")
    return f


def _structure(kb: KB, extra_inds=()) -> GeneratingStructure:
    extra = {c: () for c in extra_inds}
    return build_from_types(reasoner_for(kb.tbox), kb.abox, _witness_mode(kb.tbox), extra=extra)


def choose_variant(k1: KB, k2: KB) -> str:
    return "set_state" if (k1.tbox.uses_inverse() or k2.tbox.uses_inverse()) else "forward"


def _tree_query(arena: GameArena, root, depth: int, anchored: bool, cap: int) -> Optional[CQ]:
    """Σ-part of the unraveling of G2 below root, as a CQ; None if larger than cap."""
    names = {(): "x"}
    concept = {(a, "x") for a in arena.lab2[root]}
    roles = set()
    frontier = deque([((), root, 0)])
    while frontier:
        path, y, d = frontier.popleft()
        if d == depth:
            continue
        for i, (y2, lab) in enumerate(arena.challenges[y]):
            cp = path + (i,)
            v = names[cp] = f"y{len(names)}"
            if len(names) > cap:
                return None
            concept.update((a, v) for a in arena.lab2[y2])
            for l in lab:
                if l.endswith("-"):
                    roles.add((l[:-1], v, names[path]))
                else:
                    roles.add((l, names[path], v))
            frontier.append((cp, y2, d + 1))
    return CQ(("x",) if anchored else (), frozenset(concept), frozenset(roles))


def _prune(q: CQ, holds) -> CQ:
    """Drop leaf variables, then concept atoms, while holds(q) stays true."""

    def smaller(q: CQ):
        for v in sorted(q.variables() - set(q.answer), reverse=True):
            if sum(1 for _, x, y in q.role_atoms if v in (x, y)) <= 1 and len(q.variables()) > 1:
                yield q.restrict(q.variables() - {v})
        for atom in sorted(q.concept_atoms):
            yield CQ(q.answer, q.concept_atoms - {atom}, q.role_atoms)

    progress = True
    while progress:
        progress = False
        for cand in smaller(q):
            if holds(cand):
                q, progress = cand, True
                break
    return q


def _separate(arena: GameArena, failure: dict, depth: int, cap: int):
    """Search for a Σ-CQ true in K2 and false in K1 for the failure; (query, tuple, note)."""
    g1 = arena.right
    kind = failure["kind"]
    if kind == "label":
        return CQ(("x",), frozenset({(failure["concept"], "x")})), (failure["individual"],), ""
    if kind == "edge":
        a, b = failure["individuals"]
        r = failure["role"]
        return CQ(("x", "y"), frozenset(), frozenset({(r, "x", "y")})), (a, b), ""
    root = failure["element"]
    anchored = kind == "individual"
    tup = (root,) if anchored else ()
    cache: dict = {}

    def separates(q: CQ) -> bool:
        return not answer_in_structure(g1, q, tup, cache)

    for d in range(1, depth + 1):
        q = _tree_query(arena, root, d, anchored, cap)
        if q is None:
            return None, tup, f"no separating query with at most {cap} variables up to depth {d - 1}"
        if separates(q):
            return _prune(q, separates), tup, ""
    return None, tup, f"no separating tree query up to depth {depth}"


def _failure(arena: GameArena, region: WinningRegion, rooted: bool) -> Optional[dict]:
    g1, g2 = arena.right, arena.left
    for c in sorted(g2.abox_elements):
        missing = sorted(arena.lab2[c] - g1.labels(c))
        if missing:
            return {"kind": "label", "individual": c, "concept": missing[0]}
    e1 = individual_edges(g1, arena.sigma)
    for (a, b), lab in sorted(individual_edges(g2, arena.sigma).items()):
        extra = sorted(l for l in lab if not l.endswith("-") and l not in e1.get((a, b), ()))
        if extra:
            return {"kind": "edge", "individuals": [a, b], "role": extra[0]}
    for c in sorted(g2.abox_elements):
        if c not in region.individual(c):
            return {"kind": "individual", "element": c}
    if not rooted:
        for y in sorted(arena.anon2):
            if region.anchor(y) is None:
                return {"kind": "anchor", "element": y}
    return None


def kb_cq_entails(k1: KB, k2: KB, sigma: Signature, rooted: bool = False,
                  variant: Optional[str] = None, query_depth: int = DEFAULT_QUERY_DEPTH,
                  query_nodes: int = DEFAULT_QUERY_NODES, confirm: bool = True) -> GameReport:
    """Does every Σ-CQ answer of K2 hold in K1?  ``rooted`` restricts to rooted CQs."""
    f1, f2 = _fragment(k1.tbox).value, _fragment(k2.tbox).value
    var = variant or choose_variant(k1, k2)
    missing = sorted(k2.individuals() - k1.individuals())
    try:
        g1 = _structure(k1, missing)
        bad1 = False
    except InconsistentKB:
        g1, bad1 = None, True
    try:
        g2 = _structure(k2)
        bad2 = False
    except InconsistentKB:
        g2, bad2 = None, True
    if bad1 or bad2:
        ok = bad1
        fail = None if ok else {"kind": "inconsistent", "detail": "K2 is inconsistent but K1 is not"}
        return GameReport(ok, var, (f1, f2), rooted, failure=fail, inconsistent=(bad1, bad2))
    arena = GameArena(g2, g1, sigma, var, rooted)
    region = winning_region(arena)
    fail = _failure(arena, region, rooted)
    rep = GameReport(fail is None, var, (f1, f2), rooted, region, fail)
    if fail is None:
        for y in sorted(arena.left.base.domain, key=str):
            p = ("i", y) if y in arena.left.abox_elements else region.anchor(y)
            if p is not None:
                rep.strategy[y] = describe(p)
        return rep
    q, tup, note = _separate(arena, fail, query_depth, query_nodes)
    rep.query, rep.answer, rep.query_note = q, tup, note
    if q is not None and confirm:
        if not certain_answer(k2, q, tup) or certain_answer(k1, q, tup):
            rep.query_note = "separating query failed confirmation"
    return rep


@dataclass
class InseparabilityReport:
    inseparable: bool
    forward: GameReport  # K1 entails K2
    backward: GameReport  # K2 entails K1

    def to_json(self) -> dict:
        return {"inseparable": self.inseparable, "k1EntailsK2": self.forward.to_json(),
                "k2EntailsK1": self.backward.to_json(), "variant": self.forward.variant}


def kb_cq_inseparable(k1: KB, k2: KB, sigma: Signature, rooted: bool = False,
                      variant: Optional[str] = None) -> InseparabilityReport:
    a = kb_cq_entails(k1, k2, sigma, rooted, variant)
    b = kb_cq_entails(k2, k1, sigma, rooted, variant)
    return InseparabilityReport(a.entailed and b.entailed, a, b)


@dataclass
class TBoxEntailReport:
    entailed: bool
    checked: int
    failing_abox: Optional[ABox] = None
    report: Optional[GameReport] = None

    def to_json(self) -> dict:
        out = {"entailed": self.entailed, "checkedABoxes": self.checked,
               "variant": "singleton-abox",
               "failingABox": None if self.failing_abox is None
               else [str(a) for a in self.failing_abox.assertions()]}
        if self.report is not None:
            out["game"] = self.report.to_json()
            out["fragment"] = self.report.to_json()["fragment"]
        return out


def singleton_aboxes(sigma: Signature) -> list[ABox]:
    out = [ABox.of(ConceptAssertion(a, "c")) for a in sorted(sigma.concepts)]
    out += [ABox.of(RoleAssertion(r, "a", "b")) for r in sorted(sigma.roles)]
    return out


def tbox_cq_entails_dllite(t1: TBox, t2: TBox, sigma1: Signature, sigma2: Signature,
                           rooted: bool = False) -> TBoxEntailReport:
    """Σ2-CQ entailment of (t2, A) by (t1, A) for every Σ1-ABox, via singleton ABoxes."""
    for t in (t1, t2):
        if not (validate_fragment(t, Fragment.DLLITE_CORE).ok
                or validate_fragment(t, Fragment.DLLITE_CORE_H).ok):
            raise UnsupportedFragment(
                f"the singleton-ABox reduction needs DL-Lite_core(H) TBoxes, got {detect_fragment(t).value}")
    last = None
    n = 0
    for abox in singleton_aboxes(sigma1):
        n += 1
        last = kb_cq_entails(KB(t1, abox), KB(t2, abox), sigma2, rooted)
        if not last.entailed:
            return TBoxEntailReport(False, n, abox, last)
    return TBoxEntailReport(True, n, None, last)
