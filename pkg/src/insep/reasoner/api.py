"""Public reasoning entry points."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from ..errors import UnsupportedFragment
from ..syntax.fragments import Fragment, detect_fragment, is_el_concept, is_horn, validate_fragment
from ..syntax.terms import BOT_NAME, Bot, Concept, KB, Role, Signature, TBox, TOP_NAME, sig_of
from .core import HornReasoner
from .entail import Entailer


@lru_cache(maxsize=64)
def reasoner_for(tbox: TBox) -> HornReasoner:
    if not is_horn(tbox):
        raise UnsupportedFragment(f"TBox is not Horn (fragment {detect_fragment(tbox).value})")
    return HornReasoner(tbox)


def entailer_for(tbox: TBox) -> Entailer:
    return Entailer(reasoner_for(tbox))


def _require_el(tbox: TBox):
    rep = validate_fragment(tbox, Fragment.EL)
    if not rep.ok:
        ax, why = rep.offending[0]
        raise UnsupportedFragment(f"TBox is not EL ({why}): {ax}")


def _el_or_bot(c: Concept) -> bool:
    return isinstance(c, Bot) or is_el_concept(c)


def el_subsumes(tbox: TBox, lhs: Concept, rhs: Concept) -> bool:
    """T ⊨ lhs ⊑ rhs for EL inputs (⊥ may occur in rhs)."""
    _require_el(tbox)
    if not is_el_concept(lhs):
        raise UnsupportedFragment(f"left-hand side is not an EL concept: {lhs}")
    if not _el_or_bot(rhs) and not _el_with_bot(rhs):
        raise UnsupportedFragment(f"right-hand side is not an EL concept: {rhs}")
    return entailer_for(tbox).subsumes(lhs, rhs)


def _el_with_bot(c: Concept) -> bool:
    from ..syntax.terms import And, Exists, Name, Top
    if isinstance(c, (Top, Bot, Name)):
        return True
    if isinstance(c, And):
        return all(_el_with_bot(a) for a in c.args)
    if isinstance(c, Exists):
        return not c.role.inverted and _el_with_bot(c.filler)
    return False


def horn_subsumes(tbox: TBox, lhs: Concept, rhs: Concept) -> bool:
    """T ⊨ lhs ⊑ rhs for a Horn TBox, Horn-left lhs and Horn-right rhs."""
    return entailer_for(tbox).subsumes(lhs, rhs)


def kb_consistent(kb: KB) -> bool:
    frag = detect_fragment(kb.tbox)
    if frag in (Fragment.EL, Fragment.ACYCLIC_EL):
        return True
    if not is_horn(kb.tbox):
        raise UnsupportedFragment(f"consistency needs a Horn TBox, got {frag.value}")
    return reasoner_for(kb.tbox).saturate_abox(kb.abox).consistent


def instance_of(kb: KB, ind: str, c: Concept) -> bool:
    return entailer_for(kb.tbox).entails(kb.abox, ind, c)


@dataclass
class SubsumptionMap:
    """Entailed superclass names (with Top) and ∃r.B successors per concept name."""

    supers: dict[str, frozenset[str]] = field(default_factory=dict)
    successors: dict[str, frozenset[tuple[Role, str]]] = field(default_factory=dict)

    def subsumes(self, a: str, b: str) -> bool:
        return b in self.supers.get(a, frozenset({a, TOP_NAME}))

    def __getitem__(self, a: str) -> frozenset[str]:
        return self.supers[a]


def classify(tbox: TBox, names=None) -> SubsumptionMap:
    r = reasoner_for(tbox)
    names = sorted(names if names is not None else sig_of(tbox).concepts)
    allnames = frozenset(sig_of(tbox).concepts) | frozenset(names)
    out = SubsumptionMap()
    for a in names:
        t = r.anon_type({a})
        if BOT_NAME in t:
            out.supers[a] = allnames | {TOP_NAME, BOT_NAME}
            out.successors[a] = frozenset()
            continue
        out.supers[a] = frozenset(n for n in t if n not in r.fresh)
        out.successors[a] = frozenset((rr, b) for rr, b in r.requirements(t) if b not in r.fresh)
    return out


def el_classify(tbox: TBox) -> SubsumptionMap:
    _require_el(tbox)
    return classify(tbox)
