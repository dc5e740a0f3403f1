"""Syntactic membership tests for the supported description-logic fragments."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .terms import (
    And, Axiom, Bot, Concept, Equiv, Exists, Forall, Name, Not, Or, RSub, Sub,
    TBox, Top, subconcepts,
)


class Fragment(str, Enum):
    EL = "EL"
    ACYCLIC_EL = "AcyclicEL"
    DLLITE_CORE = "DLLiteCore"
    DLLITE_CORE_H = "DLLiteCoreH"
    HORN_ALC = "HornALC"
    ALCHI = "ALCHI"

    def __str__(self) -> str:
        return self.value


@dataclass
class FragmentReport:
    fragment: Fragment
    offending: list[tuple[Axiom, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.offending

    def __bool__(self) -> bool:
        return self.ok


def is_el_concept(c: Concept) -> bool:
    for s in subconcepts(c):
        if isinstance(s, (Bot, Not, Or, Forall)):
            return False
        if isinstance(s, Exists) and s.role.inverted:
            return False
    return True


def _el_reason(c: Concept) -> str:
    for s in subconcepts(c):
        if isinstance(s, Bot):
            return "uses Bot"
        if isinstance(s, Not):
            return "uses negation"
        if isinstance(s, Or):
            return "uses disjunction"
        if isinstance(s, Forall):
            return "uses universal restriction"
        if isinstance(s, Exists) and s.role.inverted:
            return "uses an inverse role"
    return ""


def is_basic(c: Concept) -> bool:
    """DL-Lite basic concept: name, Top, Bot or an unqualified existential."""
    if isinstance(c, (Name, Top, Bot)):
        return True
    return isinstance(c, Exists) and isinstance(c.filler, Top)


def _dllite_reason(ax: Axiom, with_h: bool) -> str:
    if isinstance(ax, RSub):
        return "" if with_h else "role inclusions need the H extension"
    pairs = ax.expand() if isinstance(ax, Equiv) else (ax,)
    for sub in pairs:
        lhs, rhs = sub.lhs, sub.rhs
        if isinstance(rhs, Not) and is_basic(rhs.arg) and is_basic(lhs):
            continue
        if isinstance(rhs, Bot) and isinstance(lhs, And) and len(lhs.args) == 2 and all(map(is_basic, lhs.args)):
            continue
        if is_basic(lhs) and is_basic(rhs):
            continue
        return "not of the form B1 ⊑ B2 or B1 ⊓ B2 ⊑ Bot"
    return ""


def horn_violations(ax: Axiom) -> list[str]:
    """Polarity check: no positive disjunction, no negative negation or ∀."""
    if isinstance(ax, RSub):
        return []
    found: list[str] = []

    def walk(c: Concept, positive: bool):
        if isinstance(c, Or):
            if positive:
                found.append("disjunction occurs positively")
            for a in c.args:
                walk(a, positive)
        elif isinstance(c, And):
            for a in c.args:
                walk(a, positive)
        elif isinstance(c, Not):
            if not positive:
                found.append("negation occurs negatively")
            walk(c.arg, not positive)
        elif isinstance(c, Forall):
            if not positive:
                found.append("universal restriction occurs negatively")
            walk(c.filler, positive)
        elif isinstance(c, Exists):
            walk(c.filler, positive)

    if isinstance(ax, Equiv):
        for side in (ax.lhs, ax.rhs):
            walk(side, True)
            walk(side, False)
    else:
        walk(ax.lhs, False)
        walk(ax.rhs, True)
    return found


def acyclic_violations(axioms: Iterable[Axiom]) -> list[tuple[Axiom, str]]:
    from .depend import definitorial_view

    out: list[tuple[Axiom, str]] = []
    defs: dict[str, Axiom] = {}
    uses: dict[str, set[str]] = {}
    for ax in axioms:
        view = definitorial_view(ax)
        if view is None:
            out.append((ax, "not a concept definition or primitive inclusion"))
            continue
        name, _, rhs = view
        if name in defs:
            out.append((ax, f"{name} occurs twice on a left-hand side"))
            continue
        defs[name] = ax
        from .terms import sig_of

        s = sig_of(rhs)
        uses[name] = set(s.concepts)
    # cycle detection over concept-name edges
    state: dict[str, int] = {}
    cyclic: set[str] = set()

    def visit(n: str, path: list[str]):
        state[n] = 1
        path.append(n)
        for m in uses.get(n, ()):
            if state.get(m) == 1:
                cyclic.update(path[path.index(m):])
            elif m not in state:
                visit(m, path)
        path.pop()
        state[n] = 2

    for n in sorted(uses):
        if n not in state:
            visit(n, [])
    for n in sorted(cyclic):
        out.append((defs[n], f"{n} depends on itself"))
    return out


def validate_fragment(tbox: TBox, tag: Fragment | str) -> FragmentReport:
    tag = Fragment(tag)
    rep = FragmentReport(tag)
    for ax in tbox.axioms:
        reason = ""
        if tag in (Fragment.EL, Fragment.ACYCLIC_EL):
            if isinstance(ax, RSub):
                reason = "role inclusions are outside EL"
            else:
                reason = _el_reason(ax.lhs) or _el_reason(ax.rhs)
        elif tag in (Fragment.DLLITE_CORE, Fragment.DLLITE_CORE_H):
            reason = _dllite_reason(ax, tag == Fragment.DLLITE_CORE_H)
        elif tag == Fragment.HORN_ALC:
            v = horn_violations(ax)
            reason = v[0] if v else ""
        if reason:
            rep.offending.append((ax, reason))
    if tag == Fragment.ACYCLIC_EL and rep.ok:
        rep.offending.extend(acyclic_violations(tbox.axioms))
    return rep


def in_fragment(tbox: TBox, tag: Fragment | str) -> bool:
    return validate_fragment(tbox, tag).ok


def detect_fragment(tbox: TBox) -> Fragment:
    """Most specific tag among EL, DL-Lite_core, DL-Lite_core^H, Horn, ALCHI."""
    for tag in (Fragment.EL, Fragment.DLLITE_CORE, Fragment.DLLITE_CORE_H, Fragment.HORN_ALC):
        if in_fragment(tbox, tag):
            if tag == Fragment.EL and in_fragment(tbox, Fragment.ACYCLIC_EL):
                return Fragment.ACYCLIC_EL
            return tag
    return Fragment.ALCHI


HORN_FRAGMENTS = frozenset(
    {Fragment.EL, Fragment.ACYCLIC_EL, Fragment.DLLITE_CORE, Fragment.DLLITE_CORE_H, Fragment.HORN_ALC}
)


def is_horn(tbox: TBox) -> bool:
    return detect_fragment(tbox) in HORN_FRAGMENTS
