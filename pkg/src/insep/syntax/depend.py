"""Dependencies of concept names in TBoxes of definitorial shape."""
from __future__ import annotations

from typing import Optional

from ..errors import ShapeError
from .terms import Axiom, Concept, Equiv, Name, Sub, TBox, sig_of


def definitorial_view(ax: Axiom) -> Optional[tuple[str, str, Concept]]:
    """(A, '⊑'|'≡', C) for A ⊑ C or A ≡ C; None for any other shape."""
    if isinstance(ax, Sub) and isinstance(ax.lhs, Name):
        return ax.lhs.name, "sub", ax.rhs
    if isinstance(ax, Equiv):
        if isinstance(ax.lhs, Name):
            return ax.lhs.name, "equiv", ax.rhs
        if isinstance(ax.rhs, Name):
            return ax.rhs.name, "equiv", ax.lhs
    return None


def definitorial_axioms(tbox: TBox) -> list[tuple[str, str, Concept]]:
    out = []
    for ax in tbox.axioms:
        view = definitorial_view(ax)
        if view is None:
            raise ShapeError(f"not a concept definition or primitive inclusion: {ax}")
        out.append(view)
    return out


def lhs_names(tbox: TBox) -> set[str]:
    return {n for n, _, _ in definitorial_axioms(tbox)}


def defined_names(tbox: TBox) -> set[str]:
    return {n for n, k, _ in definitorial_axioms(tbox) if k == "equiv"}


def dependency_graph(tbox: TBox, mode: str = "all") -> dict[str, set[str]]:
    if mode not in ("all", "definitional"):
        raise ValueError(f"unknown mode {mode!r}")
    direct: dict[str, set[str]] = {}
    for name, kind, rhs in definitorial_axioms(tbox):
        if mode == "definitional" and kind != "equiv":
            continue
        s = sig_of(rhs)
        direct.setdefault(name, set()).update(s.concepts | s.roles)
    return direct


def dependencies(tbox: TBox, name: str, mode: str = "all") -> frozenset[str]:
    """Symbols X with name ≺⁺ X; mode='definitional' follows only ≡ axioms."""
    direct = dependency_graph(tbox, mode)
    seen: set[str] = set()
    todo = list(direct.get(name, ()))
    while todo:
        x = todo.pop()
        if x in seen:
            continue
        seen.add(x)
        todo.extend(direct.get(x, ()))
    return frozenset(seen)
