"""Finite canonical models of an EL TBox for all concept names at once."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..chase.structure import GeneratingStructure, build_from_types
from ..reasoner.api import reasoner_for
from ..syntax.terms import ABox, TBox


def root_of(name: str) -> str:
    return f"^{name}"


@lru_cache(maxsize=32)
def global_structure(tbox: TBox, names: frozenset[str]) -> GeneratingStructure:
    """One generating structure holding a root ``^A`` with start {A} for each name."""
    roots = [(root_of(a), frozenset({a})) for a in sorted(names)]
    return build_from_types(reasoner_for(tbox), ABox(), "el", roots=roots)
