"""Locality-based module extraction."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import UnsupportedFragment
from ..syntax.fragments import detect_fragment, is_horn
from ..syntax.terms import Signature, TBox, sig_of
from .locality import bot_local_axiom, semantic_empty_local_axiom, top_local_axiom

KINDS = {
    "bot_syntactic": bot_local_axiom,
    "empty_semantic": semantic_empty_local_axiom,
    "top_syntactic": top_local_axiom,
}


@dataclass
class ModuleResult:
    module: TBox
    iterations: int
    kind: str
    indices: list[int] = field(default_factory=list)
    trace: list[list[int]] = field(default_factory=list)  # indices added per round

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "iterations": self.iterations,
            "moduleIndices": self.indices,
            "module": [str(a) for a in self.module.axioms],
            "trace": self.trace,
        }


def _kind(kind: str) -> str:
    k = kind.replace("-", "_")
    if k not in KINDS:
        raise ValueError(f"unknown module kind {kind!r}; expected one of {sorted(KINDS)}")
    return k


def extract_module(t: TBox, sigma: Signature, kind: str = "bot_syntactic") -> ModuleResult:
    """Least M ⊆ T such that every axiom outside M is local for Σ ∪ sig(M)."""
    kind = _kind(kind)
    if kind == "empty_semantic" and not is_horn(t):
        raise UnsupportedFragment(
            f"semantic modules need a Horn TBox, got {detect_fragment(t).value}")
    local = KINDS[kind]
    chosen: set[int] = set()
    sig = sigma
    trace: list[list[int]] = []
    rounds = 0
    while True:
        rounds += 1
        added = [i for i, ax in enumerate(t.axioms) if i not in chosen and not local(ax, sig)]
        if not added:
            break
        trace.append(added)
        chosen.update(added)
        sig = sigma | sig_of([t.axioms[i] for i in sorted(chosen)])
    idx = sorted(chosen)
    return ModuleResult(TBox(tuple(t.axioms[i] for i in idx)), rounds, kind, idx, trace)


def is_depleting(t: TBox, result: ModuleResult, sigma: Signature) -> bool:
    """Remainder T∖M is local w.r.t. Σ ∪ sig(M) under the module's locality notion."""
    local = KINDS[result.kind]
    sig = sigma | sig_of(result.module)
    inside = set(result.indices)
    return all(local(ax, sig) for i, ax in enumerate(t.axioms) if i not in inside)
