"""Safety of acyclic EL TBoxes for a signature (model inseparability from ∅)."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Optional

from ..errors import UnsupportedFragment
from ..interp.model import FiniteInterpretation
from ..interp.semantics import satisfies
from ..syntax.depend import defined_names, dependencies, lhs_names
from ..syntax.fragments import Fragment, validate_fragment
from ..syntax.terms import Signature, TBox, sig_of


def direct_dependency(t: TBox, sigma: Signature) -> frozenset[str]:
    sym = sigma.symbols()
    return frozenset(a for a in sorted(lhs_names(t) & sigma.concepts)
                     if dependencies(t, a, "all") & sym)


def indirect_dependency(t: TBox, sigma: Signature) -> frozenset[tuple[str, frozenset[str]]]:
    """(A, inducing names) for each defined Σ-name with an indirect Σ-dependency."""
    lhs = lhs_names(t)
    defs = defined_names(t)
    out = set()
    for a in sorted(defs & sigma.concepts):
        need = dependencies(t, a, "definitional") - defs
        pool = sorted((lhs & sigma.concepts) - {a})
        dep = {b: dependencies(t, b, "all") for b in pool}
        covered = set().union(*dep.values()) if dep else set()
        if not need <= covered:
            continue
        used = [b for b in pool if dep[b] & need]
        # drop names whose contribution is covered by the others
        for b in list(used):
            rest = set().union(*(dep[c] for c in used if c != b)) if len(used) > 1 else set()
            if need <= rest:
                used.remove(b)
        out.add((a, frozenset(used)))
    return frozenset(out)


@dataclass
class SafetyReport:
    safe: bool
    direct_witnesses: frozenset[str]
    indirect_witnesses: frozenset[tuple[str, frozenset[str]]]
    countermodel: Optional[FiniteInterpretation] = None
    countermodel_note: str = ""

    def to_json(self) -> dict:
        from ..interp.serialize import print_interpretation
        return {
            "safe": self.safe,
            "directWitnesses": sorted(self.direct_witnesses),
            "indirectWitnesses": [{"name": a, "inducedBy": sorted(s)}
                                  for a, s in sorted(self.indirect_witnesses, key=lambda p: p[0])],
            "countermodel": None if self.countermodel is None
            else print_interpretation(self.countermodel),
            "countermodelNote": self.countermodel_note,
            "variant": "dependencies",
            "fragment": Fragment.ACYCLIC_EL.value,
        }


def _subsets(n: int) -> list[frozenset[int]]:
    return [frozenset(k for k in range(n) if m >> k & 1) for m in range(1 << n)]


def _interpretations(concepts, roles, n) -> Iterator[tuple[dict, dict]]:
    dom = list(range(n))
    pairs = [(x, y) for x in dom for y in dom]
    sets = _subsets(n)
    rels = [frozenset(p for k, p in enumerate(pairs) if m >> k & 1) for m in range(1 << len(pairs))]
    for cv in product(sets, repeat=len(concepts)):
        for rv in product(rels, repeat=len(roles)):
            yield dict(zip(concepts, cv)), dict(zip(roles, rv))


def has_extension(t: TBox, n: int, cext: dict, rext: dict, free_c, free_r,
                  budget: list[int]) -> Optional[bool]:
    """Can the Σ-part (cext, rext) on domain n be extended to a model of t? None if over budget."""
    combos = (1 << (n * len(free_c))) * (1 << (n * n * len(free_r)))
    if combos > budget[0]:
        return None
    budget[0] -= combos
    for fc, fr in _interpretations(free_c, free_r, n):
        i = FiniteInterpretation(frozenset(range(n)), {**cext, **fc}, {**rext, **fr})
        if satisfies(i, t):
            return True
    return False


def find_countermodel(t: TBox, sigma: Signature, max_size: int = 3,
                      budget: int = 200_000) -> tuple[Optional[FiniteInterpretation], str]:
    """A Σ-interpretation (domain ≤ max_size) with no extension to a model of t."""
    st = sig_of(t)
    sc = sorted(st.concepts & sigma.concepts)
    sr = sorted(st.roles & sigma.roles)
    fc = sorted(st.concepts - sigma.concepts)
    fr = sorted(st.roles - sigma.roles)
    left = [budget]
    for n in range(1, max_size + 1):
        for cext, rext in _interpretations(sc, sr, n):
            got = has_extension(t, n, cext, rext, fc, fr, left)
            if got is None:
                return None, f"search budget exhausted at domain size {n}"
            if not got:
                return FiniteInterpretation(frozenset(range(n)), cext, rext), ""
    return None, f"no countermodel with at most {max_size} elements"


def model_insep_empty(t: TBox, sigma: Signature, countermodel: bool = True) -> SafetyReport:
    """Is t Σ-model inseparable from the empty TBox (safe for Σ)?"""
    rep = validate_fragment(t, Fragment.ACYCLIC_EL)
    if not rep.ok:
        ax, why = rep.offending[0]
        raise UnsupportedFragment(f"safety needs an acyclic EL TBox ({why}): {ax}")
    d = direct_dependency(t, sigma)
    ind = indirect_dependency(t, sigma)
    out = SafetyReport(not d and not ind, d, ind)
    if not out.safe and countermodel:
        out.countermodel, out.countermodel_note = find_countermodel(t, sigma)
    return out
