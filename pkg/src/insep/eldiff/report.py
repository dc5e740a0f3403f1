"""EL concept difference reports with validated example inclusions."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from ..errors import UnsupportedFragment
from ..reasoner.api import entailer_for
from ..syntax.fragments import Fragment, detect_fragment, validate_fragment
from ..syntax.terms import (
    And, Concept, Exists, Name, Signature, Sub, TBox, Top, concept_size, conj, expand_equivs,
    sig_of,
)
from .canon import root_of
from .lhs import distinguishing_concept, lhs_simulation
from .rhs import rhs_detail, unfold

DEFAULT_EXAMPLE_NODES = 200


@dataclass
class DiffReport:
    lhs_witnesses: frozenset[str]
    rhs_witnesses: Optional[frozenset[str]]
    inseparable: Optional[bool]
    examples: list[tuple[Sub, str]] = field(default_factory=list)
    truncated: list[tuple[str, str]] = field(default_factory=list)  # (name, side)
    mode: str = "full"
    fragments: tuple[str, str] = ("", "")

    def to_json(self) -> dict:
        return {
            "inseparable": self.inseparable,
            "lhsWitnesses": sorted(self.lhs_witnesses),
            "rhsWitnesses": None if self.rhs_witnesses is None else sorted(self.rhs_witnesses),
            "examples": [{"axiom": str(ax), "side": side} for ax, side in self.examples],
            "truncated": [{"name": n, "side": s} for n, s in self.truncated],
            "variant": self.mode,
            "fragment": {"t1": self.fragments[0], "t2": self.fragments[1]},
        }


def _require_el(t: TBox, which: str):
    rep = validate_fragment(t, Fragment.EL)
    if not rep.ok:
        ax, why = rep.offending[0]
        raise UnsupportedFragment(f"{which} is not EL ({why}): {ax}")


def _parts(c: Concept) -> list[Concept]:
    if isinstance(c, Top):
        return []
    return list(c.args) if isinstance(c, And) else [c]


def minimize(c: Concept, ok: Callable[[Concept], bool]) -> Concept:
    """Greedily drop conjuncts (top-down) while ok keeps holding."""
    parts = _parts(c)
    i = 0
    while i < len(parts):
        trial = conj(*(parts[:i] + parts[i + 1:]))
        if ok(trial):
            parts.pop(i)
        else:
            i += 1
    out = []
    for k, p in enumerate(parts):
        if isinstance(p, Exists):
            def ok_inner(f, k=k, p=p):
                return ok(conj(*(out + [Exists(p.role, f)] + parts[k + 1:])))
            p = Exists(p.role, minimize(p.filler, ok_inner))
        out.append(p)
    return conj(*out)


def _lhs_examples(t1, t2, sigma, names, k, cap, sim_data):
    g1, g2, sim, reasons = sim_data
    e1, e2 = entailer_for(t1), entailer_for(t2)
    examples, truncated = [], []
    for a in sorted(names)[:None]:
        c, cut = distinguishing_concept(g1, g2, sim, reasons, root_of(a), root_of(a), sigma, cap)
        if c is None:
            truncated.append((a, "lhs"))
            continue
        lhs = Name(a)

        def ok(d, lhs=lhs):
            return e2.subsumes(lhs, d) and not e1.subsumes(lhs, d)

        if not ok(c):  # pragma: no cover - would indicate an engine bug
            raise AssertionError(f"distinguishing concept for {a} does not validate")
        c = minimize(c, ok)
        examples.append((Sub(lhs, c), "lhs"))
    return examples, truncated


def _rhs_examples(t1, t2, sigma, found, enc, cap):
    e1, e2 = entailer_for(t1), entailer_for(t2)
    keep_base = sig_of(t2).concepts
    examples, truncated = [], []
    for a, atoms in sorted(found.items()):
        keep = frozenset(keep_base | {a})
        got = None
        for beta in atoms:
            depth = 0
            while True:
                c = unfold(enc, beta, depth, keep)
                if concept_size(c) > cap:
                    break
                if e2.subsumes(c, Name(a)):
                    got = c
                    break
                depth += 1
            if got is not None:
                break
        if got is None:
            truncated.append((a, "rhs"))
            continue

        def ok(d, a=a):
            return e2.subsumes(d, Name(a)) and not e1.subsumes(d, Name(a))

        if not ok(got):  # pragma: no cover
            raise AssertionError(f"encoding example for {a} does not validate")
        examples.append((Sub(minimize(got, ok), Name(a)), "rhs"))
    return examples, truncated


def _entails_all(t1: TBox, t2: TBox) -> bool:
    e = entailer_for(t1)
    for ax in expand_equivs(t2.axioms):
        if not e.subsumes(ax.lhs, ax.rhs):
            return False
    return True


def el_diff(t1: TBox, t2: TBox, sigma: Signature, examples: int = 1,
            cap: int = DEFAULT_EXAMPLE_NODES) -> DiffReport:
    """Σ-concept difference of EL TBoxes: does T1 Σ-entail every Σ-inclusion of T2?

    ``examples`` bounds the number of example inclusions per side (0 disables).
    The right-hand side needs an acyclic T1.  Otherwise only left-hand
    witnesses are computed, and the verdict is left open unless one is found
    or T1 entails every axiom of T2.
    """
    _require_el(t1, "T1")
    _require_el(t2, "T2")
    frags = (detect_fragment(t1).value, detect_fragment(t2).value)
    sim_data = lhs_simulation(t1, t2, sigma)
    _, _, sim, _ = sim_data
    lhs = frozenset(a for a in sigma.concepts if (root_of(a), root_of(a)) not in sim)
    acyclic = validate_fragment(t1, Fragment.ACYCLIC_EL).ok
    rhs = None
    found, enc = {}, None
    mode = "full"
    if acyclic:
        enc, found = rhs_detail(t1, t2, sigma)
        rhs = frozenset(found)
    elif not lhs and _entails_all(t1, t2):
        # T1 entails T2 outright, so no Σ-inclusion can tell them apart
        rhs, mode = frozenset(), "t1-entails-t2"
    else:
        mode = "lhs-only"
    if rhs is not None:
        verdict: Optional[bool] = not lhs and not rhs
    else:
        verdict = False if lhs else None
    rep = DiffReport(lhs, rhs, verdict, mode=mode, fragments=frags)
    if examples > 0:
        ex, tr = _lhs_examples(t1, t2, sigma, sorted(lhs)[:examples], examples, cap, sim_data)
        rep.examples += ex
        rep.truncated += tr
        if found:
            sel = dict(sorted(found.items())[:examples])
            ex, tr = _rhs_examples(t1, t2, sigma, sel, enc, cap)
            rep.examples += ex
            rep.truncated += tr
    return rep


def tbox_rcq_entails_el(t1: TBox, t2: TBox, sigma: Signature) -> bool:
    """T1 Σ-rCQ entails T2 (equivalently Σ-concept entails) for acyclic EL T1."""
    rep = el_diff(t1, t2, sigma, examples=0)
    if rep.inseparable is None:
        raise UnsupportedFragment("rooted-query entailment needs an acyclic EL TBox T1")
    return rep.inseparable
