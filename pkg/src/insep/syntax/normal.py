"""Simplification and normal forms.

``HornNF`` is the flat rule format the saturation engine consumes:

    A1 ⊓ … ⊓ An ⊑ B      (B may be Bot; Top is always present in types)
    A ⊑ ∃R.B    A ⊑ ∀R.B    ∃R.A ⊑ B    R ⊑ S

``normalize_el`` renders the same flattening as EL axioms with binary
conjunctions, which is the textbook EL normal form.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from ..errors import UnsupportedFragment
from .fragments import Fragment, validate_fragment
from .terms import (
    And, Axiom, BOT, BOT_NAME, Bot, Concept, Equiv, Exists, Forall, Name, Not,
    Or, RSub, Role, Sub, TBox, TOP, TOP_NAME, Top, conj, disj, sig_of,
)


def simplify(c: Concept) -> Concept:
    """Propagate Top/Bot bottom-up (⊥⊓C→⊥, ∃r.⊥→⊥, ∀r.⊤→⊤, ¬¬C→C, …)."""
    if isinstance(c, And):
        args = [simplify(a) for a in c.args]
        if any(isinstance(a, Bot) for a in args):
            return BOT
        return conj(*args)
    if isinstance(c, Or):
        args = [simplify(a) for a in c.args]
        if any(isinstance(a, Top) for a in args):
            return TOP
        return disj(*args)
    if isinstance(c, Not):
        a = simplify(c.arg)
        if isinstance(a, Top):
            return BOT
        if isinstance(a, Bot):
            return TOP
        if isinstance(a, Not):
            return a.arg
        return Not(a)
    if isinstance(c, Exists):
        f = simplify(c.filler)
        return BOT if isinstance(f, Bot) else Exists(c.role, f)
    if isinstance(c, Forall):
        f = simplify(c.filler)
        return TOP if isinstance(f, Top) else Forall(c.role, f)
    return c


@dataclass
class HornNF:
    conj: list[tuple[frozenset[str], str]] = field(default_factory=list)
    some: list[tuple[str, Role, str]] = field(default_factory=list)
    only: list[tuple[str, Role, str]] = field(default_factory=list)
    some_lhs: list[tuple[Role, str, str]] = field(default_factory=list)
    rsub: list[tuple[Role, Role]] = field(default_factory=list)
    fresh: dict[str, Concept] = field(default_factory=dict)

    def names(self) -> set[str]:
        out: set[str] = set()
        for lhs, rhs in self.conj:
            out.update(lhs)
            out.add(rhs)
        for a, _, b in self.some + self.only:
            out.update((a, b))
        for _, a, b in self.some_lhs:
            out.update((a, b))
        out.discard(TOP_NAME)
        out.discard(BOT_NAME)
        return out

    def roles(self) -> set[str]:
        out = {r.name for _, r, _ in self.some + self.only}
        out |= {r.name for r, _, _ in self.some_lhs}
        for r, s in self.rsub:
            out.update((r.name, s.name))
        return out

    def extend(self, other: "HornNF") -> "HornNF":
        return HornNF(
            self.conj + other.conj,
            self.some + other.some,
            self.only + other.only,
            self.some_lhs + other.some_lhs,
            self.rsub + other.rsub,
            {**self.fresh, **other.fresh},
        )


class Normalizer:
    """Stateful flattener; fresh names avoid every name in ``taken``."""

    def __init__(self, taken: Iterable[str] = (), prefix: str = "_X"):
        self.taken = set(taken)
        self.prefix = prefix
        self.counter = 0
        self.nf = HornNF()
        self._lhs_cache: dict[Concept, str] = {}
        self._rhs_cache: dict[Concept, str] = {}

    def fresh(self, origin: Concept) -> str:
        while True:
            self.counter += 1
            n = f"{self.prefix}{self.counter}"
            if n not in self.taken:
                self.taken.add(n)
                self.nf.fresh[n] = origin
                return n

    # -- left-hand sides: return a name set whose conjunction is implied by c
    def lhs_names(self, c: Concept) -> Optional[frozenset[str]]:
        if isinstance(c, Top):
            return frozenset({TOP_NAME})
        if isinstance(c, Bot):
            return None
        if isinstance(c, Name):
            return frozenset({c.name})
        if isinstance(c, And):
            out: set[str] = set()
            for a in c.args:
                s = self.lhs_names(a)
                if s is None:
                    return None
                out |= s
            if len(out) > 1:
                out.discard(TOP_NAME)
            return frozenset(out)
        if isinstance(c, Or):
            if c in self._lhs_cache:
                return frozenset({self._lhs_cache[c]})
            z = self.fresh(c)
            self._lhs_cache[c] = z
            for d in c.args:
                s = self.lhs_names(d)
                if s is not None:
                    self.nf.conj.append((s, z))
            return frozenset({z})
        if isinstance(c, Exists):
            if c in self._lhs_cache:
                return frozenset({self._lhs_cache[c]})
            s = self.lhs_names(c.filler)
            if s is None:
                return None
            filler = self._single_lhs(s, c.filler)
            z = self.fresh(c)
            self._lhs_cache[c] = z
            self.nf.some_lhs.append((c.role, filler, z))
            return frozenset({z})
        raise UnsupportedFragment(f"{type(c).__name__} occurs negatively: {c}")

    def _single_lhs(self, names: frozenset[str], origin: Concept) -> str:
        if len(names) == 1:
            return next(iter(names))
        if origin in self._lhs_cache:
            return self._lhs_cache[origin]
        y = self.fresh(origin)
        self._lhs_cache[origin] = y
        self.nf.conj.append((names, y))
        return y

    def _single_rhs_lhs(self, names: frozenset[str]) -> str:
        if len(names) == 1:
            return next(iter(names))
        origin = conj(*(Name(n) for n in sorted(names) if n != TOP_NAME))
        return self._single_lhs(names, origin)

    # -- right-hand sides: add rules making names ⊑ c
    def rhs(self, names: frozenset[str], c: Concept):
        if isinstance(c, Top):
            return
        if isinstance(c, Bot):
            self.nf.conj.append((names, BOT_NAME))
        elif isinstance(c, Name):
            self.nf.conj.append((names, c.name))
        elif isinstance(c, And):
            for a in c.args:
                self.rhs(names, a)
        elif isinstance(c, (Exists, Forall)):
            if isinstance(c, Exists) and isinstance(c.filler, Bot):
                self.nf.conj.append((names, BOT_NAME))
                return
            if isinstance(c, Forall) and isinstance(c.filler, Top):
                return
            filler = self._rhs_name(c.filler)
            a = self._single_rhs_lhs(names)
            (self.nf.some if isinstance(c, Exists) else self.nf.only).append((a, c.role, filler))
        elif isinstance(c, Not):
            s = self.lhs_names(c.arg)
            if s is None:
                return
            both = set(names) | set(s)
            if len(both) > 1:
                both.discard(TOP_NAME)
            self.nf.conj.append((frozenset(both), BOT_NAME))
        elif isinstance(c, Or):
            raise UnsupportedFragment(f"disjunction occurs positively: {c}")
        else:  # pragma: no cover
            raise TypeError(c)

    def _rhs_name(self, c: Concept) -> str:
        if isinstance(c, Top):
            return TOP_NAME
        if isinstance(c, Bot):
            return BOT_NAME
        if isinstance(c, Name):
            return c.name
        if c in self._rhs_cache:
            return self._rhs_cache[c]
        x = self.fresh(c)
        self._rhs_cache[c] = x
        self.rhs(frozenset({x}), c)
        return x

    def add(self, ax: Axiom):
        if isinstance(ax, RSub):
            self.nf.rsub.append((ax.sub, ax.sup))
            return
        for sub in ax.expand() if isinstance(ax, Equiv) else (ax,):
            lhs = simplify(sub.lhs)
            rhs = simplify(sub.rhs)
            names = self.lhs_names(lhs)
            if names is not None:
                self.rhs(names, rhs)


def normalize_horn(axioms: Iterable[Axiom], taken: Iterable[str] = (), prefix: str = "_X") -> HornNF:
    axioms = list(axioms)
    n = Normalizer(set(taken) | sig_of(axioms).symbols(), prefix)
    for ax in axioms:
        n.add(ax)
    return n.nf


def _name_or_top(n: str) -> Concept:
    return TOP if n == TOP_NAME else (BOT if n == BOT_NAME else Name(n))


def normalize_el(tbox: TBox) -> tuple[TBox, dict[str, Concept]]:
    """EL normal form with binary conjunctions and the fresh-name origin map."""
    rep = validate_fragment(tbox, Fragment.EL)
    if not rep.ok:
        ax, why = rep.offending[0]
        raise UnsupportedFragment(f"not EL ({why}): {ax}")
    norm = Normalizer(sig_of(tbox).symbols())
    for ax in tbox.axioms:
        norm.add(ax)
    nf = norm.nf
    out: list[Axiom] = []
    for lhs, rhs in nf.conj:
        names = sorted(lhs)
        if len(names) > 1 and TOP_NAME in names:
            names.remove(TOP_NAME)
        acc = _name_or_top(names[0])
        for k, n in enumerate(names[1:], 1):
            pair = conj(acc, _name_or_top(n))
            if k == len(names) - 1:
                acc = pair
            else:
                x = norm.fresh(pair)
                out.append(Sub(pair, Name(x)))
                acc = Name(x)
        out.append(Sub(acc, _name_or_top(rhs)))
    for a, r, b in nf.some:
        out.append(Sub(_name_or_top(a), Exists(r, _name_or_top(b))))
    for r, a, b in nf.some_lhs:
        out.append(Sub(Exists(r, _name_or_top(a)), _name_or_top(b)))
    return TBox(tuple(out), Fragment.EL.value), dict(nf.fresh)
