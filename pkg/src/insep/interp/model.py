"""Finite interpretations with successor indexes."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Optional

from ..syntax.terms import (
    ABox, And, Bot, Concept, Exists, Forall, Name, Not, Or, Role, Signature, Top,
)

Elem = Hashable


def elem_key(x: Elem) -> str:
    return x if isinstance(x, str) else repr(x)


@dataclass(eq=False)
class FiniteInterpretation:
    """Labeled directed multigraph; treat instances as immutable once built."""

    domain: frozenset = frozenset()
    concept_ext: Mapping[str, frozenset] = field(default_factory=dict)
    role_ext: Mapping[str, frozenset] = field(default_factory=dict)
    individuals: Mapping[str, Elem] = field(default_factory=dict)

    def __post_init__(self):
        self.domain = frozenset(self.domain)
        self.concept_ext = {k: frozenset(v) for k, v in self.concept_ext.items() if v}
        self.role_ext = {k: frozenset(v) for k, v in self.role_ext.items() if v}
        self.individuals = dict(self.individuals)
        for k, v in self.concept_ext.items():
            if not v <= self.domain:
                raise ValueError(f"extension of {k} leaves the domain")
        for k, v in self.role_ext.items():
            for x, y in v:
                if x not in self.domain or y not in self.domain:
                    raise ValueError(f"edge of {k} leaves the domain")
        vals = list(self.individuals.values())
        if len(set(vals)) != len(vals):
            raise ValueError("individual names must denote distinct elements")
        if not set(vals) <= self.domain:
            raise ValueError("individual outside the domain")

    # -- indexes
    @cached_property
    def labels(self) -> dict[Elem, frozenset[str]]:
        out: dict[Elem, set[str]] = {x: set() for x in self.domain}
        for a, ext in self.concept_ext.items():
            for x in ext:
                out[x].add(a)
        return {x: frozenset(v) for x, v in out.items()}

    @cached_property
    def _succ(self) -> dict[Role, dict[Elem, tuple]]:
        out: dict[Role, dict] = {}
        for r, pairs in self.role_ext.items():
            fwd: dict = defaultdict(list)
            bwd: dict = defaultdict(list)
            for x, y in pairs:
                fwd[x].append(y)
                bwd[y].append(x)
            out[Role(r)] = {k: tuple(v) for k, v in fwd.items()}
            out[Role(r, True)] = {k: tuple(v) for k, v in bwd.items()}
        return out

    def succ(self, x: Elem, role: Role | str) -> tuple:
        if isinstance(role, str):
            role = Role(role)
        return self._succ.get(role, {}).get(x, ())

    def out_edges(self, x: Elem, roles: Optional[Iterable[str]] = None, inverse: bool = False):
        """Yield (Role, y) for every edge leaving x (optionally including inverse traversals)."""
        names = self.role_ext.keys() if roles is None else [r for r in roles if r in self.role_ext]
        for r in names:
            for y in self.succ(x, Role(r)):
                yield Role(r), y
            if inverse:
                for y in self.succ(x, Role(r, True)):
                    yield Role(r, True), y

    def ext(self, c: Concept) -> frozenset:
        return evaluate(self, c)

    def signature(self) -> Signature:
        return Signature(frozenset(self.concept_ext), frozenset(self.role_ext))

    def edge_count(self) -> int:
        return sum(len(v) for v in self.role_ext.values())

    def restrict(self, elems: Iterable[Elem]) -> "FiniteInterpretation":
        keep = frozenset(elems)
        return FiniteInterpretation(
            keep,
            {a: v & keep for a, v in self.concept_ext.items()},
            {r: frozenset(p for p in v if p[0] in keep and p[1] in keep) for r, v in self.role_ext.items()},
            {a: x for a, x in self.individuals.items() if x in keep},
        )

    def __repr__(self) -> str:
        return (f"FiniteInterpretation(|Δ|={len(self.domain)}, "
                f"edges={self.edge_count()}, individuals={sorted(self.individuals)})")


class InterpretationBuilder:
    """Mutable helper for assembling interpretations."""

    def __init__(self):
        self.domain: set = set()
        self.cext: dict[str, set] = defaultdict(set)
        self.rext: dict[str, set] = defaultdict(set)
        self.inds: dict[str, Elem] = {}

    def elem(self, x: Elem) -> Elem:
        self.domain.add(x)
        return x

    def label(self, x: Elem, *names: str):
        self.domain.add(x)
        for n in names:
            if n != "Top":
                self.cext[n].add(x)

    def edge(self, role: Role | str, x: Elem, y: Elem):
        self.domain.update((x, y))
        if isinstance(role, Role):
            if role.inverted:
                x, y = y, x
            role = role.name
        self.rext[role].add((x, y))

    def individual(self, name: str, x: Elem):
        self.domain.add(x)
        self.inds[name] = x

    def build(self) -> FiniteInterpretation:
        return FiniteInterpretation(frozenset(self.domain), dict(self.cext), dict(self.rext), dict(self.inds))


def from_abox(abox: ABox) -> FiniteInterpretation:
    """The ABox read as an interpretation (individuals denote themselves)."""
    b = InterpretationBuilder()
    for a in abox.individuals():
        b.individual(a, a)
    for ca in abox.concept_assertions:
        b.label(ca.ind, ca.concept)
    for ra in abox.role_assertions:
        b.edge(ra.role, ra.subj, ra.obj)
    return b.build()


def evaluate(i: FiniteInterpretation, c: Concept) -> frozenset:
    """Extension of c in i, bottom-up over the finite domain."""
    if isinstance(c, Top):
        return i.domain
    if isinstance(c, Bot):
        return frozenset()
    if isinstance(c, Name):
        return i.concept_ext.get(c.name, frozenset())
    if isinstance(c, Not):
        return i.domain - evaluate(i, c.arg)
    if isinstance(c, And):
        out = i.domain
        for a in c.args:
            out = out & evaluate(i, a)
        return out
    if isinstance(c, Or):
        out = frozenset()
        for a in c.args:
            out = out | evaluate(i, a)
        return out
    if isinstance(c, Exists):
        f = evaluate(i, c.filler)
        return frozenset(x for x in i.domain if any(y in f for y in i.succ(x, c.role)))
    if isinstance(c, Forall):
        f = evaluate(i, c.filler)
        return frozenset(x for x in i.domain if all(y in f for y in i.succ(x, c.role)))
    raise TypeError(c)
