"""Conjunctive queries and certain answers over Horn KBs."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import count
from typing import Iterable, Optional, Sequence

from ..errors import InconsistentKB, ParseError
from ..interp.homomorphism import find_homomorphism
from ..interp.model import FiniteInterpretation, InterpretationBuilder
from ..syntax.reader import Atom, SList, read_sexprs
from ..syntax.terms import And, Concept, Exists, Name, Signature, Top
from .structure import GeneratingStructure, build_generating_structure, unravel


@dataclass(frozen=True)
class CQ:
    """∃ non-answer variables . conjunction of A(x) and r(x, y) atoms."""

    answer: tuple[str, ...] = ()
    concept_atoms: frozenset = frozenset()  # (A, x)
    role_atoms: frozenset = frozenset()  # (r, x, y)

    def __post_init__(self):
        object.__setattr__(self, "concept_atoms", frozenset(self.concept_atoms))
        object.__setattr__(self, "role_atoms", frozenset(self.role_atoms))

    def variables(self) -> frozenset[str]:
        vs = set(self.answer)
        vs.update(x for _, x in self.concept_atoms)
        for _, x, y in self.role_atoms:
            vs.update((x, y))
        return frozenset(vs)

    def __len__(self) -> int:
        return len(self.concept_atoms) + len(self.role_atoms)

    def signature(self) -> Signature:
        return Signature(frozenset(a for a, _ in self.concept_atoms),
                         frozenset(r for r, _, _ in self.role_atoms))

    def as_interpretation(self) -> FiniteInterpretation:
        b = InterpretationBuilder()
        for v in self.variables():
            b.elem(v)
        for a, x in self.concept_atoms:
            b.label(x, a)
        for r, x, y in self.role_atoms:
            b.edge(r, x, y)
        return b.build()

    def components(self) -> list[frozenset[str]]:
        parent = {v: v for v in self.variables()}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for _, x, y in self.role_atoms:
            parent[find(x)] = find(y)
        groups: dict = {}
        for v in parent:
            groups.setdefault(find(v), set()).add(v)
        return sorted((frozenset(g) for g in groups.values()), key=lambda g: sorted(g))

    def restrict(self, vs: frozenset[str]) -> "CQ":
        return CQ(tuple(v for v in self.answer if v in vs),
                  frozenset(a for a in self.concept_atoms if a[1] in vs),
                  frozenset(a for a in self.role_atoms if a[1] in vs and a[2] in vs))

    def __str__(self) -> str:
        parts = ["(cq", "(answer" + "".join(f" {v}" for v in self.answer) + ")"]
        parts += [f"(ca {a} {x})" for a, x in sorted(self.concept_atoms)]
        parts += [f"(ra {r} {x} {y})" for r, x, y in sorted(self.role_atoms)]
        return " ".join(parts) + ")"


def parse_cq(text: str) -> CQ:
    forms = read_sexprs(text)
    if len(forms) != 1 or not isinstance(forms[0], SList):
        raise ParseError("expected a single (cq ...) form")
    items = forms[0].items
    if not items or not isinstance(items[0], Atom) or items[0].text != "cq":
        raise ParseError("expected (cq ...)", forms[0].line, forms[0].col)
    answer: list[str] = []
    cas, ras = set(), set()
    for it in items[1:]:
        if not isinstance(it, SList) or not it.items or not all(isinstance(x, Atom) for x in it.items):
            raise ParseError("malformed query atom", it.line, it.col)
        head, *args = [x.text for x in it.items]
        if head == "answer":
            answer = args
        elif head == "ca" and len(args) == 2:
            cas.add((args[0], args[1]))
        elif head == "ra" and len(args) == 3:
            ras.add((args[0], args[1], args[2]))
        else:
            raise ParseError(f"unknown query atom '{head}'", it.line, it.col)
    return CQ(tuple(answer), frozenset(cas), frozenset(ras))


def concept_to_cq(c: Concept, var: str = "x") -> CQ:
    """Tree query of a positive concept with answer variable ``var``."""
    cas, ras = set(), set()
    fresh = count(1)

    def walk(d: Concept, v: str):
        if isinstance(d, Top):
            return
        if isinstance(d, Name):
            cas.add((d.name, v))
        elif isinstance(d, And):
            for a in d.args:
                walk(a, v)
        elif isinstance(d, Exists):
            y = f"y{next(fresh)}"
            ras.add((d.role.name, y, v) if d.role.inverted else (d.role.name, v, y))
            walk(d.filler, y)
        else:
            raise ValueError(f"only positive concepts become queries: {d}")

    walk(c, var)
    q = CQ((var,), frozenset(cas), frozenset(ras))
    if var not in q.variables():
        q = CQ((var,), q.concept_atoms | set(), q.role_atoms)
    return q


@dataclass
class AnswerReport:
    answer: bool
    inconsistent: bool = False


def _reach_depth(q: CQ, sources) -> int:
    """Largest undirected distance from the sources (from every variable when none)."""
    adj: dict = {v: set() for v in q.variables()}
    for _, x, y in q.role_atoms:
        adj[x].add(y)
        adj[y].add(x)

    def ecc(starts) -> int:
        dist = {v: 0 for v in starts}
        todo = list(starts)
        for v in todo:
            for u in adj[v]:
                if u not in dist:
                    dist[u] = dist[v] + 1
                    todo.append(u)
        return max(dist.values(), default=0)

    if sources:
        return ecc(list(sources))
    return max((ecc([v]) for v in adj), default=0)


def _component_maps(g: GeneratingStructure, q: CQ, fixed: dict, cache: dict) -> bool:
    # a connected image lies within this distance of an individual (or of its topmost witness)
    depth = _reach_depth(q, fixed)
    sigma = q.signature()
    src = q.as_interpretation()
    key = ("abox", depth)
    if key not in cache:
        cache[key] = unravel(g, depth).interpretation
    if find_homomorphism(src, cache[key], sigma, fixed) is not None:
        return True
    if fixed:
        return False
    for w in sorted(g.witnesses):
        k = ("w", w, depth)
        if k not in cache:
            cache[k] = unravel(g, depth, roots=[w], include_abox=False).interpretation
        if find_homomorphism(src, cache[k], sigma) is not None:
            return True
    return False


def answer_in_structure(g: GeneratingStructure, q: CQ, tup: Sequence[str],
                        cache: Optional[dict] = None) -> bool:
    if len(tup) != len(q.answer):
        raise ValueError("answer tuple has the wrong arity")
    binding = dict(zip(q.answer, tup))
    for v, a in binding.items():
        if a not in g.abox_elements:
            return False
    cache = {} if cache is None else cache
    for comp in q.components():
        sub = q.restrict(comp)
        fixed = {v: binding[v] for v in comp if v in binding}
        if not _component_maps(g, sub, fixed, cache):
            return False
    return True


def certain_answer(kb, cq: CQ | Concept, tup: Sequence[str] = ()) -> bool:
    """Is tup a certain answer to cq over kb?  Inconsistent KBs answer everything."""
    return certain_answer_report(kb, cq, tup).answer


def certain_answer_report(kb, cq: CQ | Concept, tup: Sequence[str] = ()) -> AnswerReport:
    if isinstance(cq, Concept):
        cq = concept_to_cq(cq)
    tup = tuple(tup)
    if not cq.variables() and not tup:
        return AnswerReport(True)
    try:
        g = build_generating_structure(kb)
    except InconsistentKB:
        return AnswerReport(True, inconsistent=True)
    return AnswerReport(answer_in_structure(g, cq, tup))
