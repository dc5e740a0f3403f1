"""Generating structures (finite chase results) and their unravelings.

A generating structure holds the ABox individuals plus one element per
witness key, together with the ``⇝`` triples (x, R, w) saying that w is
the R-witness created for x.  Witness keys follow the fragment:

* EL: the filler concept of the requirement (``w_B``);
* DL-Lite: the required role (``w_r``, ``w_r-`` for an inverse);
* otherwise: the start set, i.e. the saturated type seed (``w1``, ``w2``, …).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Optional

from ..errors import InconsistentKB, UnsupportedFragment
from ..interp.model import FiniteInterpretation, InterpretationBuilder
from ..reasoner.api import reasoner_for
from ..reasoner.core import HornReasoner
from ..reasoner.entail import tree_abox
from ..reasoner.roles import RoleHierarchy
from ..syntax.fragments import Fragment, detect_fragment, is_el_concept
from ..syntax.normal import simplify
from ..syntax.terms import ABox, BOT_NAME, Concept, KB, Role, TBox, TOP_NAME

Triple = tuple[Hashable, Role, Hashable]


def role_label(r: Role) -> str:
    return f"{r.name}-" if r.inverted else r.name


@dataclass(eq=False)
class GeneratingStructure:
    base: FiniteInterpretation
    generating: tuple[Triple, ...]
    abox_elements: frozenset
    types: dict = field(default_factory=dict)  # element -> visible concept names
    roles: RoleHierarchy = field(default_factory=RoleHierarchy)
    keys: dict = field(default_factory=dict)  # witness -> internal key
    mode: str = "type"
    full_types: dict = field(default_factory=dict)  # element -> type with internal names

    def __post_init__(self):
        self._out: dict = {x: [] for x in self.base.domain}
        for x, r, w in self.generating:
            self._out[x].append((r, w))

    @property
    def witnesses(self) -> frozenset:
        return self.base.domain - self.abox_elements

    def out(self, x) -> list[tuple[Role, Hashable]]:
        """Generating triples leaving x as (role, witness)."""
        return self._out.get(x, [])

    def closed(self, r: Role) -> frozenset[Role]:
        return self.roles.sup(r)

    def labels(self, x) -> frozenset[str]:
        return self.types.get(x, frozenset())

    def interpretation(self) -> FiniteInterpretation:
        return self.base

    def __repr__(self) -> str:
        return (f"GeneratingStructure(individuals={len(self.abox_elements)}, "
                f"witnesses={len(self.witnesses)}, triples={len(self.generating)})")


def _witness_mode(tbox: TBox) -> str:
    frag = detect_fragment(tbox)
    if frag in (Fragment.EL, Fragment.ACYCLIC_EL):
        return "el"
    if frag in (Fragment.DLLITE_CORE, Fragment.DLLITE_CORE_H):
        return "dllite"
    if frag == Fragment.HORN_ALC:
        return "type"
    raise UnsupportedFragment(f"no generating structure for fragment {frag.value}")


class _Namer:
    def __init__(self, taken: Iterable[str]):
        self.taken = set(taken)
        self.n = 0

    def __call__(self, hint: Optional[str]) -> str:
        if hint is not None:
            name, k = hint, 1
            while name in self.taken:
                k += 1
                name = f"{hint}_{k}"
        else:
            while True:
                self.n += 1
                name = f"w{self.n}"
                if name not in self.taken:
                    break
        self.taken.add(name)
        return name


def _add_edge(b: InterpretationBuilder, roles: RoleHierarchy, r: Role, x, y):
    for s in roles.sup(r):
        b.edge(s, x, y)


def build_from_types(reasoner: HornReasoner, abox: ABox, mode: str,
                     roots: Iterable[tuple[str, frozenset]] = (),
                     extra: Optional[dict] = None) -> GeneratingStructure:
    """Generating structure over abox.

    ``roots`` adds named non-individual elements with a given start set;
    ``extra`` adds individuals (with labels) that occur in no assertion.
    """
    sat = reasoner.saturate_abox(abox, extra)
    if not sat.consistent:
        raise InconsistentKB("the knowledge base is inconsistent")
    inds = sorted(sat.types)
    b = InterpretationBuilder()
    roles = reasoner.roles
    types: dict = {}
    for a in inds:
        b.individual(a, a)
        types[a] = reasoner.visible(sat.types[a])
        b.label(a, *types[a])
    for ra in sorted(abox.role_assertions):
        _add_edge(b, roles, Role(ra.role), ra.subj, ra.obj)
    namer = _Namer(inds)
    wid: dict = {}
    keys: dict = {}
    triples: list[Triple] = []
    queue: deque = deque()
    full: dict = {a: sat.types[a] for a in inds}
    for name, start in roots:
        t = reasoner.anon_type(start)
        if BOT_NAME in t:
            raise InconsistentKB(f"{name} is unsatisfiable")
        namer.taken.add(name)
        b.elem(name)
        full[name] = t
        types[name] = reasoner.visible(t)
        b.label(name, *types[name])
        queue.append(name)
    queue.extend(inds)

    def key_of(r: Role, filler: str, ck: frozenset):
        if mode == "el":
            return ("el", filler)
        if mode == "dllite":
            return ("dl", ck, r)
        return ("t", ck)

    def hint_of(r: Role, filler: str) -> Optional[str]:
        if mode == "el":
            if filler == TOP_NAME or filler not in reasoner.fresh:
                return f"w_{filler}"
            return None
        if mode == "dllite":
            return f"w_{role_label(r)}"
        return None

    seen = set(queue)
    while queue:
        x = queue.popleft()
        for r, filler, ck, ct in reasoner.children(full[x]):
            k = key_of(r, filler, ck)
            w = wid.get(k)
            if w is None:
                if len(wid) >= reasoner.witness_cap:
                    from ..errors import ResourceCap
                    raise ResourceCap("generating structure has too many witnesses", reasoner.witness_cap)
                w = wid[k] = namer(hint_of(r, filler))
                keys[w] = k
                full[w] = ct
                types[w] = reasoner.visible(ct)
                b.label(w, *types[w])
                b.elem(w)
            triples.append((x, r, w))
            _add_edge(b, roles, r, x, w)
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return GeneratingStructure(b.build(), tuple(triples), frozenset(inds), types, roles, keys,
                               mode, full)


def build_generating_structure(kb: KB) -> GeneratingStructure:
    """Generating structure of a consistent Horn KB (raises InconsistentKB otherwise)."""
    mode = _witness_mode(kb.tbox)
    return build_from_types(reasoner_for(kb.tbox), kb.abox, mode)


def canonical_for_concept(tbox: TBox, c: Concept) -> tuple[FiniteInterpretation, str]:
    """Finite pointed model (I, root) with root ∈ D iff T ⊨ c ⊑ D for EL concepts D."""
    frag = detect_fragment(tbox)
    if frag not in (Fragment.EL, Fragment.ACYCLIC_EL):
        raise UnsupportedFragment(f"canonical pointed models need an EL TBox, got {frag.value}")
    if not is_el_concept(c):
        raise UnsupportedFragment(f"not an EL concept: {c}")
    counter = iter(range(1, 1 << 30))
    tree = tree_abox(simplify(c), "root", lambda: f"n{next(counter)}")
    g = build_from_types(reasoner_for(tbox), tree, "el", extra={"root": ()})
    return g.base, "root"


# ------------------------------------------------------------------ unraveling


@dataclass(eq=False)
class CanonicalPrefix:
    interpretation: FiniteInterpretation
    depth: int
    origin: dict  # prefix element -> generating-structure element

    def name(self, x) -> str:
        if not isinstance(x, tuple):
            return x
        parts = [x[0]] + [f"{role_label(r)}:{w}" for r, w in x[1:]]
        return "/".join(parts)


def unravel(g: GeneratingStructure, depth: int, roots: Optional[Iterable] = None,
            include_abox: bool = True) -> CanonicalPrefix:
    """Depth-bounded unraveling of the witness part of g.

    Paths are tuples (start, (R1, w1), …, (Rn, wn)); individuals keep their
    names.  ``roots`` restricts the starting points (default: all
    individuals); a witness given as a root is unraveled as a tree of its own.
    """
    b = InterpretationBuilder()
    origin: dict = {}
    if include_abox:
        for a in g.abox_elements:
            b.individual(a, a)
            b.label(a, *g.labels(a))
            origin[a] = a
        for r, pairs in g.base.role_ext.items():
            for x, y in pairs:
                if x in g.abox_elements and y in g.abox_elements:
                    b.edge(r, x, y)
    starts = sorted(g.abox_elements) if roots is None else list(roots)
    for s in starts:
        node0 = s if s in g.abox_elements else (s,)
        b.elem(node0)
        b.label(node0, *g.labels(s))
        origin[node0] = s
        frontier = [((s,), s, node0)]
        for _ in range(depth):
            nxt = []
            for path, elem, node in frontier:
                for r, w in g.out(elem):
                    child = path + ((r, w),)
                    b.elem(child)
                    b.label(child, *g.labels(w))
                    origin[child] = w
                    for sr in g.closed(r):
                        b.edge(sr, node, child)
                    nxt.append((child, w, child))
            frontier = nxt
    return CanonicalPrefix(b.build(), depth, origin)
