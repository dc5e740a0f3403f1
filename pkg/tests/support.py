"""Random instance generators and brute-force oracles used across the suite.

Every oracle here is deliberately naive: exhaustive enumeration or direct
evaluation of the semantics, sharing no code with the engines under test
beyond the data model and the concept evaluator.
"""
from __future__ import annotations

import random
from itertools import combinations
from typing import Iterable, Optional

from insep.interp import FiniteInterpretation, InterpretationBuilder, evaluate, satisfies
from insep.syntax import (
    ABox, And, Bot, Concept, ConceptAssertion, Equiv, Exists, KB, Name, Not, Role,
    RoleAssertion, RSub, Signature, Sub, TBox, Top, concept_size, conj,
)

# ------------------------------------------------------------------ concepts


def el_concept(rng: random.Random, names, roles, depth: int) -> Concept:
    """A random EL concept of existential depth at most ``depth``."""
    roll = rng.random()
    if depth <= 0 or roll < 0.35:
        return Name(rng.choice(names)) if rng.random() < 0.9 else Top()
    if roll < 0.7 or len(names) < 2:
        return Exists(Role(rng.choice(roles)), el_concept(rng, names, roles, depth - 1))
    k = rng.randint(2, 3)
    return conj(*(el_concept(rng, names, roles, depth - 1) for _ in range(k)))


def enumerate_el(names, roles, max_size: int) -> list[Concept]:
    """All EL concepts over the given names and roles up to ``max_size`` nodes."""
    by: dict[int, set] = {1: {Top(), *(Name(n) for n in names)}}
    for s in range(2, max_size + 1):
        out: set = set()
        for r in roles:
            for c in by[s - 1]:
                out.add(Exists(Role(r), c))
        for a in range(1, s - 1):
            b = s - 1 - a
            for x in by.get(a, ()):
                for y in by.get(b, ()):
                    if x != y and not isinstance(x, Top) and not isinstance(y, Top):
                        out.add(conj(x, y))
        by[s] = {c for c in out if concept_size(c) == s}
    return sorted(set().union(*by.values()), key=lambda c: (concept_size(c), str(c)))


# ------------------------------------------------------------------ ontologies


def el_tbox(rng: random.Random, names, roles, n: int, depth: int = 2) -> TBox:
    axioms = []
    for _ in range(n):
        lhs = el_concept(rng, names, roles, depth)
        rhs = el_concept(rng, names, roles, depth)
        axioms.append(Sub(lhs, rhs))
    return TBox(tuple(axioms))


def acyclic_el_tbox(rng: random.Random, names, roles, n: int, depth: int = 2) -> TBox:
    """Definitions and primitive inclusions; each name is defined in terms of later names only."""
    order = list(names)
    rng.shuffle(order)
    axioms = []
    for i, a in enumerate(order[:n]):
        later = order[i + 1:]
        if later:
            rhs = el_concept(rng, later, roles, depth)
        else:
            rhs = Exists(Role(rng.choice(roles)), Top()) if rng.random() < 0.5 else Top()
        if isinstance(rhs, Top) and rng.random() < 0.5:
            continue
        if rng.random() < 0.5:
            axioms.append(Equiv(Name(a), rhs))
        else:
            axioms.append(Sub(Name(a), rhs))
    return TBox(tuple(axioms))


def _basic(rng: random.Random, names, roles) -> Concept:
    if rng.random() < 0.5:
        return Name(rng.choice(names))
    r = Role(rng.choice(roles), rng.random() < 0.5)
    return Exists(r, Top())


def dllite_tbox(rng: random.Random, names, roles, n: int, hierarchy: bool = True,
                negation: bool = True) -> TBox:
    axioms = []
    for _ in range(n):
        roll = rng.random()
        if hierarchy and roll < 0.15:
            r1 = Role(rng.choice(roles), rng.random() < 0.3)
            r2 = Role(rng.choice(roles), rng.random() < 0.3)
            axioms.append(RSub(r1, r2))
        elif negation and roll < 0.25:
            b1, b2 = _basic(rng, names, roles), _basic(rng, names, roles)
            if rng.random() < 0.5:
                axioms.append(Sub(b1, Not(b2)))
            else:
                axioms.append(Sub(conj(b1, b2), Bot()))
        else:
            axioms.append(Sub(_basic(rng, names, roles), _basic(rng, names, roles)))
    return TBox(tuple(axioms))


def random_abox(rng: random.Random, names, roles, inds, n: int) -> ABox:
    out = []
    for _ in range(n):
        if rng.random() < 0.5:
            out.append(ConceptAssertion(rng.choice(names), rng.choice(inds)))
        else:
            out.append(RoleAssertion(rng.choice(roles), rng.choice(inds), rng.choice(inds)))
    return ABox.of(*out)


def random_interpretation(rng: random.Random, size: int, names, roles,
                          label_p: float = 0.4, edge_p: float = 0.25) -> FiniteInterpretation:
    b = InterpretationBuilder()
    for x in range(size):
        b.elem(x)
        for a in names:
            if rng.random() < label_p:
                b.label(x, a)
    for r in roles:
        for x in range(size):
            for y in range(size):
                if rng.random() < edge_p:
                    b.edge(r, x, y)
    return b.build()


# ------------------------------------------------------------------ relation oracles


def brute_greatest_relation(i1: FiniteInterpretation, i2: FiniteInterpretation,
                            sigma: Signature, zag: bool) -> frozenset:
    """Union of all Σ-(bi)simulations, by enumerating every relation.

    Pairs failing the label condition belong to no simulation, so only subsets
    of label-compatible pairs are enumerated; that is still every candidate.
    """
    def lab(i, x):
        return i.labels.get(x, frozenset()) & sigma.concepts

    def succ(i, x, r):
        return [y for (u, y) in i.role_ext.get(r, ()) if u == x]

    pairs = [(x, y) for x in sorted(i1.domain) for y in sorted(i2.domain)
             if (lab(i1, x) == lab(i2, y) if zag else lab(i1, x) <= lab(i2, y))]
    index = {p: k for k, p in enumerate(pairs)}
    reqs: list[list[int]] = []
    for x, y in pairs:
        masks = []
        for r in sorted(sigma.roles):
            ys = succ(i2, y, r)
            for x2 in succ(i1, x, r):
                masks.append(sum(1 << index[(x2, y2)] for y2 in ys if (x2, y2) in index))
            if zag:
                xs = succ(i1, x, r)
                for y2 in ys:
                    masks.append(sum(1 << index[(x2, y2)] for x2 in xs if (x2, y2) in index))
        reqs.append(masks)
    best = 0
    for rel in range(1 << len(pairs)):
        ok = True
        k = 0
        m = rel
        while m and ok:
            if m & 1:
                for need in reqs[k]:
                    if not need & rel:
                        ok = False
                        break
            m >>= 1
            k += 1
        if ok:
            best |= rel
    return frozenset(p for k, p in enumerate(pairs) if best >> k & 1)


def brute_homomorphism(src: FiniteInterpretation, dst: FiniteInterpretation,
                       sigma: Signature, fixed: Optional[dict] = None) -> bool:
    from itertools import product
    xs = sorted(src.domain, key=str)
    ys = sorted(dst.domain, key=str)
    fixed = fixed or {}
    for img in product(ys, repeat=len(xs)):
        h = dict(zip(xs, img))
        if any(h[k] != v for k, v in fixed.items()):
            continue
        if not all((src.labels.get(x, frozenset()) & sigma.concepts) <= dst.labels.get(h[x], frozenset())
                   for x in xs):
            continue
        if all((h[a], h[b]) in dst.role_ext.get(r, ()) for r in sigma.roles
               for a, b in src.role_ext.get(r, ())):
            return True
    return False


# ------------------------------------------------------------------ model sampling


class _Clash(Exception):
    pass


class _Mutable:
    def __init__(self, size: int):
        self.dom = list(range(size))
        self.labels: dict[int, set] = {x: set() for x in self.dom}
        self.edges: dict[str, set] = {}

    def freeze(self, inds: dict) -> FiniteInterpretation:
        b = InterpretationBuilder()
        for x in self.dom:
            b.elem(x)
            b.label(x, *self.labels[x])
        for r, ps in self.edges.items():
            for x, y in ps:
                b.edge(r, x, y)
        for a, x in inds.items():
            b.individual(a, x)
        return b.build()

    def add_edge(self, r: Role, x: int, y: int):
        if r.inverted:
            x, y = y, x
        self.edges.setdefault(r.name, set()).add((x, y))


def _force(rng, m: _Mutable, x: int, c: Concept):
    if isinstance(c, Top):
        return
    if isinstance(c, Name):
        m.labels[x].add(c.name)
    elif isinstance(c, And):
        for a in c.args:
            _force(rng, m, x, a)
    elif isinstance(c, Exists):
        y = rng.choice(m.dom)
        m.add_edge(c.role, x, y)
        _force(rng, m, y, c.filler)
    else:
        raise _Clash(str(c))


def sample_model(rng: random.Random, kb: KB, max_size: int = 4, noise: float = 0.15,
                 tries: int = 20) -> Optional[FiniteInterpretation]:
    """A random finite model of a Horn KB, built by random repair of a noisy start.

    Violations are fixed by adding facts only (choosing random existential
    targets inside the fixed domain), so the loop terminates; clashes with
    negation or ⊥ restart the attempt.
    """
    inds = sorted(kb.individuals())
    axioms = [s for ax in kb.tbox.axioms for s in (ax.expand() if isinstance(ax, Equiv) else (ax,))]
    names = sorted(kb.signature().concepts)
    roles = sorted(kb.signature().roles)
    for _ in range(tries):
        size = rng.randint(max(1, len(inds)), max(max_size, len(inds)))
        m = _Mutable(size)
        place = dict(zip(inds, rng.sample(m.dom, len(inds))))
        for a in kb.abox.concept_assertions:
            m.labels[place[a.ind]].add(a.concept)
        for a in kb.abox.role_assertions:
            m.edges.setdefault(a.role, set()).add((place[a.subj], place[a.obj]))
        for x in m.dom:
            for a in names:
                if rng.random() < noise:
                    m.labels[x].add(a)
        for r in roles:
            for x in m.dom:
                for y in m.dom:
                    if rng.random() < noise / 2:
                        m.edges.setdefault(r, set()).add((x, y))
        try:
            for _ in range(10_000):
                i = m.freeze(place)
                bad = None
                for ax in axioms:
                    if isinstance(ax, RSub):
                        src = _pairs(i, ax.sub) - _pairs(i, ax.sup)
                        if src:
                            bad = (ax, sorted(src)[0])
                            break
                    else:
                        off = evaluate(i, ax.lhs) - evaluate(i, ax.rhs)
                        if off:
                            bad = (ax, rng.choice(sorted(off)))
                            break
                if bad is None:
                    return i
                ax, where = bad
                if isinstance(ax, RSub):
                    m.add_edge(ax.sup, *where)
                else:
                    _force(rng, m, where, ax.rhs)
        except _Clash:
            continue
    return None


def _pairs(i: FiniteInterpretation, r: Role) -> set:
    ps = i.role_ext.get(r.name, frozenset())
    return {(y, x) for x, y in ps} if r.inverted else set(ps)


def is_model(i: FiniteInterpretation, kb: KB) -> bool:
    if not all(satisfies(i, ax) for ax in kb.tbox.axioms):
        return False
    return all(satisfies(i, a) for a in kb.abox.assertions())


# ------------------------------------------------------------------ queries


def random_cq_text(rng: random.Random, names, roles, inds, atoms: int) -> tuple[str, tuple]:
    """A random CQ in concrete syntax plus an answer tuple of individuals."""
    vs = ["x", "y", "z", "u"][: rng.randint(1, 4)]
    parts = []
    used = set()
    for _ in range(atoms):
        if rng.random() < 0.4 or not roles:
            v = rng.choice(vs)
            parts.append(f"(ca {rng.choice(names)} {v})")
            used.add(v)
        else:
            a, b = rng.choice(vs), rng.choice(vs)
            parts.append(f"(ra {rng.choice(roles)} {a} {b})")
            used.update((a, b))
    used = sorted(used)
    answer = []
    if used and inds and rng.random() < 0.5:
        answer = [rng.choice(used)]
    tup = tuple(rng.choice(sorted(inds)) for _ in answer)
    return f"(cq (answer {' '.join(answer)}) {' '.join(parts)})", tup


def cq_holds(i: FiniteInterpretation, q, tup: Iterable[str]) -> bool:
    from insep.interp import find_homomorphism
    fixed = {v: i.individuals[a] for v, a in zip(q.answer, tup)}
    return find_homomorphism(q.as_interpretation(), i, q.signature(), fixed) is not None


def subsets(xs):
    xs = list(xs)
    for k in range(len(xs) + 1):
        yield from combinations(xs, k)


# ------------------------------------------------------------------ query oracle


def prefix_query(i: FiniteInterpretation, sigma: Signature, rooted: bool = False):
    """The Σ-part of a finite interpretation as a CQ whose answer variables are its individuals.

    With ``rooted`` only the Σ-connected components that contain an individual are kept.
    Returns (CQ, answer tuple)."""
    from insep.chase import CQ
    inds = sorted(i.individuals)
    names = {}
    ind_of = {e: a for a, e in i.individuals.items()}
    k = 0
    for x in sorted(i.domain, key=str):
        if x in ind_of:
            names[x] = ind_of[x]
        else:
            names[x] = f"v{k}"
            k += 1
    roles = {(r, names[x], names[y]) for r in sigma.roles for x, y in i.role_ext.get(r, ())}
    concepts = {(a, names[x]) for a in sigma.concepts for x in i.concept_ext.get(a, ())}
    if rooted:
        keep = set(inds)
        grew = True
        while grew:
            grew = False
            for _, x, y in roles:
                if (x in keep) != (y in keep):
                    keep.update((x, y))
                    grew = True
        roles = {t for t in roles if t[1] in keep}
        concepts = {t for t in concepts if t[1] in keep}
    return CQ(tuple(inds), frozenset(concepts), frozenset(roles)), tuple(inds)


# ------------------------------------------------------------------ game instances


def existential_tbox(rng: random.Random, names, roles, n: int, hierarchy: float = 0.3) -> TBox:
    """DL-Lite TBox biased towards existential right-hand sides, so canonical models have anonymous parts."""
    def some():
        return Exists(Role(rng.choice(roles), rng.random() < 0.5), Top())

    axioms = []
    for _ in range(n):
        lhs = Name(rng.choice(names)) if rng.random() < 0.5 else some()
        rhs = some() if rng.random() < 0.7 else Name(rng.choice(names))
        axioms.append(Sub(lhs, rhs))
    if rng.random() < hierarchy:
        axioms.append(RSub(Role(rng.choice(roles), rng.random() < 0.3), Role(rng.choice(roles), rng.random() < 0.3)))
    return TBox(tuple(axioms))


def game_pair(rng: random.Random, names, roles, inds) -> tuple[KB, KB]:
    """(K1, K2) over the same individuals; K1's ABox usually extends K2's."""
    pad = ABox.of(*(ConceptAssertion("Z", x) for x in inds))
    ab2 = random_abox(rng, names, roles, inds, rng.randint(1, 3)) | pad
    ab1 = ab2 | random_abox(rng, names, roles, inds, rng.randint(0, 3)) if rng.random() < 0.7 else ab2
    return (KB(existential_tbox(rng, names, roles, rng.randint(0, 4)), ab1),
            KB(existential_tbox(rng, names, roles, rng.randint(1, 4)), ab2))


# ------------------------------------------------------------------ scale instances


def synthetic_acyclic_el(rng: random.Random, n: int, roles=("r", "s", "t"), prims: int = 40) -> TBox:
    """n axioms over N0..N{n-1}: each defines or bounds N_i with later names and primitives P*."""
    axioms = []
    for i in range(n):
        parts: list[Concept] = [Name(f"P{rng.randrange(prims)}")]
        for _ in range(rng.randint(0, 2)):
            j = rng.randint(i + 1, i + 20)
            filler = Name(f"N{j}") if j < n else Name(f"P{rng.randrange(prims)}")
            parts.append(Exists(Role(rng.choice(roles)), filler))
        rhs = conj(*parts)
        axioms.append(Equiv(Name(f"N{i}"), rhs) if rng.random() < 0.4 else Sub(Name(f"N{i}"), rhs))
    return TBox(tuple(axioms))


def perturb(rng: random.Random, t: TBox, k: int, prims: int = 40) -> TBox:
    """t with k axioms strengthened by one extra primitive conjunct."""
    axioms = list(t.axioms)
    for idx in rng.sample(range(len(axioms)), k):
        ax = axioms[idx]
        rhs = conj(ax.rhs, Name(f"P{rng.randrange(prims)}"))
        axioms[idx] = type(ax)(ax.lhs, rhs)
    return TBox(tuple(axioms))
