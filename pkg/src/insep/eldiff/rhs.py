"""Right-hand witnesses for an acyclic EL TBox T1.

For each atom β of a name's unfolded definition we encode the most
specific Σ-concept that T1 does not subsume under β as a fresh name X_β:

* X_β carries every Σ-name E with T1 ⊭ E ⊑ β, among the names that occur
  on some left-hand side of T2 (no other name can fire a rule of T2);
* if β = ∃s.F with s ∈ Σ, X_β has an s-successor X_α for each atom α of F
  and an s'-successor X_Σ for every other Σ-role s';
* otherwise X_β has an s-successor X_Σ for every Σ-role s;
* X_Σ carries all such Σ-names and an s-successor X_Σ for every Σ-role s.

A ∈ cWtn^rhs iff T2 ∪ encoding ⊨ X_β ⊑ A for some atom β of A.  The
encoding is saturated in place (see encoding_types) instead of being
handed to the reasoner as a TBox.
Primitive inclusions A ⊑ D are read as A ≡ A' ⊓ D with A' a private
primitive, whose Σ-compatible names are those not subsumed by A.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Union

from ..errors import UnsupportedFragment
from ..reasoner.api import reasoner_for
from ..syntax.depend import definitorial_axioms
from ..syntax.fragments import Fragment, validate_fragment
from ..syntax.terms import (
    BOT_NAME, TOP_NAME, And, Concept, Exists, Name, Role, Signature, Sub, TBox, Top, conj,
    expand_equivs, sig_of,
)

# atoms: ("name", N) for primitive N, ("prim", A) for the private part of A,
# ("ex", role, filler concept)
AtomT = tuple


def require_acyclic(t1: TBox):
    rep = validate_fragment(t1, Fragment.ACYCLIC_EL)
    if not rep.ok:
        ax, why = rep.offending[0]
        raise UnsupportedFragment(
            f"right-hand witnesses need an acyclic EL TBox T1 ({why}): {ax}")


class Unfolder:
    def __init__(self, t1: TBox):
        self.defs: dict[str, list[Concept]] = {}
        self.prim: set[str] = set()
        for name, kind, rhs in definitorial_axioms(t1):
            self.defs.setdefault(name, []).append(rhs)
            if kind == "sub":
                self.prim.add(name)
        self._memo: dict = {}

    def atoms_of_name(self, a: str) -> frozenset:
        if a in self._memo:
            return self._memo[a]
        if a not in self.defs:
            out = frozenset({("name", a)})
        else:
            acc = set()
            if a in self.prim:
                acc.add(("prim", a))
            for rhs in self.defs[a]:
                acc |= self.atoms(rhs)
            out = frozenset(acc)
        self._memo[a] = out
        return out

    def atoms(self, c: Concept) -> frozenset:
        if isinstance(c, Top):
            return frozenset()
        if isinstance(c, Name):
            return self.atoms_of_name(c.name)
        if isinstance(c, And):
            out = set()
            for a in c.args:
                out |= self.atoms(a)
            return frozenset(out)
        if isinstance(c, Exists):
            return frozenset({("ex", c.role, c.filler)})
        raise UnsupportedFragment(f"not an EL concept: {c}")


def atom_concept(beta: AtomT) -> Concept:
    if beta[0] in ("name", "prim"):
        return Name(beta[1])
    return Exists(beta[1], beta[2])


@dataclass
class RhsEncoding:
    sigma: Signature
    names: dict  # atom -> fresh name; key "SIGMA" for X_Σ
    labels: dict  # atom -> sorted compatible Σ-names
    succ: dict  # atom -> list of (role, atom or "SIGMA")
    atoms_of: dict  # Σ-name -> atoms
    label_names: list = field(default_factory=list)  # labels of X_Σ

    @property
    def tbox(self) -> TBox:
        """The encoding as axioms over the fresh names X_β (for inspection)."""
        xs = Name(self.names["SIGMA"])
        axioms = [Sub(xs, Name(e)) for e in self.label_names]
        axioms += [Sub(xs, Exists(Role(r), xs)) for r in sorted(self.sigma.roles)]
        for beta, labs in self.labels.items():
            x = Name(self.names[beta])
            axioms += [Sub(x, Name(e)) for e in labs]
            axioms += [Sub(x, Exists(Role(r), Name(self.names[t]))) for r, t in self.succ[beta]]
        return TBox(tuple(axioms))


class _Subsumers:
    """For each atom β, the Σ-names E with T1 ⊨ E ⊑ β, read off the T1-types of the names."""

    def __init__(self, t1: TBox, names: list[str]):
        self.r = r = reasoner_for(t1)
        types = {e: r.anon_type({e}) for e in names}
        self.bot = frozenset(e for e in names if BOT_NAME in types[e])
        self.by_name: dict[str, set] = {}
        for e, tau in types.items():
            for n in tau:
                self.by_name.setdefault(n, set()).add(e)
        # distinct (role, child type) pairs below the names, with the names owning them
        self.owners: dict[tuple[Role, frozenset], set] = {}
        for e, tau in types.items():
            if BOT_NAME in tau:
                continue
            for role, _, _, ct in r.children(tau):
                self.owners.setdefault((role, ct), set()).add(e)
        self.by_some: dict[tuple[str, str], set] = {}  # (role, filler name) -> owners
        for (role, ct), es in self.owners.items():
            for s in r.roles.sup(role):
                for n in ct:
                    self.by_some.setdefault((s.name, n), set()).update(es)
        self._holds: dict = {}

    def holds(self, tau: frozenset, c: Concept) -> bool:
        """Does the T1-element of type tau satisfy the EL concept c?"""
        if isinstance(c, Top) or BOT_NAME in tau:
            return True
        if isinstance(c, Name):
            return c.name in tau
        if isinstance(c, And):
            return all(self.holds(tau, a) for a in c.args)
        key = (tau, c)
        hit = self._holds.get(key)
        if hit is None:
            hit = self._holds[key] = any(c.role in self.r.roles.sup(role) and self.holds(ct, c.filler)
                                         for role, _, _, ct in self.r.children(tau))
        return hit

    def of(self, beta: AtomT) -> set:
        if beta[0] in ("name", "prim"):
            return self.by_name.get(beta[1], set()) | self.bot
        role, filler = beta[1], beta[2]
        if isinstance(filler, (Name, Top)) and not role.inverted:
            key = (role.name, filler.name if isinstance(filler, Name) else TOP_NAME)
            return self.by_some.get(key, set()) | self.bot
        out = set(self.bot)
        for (r, ct), es in self.owners.items():
            if role in self.r.roles.sup(r) and self.holds(ct, filler):
                out |= es
        return out


def build_encoding(t1: TBox, t2: TBox, sigma: Signature) -> RhsEncoding:
    require_acyclic(t1)
    unf = Unfolder(t1)
    sig_names = sorted(sigma.concepts)
    trigger = sig_of(*(ax.lhs for ax in expand_equivs(t2.axioms))).concepts
    label_names = [e for e in sig_names if e in trigger]
    subs = _Subsumers(t1, label_names)
    sig_roles = sorted(sigma.roles)
    taken = set(sig_of(t1, t2, sigma).symbols())
    names: dict = {}

    def fresh(key, hint: str) -> str:
        n, k = hint, 0
        while n in taken:
            k += 1
            n = f"{hint}{k}"
        taken.add(n)
        names[key] = n
        return n

    fresh("SIGMA", "_XS")
    labels: dict = {}
    succ: dict = {}
    atoms_of = {a: unf.atoms_of_name(a) for a in sig_names}
    todo = [b for a in sig_names for b in sorted(atoms_of[a], key=repr)]
    k = 0
    while todo:
        beta = todo.pop()
        if beta in labels:
            continue
        k += 1
        fresh(beta, f"_XB{k}_")
        below = subs.of(beta)
        labels[beta] = [e for e in label_names if e not in below]
        out = []
        if beta[0] == "ex" and not beta[1].inverted and beta[1].name in sigma.roles:
            s = beta[1].name
            for alpha in sorted(unf.atoms(beta[2]), key=repr):
                out.append((s, alpha))
                todo.append(alpha)
            out += [(r, "SIGMA") for r in sig_roles if r != s]
        else:
            out = [(r, "SIGMA") for r in sig_roles]
        succ[beta] = out
    return RhsEncoding(sigma, names, labels, succ, atoms_of, label_names)


def encoding_types(enc: RhsEncoding, t2: TBox) -> dict:
    """Least T2-types of the nodes X_β (and X_Σ) of T2 ∪ encoding.

    T2 is EL, so names only flow from successors to predecessors and the
    nodes can be saturated in place rather than through a combined TBox.
    What an existential requirement of T2 sends back up depends on the
    requirement alone, so it is computed once per name, and each node only
    looks at the names it gained since its last visit."""
    if not validate_fragment(t2, Fragment.EL).ok:
        raise UnsupportedFragment("right-hand witnesses need an EL TBox T2")
    r = reasoner_for(t2)
    contrib: dict[str, frozenset] = {}

    def lift(x: str) -> frozenset:
        hit = contrib.get(x)
        if hit is None:
            out: set = set()
            for role, b in r.some_by.get(x, ()):
                out |= r.back(role, r.anon_type(r.child_start(frozenset(), role, b)))
            hit = contrib[x] = frozenset(out)
        return hit

    nodes = list(enc.labels) + ["SIGMA"]
    succ = dict(enc.succ)
    succ["SIGMA"] = [(s, "SIGMA") for s in sorted(enc.sigma.roles)]
    preds: dict = {n: set() for n in nodes}
    for n in nodes:
        for _, t in succ[n]:
            preds[t].add(n)
    tau = {n: r.closure(enc.labels[n] if n != "SIGMA" else enc.label_names) for n in nodes}
    seen: dict = {n: frozenset() for n in nodes}
    work = deque(nodes)
    queued = set(nodes)
    while work:
        n = work.popleft()
        queued.discard(n)
        cur = tau[n]
        if BOT_NAME in cur:
            continue
        add: set = set()
        for x in cur - seen[n]:
            add |= lift(x)
        seen[n] = cur
        for s, t in succ[n]:
            add |= r.back(Role(s), tau[t])
        if add <= cur:
            continue
        tau[n] = r.closure(cur | add)
        for p in preds[n] | {n}:
            if p not in queued:
                queued.add(p)
                work.append(p)
    return tau


def rhs_detail(t1: TBox, t2: TBox, sigma: Signature) -> tuple[RhsEncoding, dict]:
    """Encoding plus, for each witness A, the atoms β with T2 ∪ enc ⊨ X_β ⊑ A."""
    enc = build_encoding(t1, t2, sigma)
    tau = encoding_types(enc, t2)
    t2_names = sig_of(t2).concepts
    found: dict = {}
    for a in sorted(sigma.concepts):
        if a not in t2_names:
            continue
        hits = [b for b in sorted(enc.atoms_of[a], key=repr) if a in tau[b] or BOT_NAME in tau[b]]
        if hits:
            found[a] = hits
    return enc, found


def cwtn_rhs(t1: TBox, t2: TBox, sigma: Signature) -> frozenset[str]:
    _, found = rhs_detail(t1, t2, sigma)
    return frozenset(found)


def unfold(enc: RhsEncoding, node, depth: int, keep: Optional[frozenset] = None) -> Concept:
    """Depth-bounded Σ-concept approximating X_node (X_Σ for node 'SIGMA')."""
    if node == "SIGMA":
        labs = sorted(enc.sigma.concepts)
        succ = [(r, "SIGMA") for r in sorted(enc.sigma.roles)]
    else:
        labs, succ = enc.labels[node], enc.succ[node]
    if keep is not None:
        labs = [e for e in labs if e in keep]
    parts: list[Concept] = [Name(e) for e in labs]
    if depth > 0:
        parts += [Exists(Role(r), unfold(enc, t, depth - 1, keep)) for r, t in succ]
    return conj(*parts)
