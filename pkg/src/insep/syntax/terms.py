"""Roles, concepts, axioms, assertions, ontologies and signatures.

All values are frozen dataclasses. ``And``/``Or`` flatten nested
occurrences of themselves, drop duplicates and sort their arguments by
printed form, so structural equality behaves like set equality.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional, Union

TOP_NAME = "Top"
BOT_NAME = "Bot"
KEYWORDS = frozenset({TOP_NAME, BOT_NAME})


@dataclass(frozen=True, order=True)
class Role:
    name: str
    inverted: bool = False

    def inv(self) -> "Role":
        return Role(self.name, not self.inverted)

    def __str__(self) -> str:
        return f"(inv {self.name})" if self.inverted else self.name


class Concept:
    """Base class; subclasses are frozen dataclasses."""

    __slots__ = ()

    def __str__(self) -> str:
        return self.sexpr

    @property
    def sexpr(self) -> str:  # pragma: no cover - overridden
        raise NotImplementedError


@dataclass(frozen=True)
class Top(Concept):
    @property
    def sexpr(self) -> str:
        return TOP_NAME


@dataclass(frozen=True)
class Bot(Concept):
    @property
    def sexpr(self) -> str:
        return BOT_NAME


@dataclass(frozen=True)
class Name(Concept):
    name: str

    @property
    def sexpr(self) -> str:
        return self.name


@dataclass(frozen=True)
class Not(Concept):
    arg: Concept

    @cached_property
    def sexpr(self) -> str:
        return f"(not {self.arg.sexpr})"


def _canonical_args(cls, args: Iterable[Concept]) -> tuple[Concept, ...]:
    flat: dict[str, Concept] = {}
    for a in args:
        parts = a.args if isinstance(a, cls) else (a,)
        for p in parts:
            flat.setdefault(p.sexpr, p)
    return tuple(flat[k] for k in sorted(flat))


@dataclass(frozen=True)
class And(Concept):
    args: tuple[Concept, ...]

    def __post_init__(self):
        args = _canonical_args(And, self.args)
        if len(args) < 2:
            raise ValueError("And needs at least two distinct arguments; use conj()")
        object.__setattr__(self, "args", args)

    @cached_property
    def sexpr(self) -> str:
        return "(and " + " ".join(a.sexpr for a in self.args) + ")"


@dataclass(frozen=True)
class Or(Concept):
    args: tuple[Concept, ...]

    def __post_init__(self):
        args = _canonical_args(Or, self.args)
        if len(args) < 2:
            raise ValueError("Or needs at least two distinct arguments; use disj()")
        object.__setattr__(self, "args", args)

    @cached_property
    def sexpr(self) -> str:
        return "(or " + " ".join(a.sexpr for a in self.args) + ")"


@dataclass(frozen=True)
class Exists(Concept):
    role: Role
    filler: Concept

    @cached_property
    def sexpr(self) -> str:
        return f"(some {self.role} {self.filler.sexpr})"


@dataclass(frozen=True)
class Forall(Concept):
    role: Role
    filler: Concept

    @cached_property
    def sexpr(self) -> str:
        return f"(all {self.role} {self.filler.sexpr})"


TOP = Top()
BOT = Bot()


def conj(*args: Concept) -> Concept:
    """Conjunction that tolerates zero or one argument and drops Top."""
    parts = _canonical_args(And, [a for a in args if not isinstance(a, Top)])
    if not parts:
        return TOP
    if len(parts) == 1:
        return parts[0]
    return And(parts)


def disj(*args: Concept) -> Concept:
    parts = _canonical_args(Or, [a for a in args if not isinstance(a, Bot)])
    if not parts:
        return BOT
    if len(parts) == 1:
        return parts[0]
    return Or(parts)


def subconcepts(c: Concept) -> Iterator[Concept]:
    yield c
    if isinstance(c, (And, Or)):
        for a in c.args:
            yield from subconcepts(a)
    elif isinstance(c, Not):
        yield from subconcepts(c.arg)
    elif isinstance(c, (Exists, Forall)):
        yield from subconcepts(c.filler)


def concept_size(c: Concept) -> int:
    return sum(1 for _ in subconcepts(c))


def concept_depth(c: Concept) -> int:
    if isinstance(c, (And, Or)):
        return max(concept_depth(a) for a in c.args)
    if isinstance(c, Not):
        return concept_depth(c.arg)
    if isinstance(c, (Exists, Forall)):
        return 1 + concept_depth(c.filler)
    return 0


# ---------------------------------------------------------------- axioms


@dataclass(frozen=True)
class Sub:
    lhs: Concept
    rhs: Concept

    def __str__(self) -> str:
        return f"(sub {self.lhs} {self.rhs})"


@dataclass(frozen=True)
class Equiv:
    lhs: Concept
    rhs: Concept

    def expand(self) -> tuple[Sub, Sub]:
        return Sub(self.lhs, self.rhs), Sub(self.rhs, self.lhs)

    def __str__(self) -> str:
        return f"(equiv {self.lhs} {self.rhs})"


@dataclass(frozen=True)
class RSub:
    sub: Role
    sup: Role

    def __str__(self) -> str:
        return f"(rsub {self.sub} {self.sup})"


Axiom = Union[Sub, Equiv, RSub]


@dataclass(frozen=True, order=True)
class ConceptAssertion:
    concept: str
    ind: str

    def __str__(self) -> str:
        return f"(ca {self.concept} {self.ind})"


@dataclass(frozen=True, order=True)
class RoleAssertion:
    role: str
    subj: str
    obj: str

    def __str__(self) -> str:
        return f"(ra {self.role} {self.subj} {self.obj})"


Assertion = Union[ConceptAssertion, RoleAssertion]


def expand_equivs(axioms: Iterable[Axiom]) -> list[Axiom]:
    out: list[Axiom] = []
    for ax in axioms:
        out.extend(ax.expand() if isinstance(ax, Equiv) else (ax,))
    return out


# ------------------------------------------------------------- signatures


@dataclass(frozen=True)
class Signature:
    concepts: frozenset[str] = frozenset()
    roles: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "concepts", frozenset(self.concepts) - KEYWORDS)
        object.__setattr__(self, "roles", frozenset(self.roles))

    def __or__(self, other: "Signature") -> "Signature":
        return Signature(self.concepts | other.concepts, self.roles | other.roles)

    def __and__(self, other: "Signature") -> "Signature":
        return Signature(self.concepts & other.concepts, self.roles & other.roles)

    def __le__(self, other: "Signature") -> bool:
        return self.concepts <= other.concepts and self.roles <= other.roles

    def __len__(self) -> int:
        return len(self.concepts) + len(self.roles)

    def has_concept(self, name: str) -> bool:
        return name in self.concepts

    def has_role(self, name: str) -> bool:
        return name in self.roles

    def symbols(self) -> frozenset[str]:
        return self.concepts | self.roles

    def __str__(self) -> str:
        lines = [f"concept {c}" for c in sorted(self.concepts)]
        lines += [f"role {r}" for r in sorted(self.roles)]
        return "\n".join(lines)


def sig_of(*items) -> Signature:
    """Signature of any mix of concepts, axioms, assertions, TBoxes, ABoxes, KBs."""
    cs: set[str] = set()
    rs: set[str] = set()

    def visit(x):
        if isinstance(x, Name):
            cs.add(x.name)
        elif isinstance(x, (Top, Bot)):
            pass
        elif isinstance(x, Not):
            visit(x.arg)
        elif isinstance(x, (And, Or)):
            for a in x.args:
                visit(a)
        elif isinstance(x, (Exists, Forall)):
            rs.add(x.role.name)
            visit(x.filler)
        elif isinstance(x, (Sub, Equiv)):
            visit(x.lhs)
            visit(x.rhs)
        elif isinstance(x, RSub):
            rs.add(x.sub.name)
            rs.add(x.sup.name)
        elif isinstance(x, Role):
            rs.add(x.name)
        elif isinstance(x, ConceptAssertion):
            cs.add(x.concept)
        elif isinstance(x, RoleAssertion):
            rs.add(x.role)
        elif isinstance(x, TBox):
            for a in x.axioms:
                visit(a)
        elif isinstance(x, ABox):
            for a in x.assertions():
                visit(a)
        elif isinstance(x, KB):
            visit(x.tbox)
            visit(x.abox)
        elif isinstance(x, Signature):
            cs.update(x.concepts)
            rs.update(x.roles)
        elif isinstance(x, (list, tuple, set, frozenset)):
            for a in x:
                visit(a)
        else:
            raise TypeError(f"no signature for {type(x).__name__}")

    for it in items:
        visit(it)
    return Signature(frozenset(cs), frozenset(rs))


def roles_in(*items) -> set[Role]:
    """All roles with polarity occurring in concepts/axioms (for inverse detection)."""
    out: set[Role] = set()
    for ax in items:
        if isinstance(ax, RSub):
            out.update((ax.sub, ax.sup))
            continue
        parts = (ax.lhs, ax.rhs) if isinstance(ax, (Sub, Equiv)) else (ax,)
        for p in parts:
            for s in subconcepts(p):
                if isinstance(s, (Exists, Forall)):
                    out.add(s.role)
    return out


# -------------------------------------------------------------- ontologies


@dataclass(frozen=True)
class TBox:
    axioms: tuple[Axiom, ...] = ()
    fragment: Optional[str] = None

    def __post_init__(self):
        seen: dict[Axiom, None] = {}
        for a in self.axioms:
            seen.setdefault(a, None)
        object.__setattr__(self, "axioms", tuple(seen))

    def __iter__(self):
        return iter(self.axioms)

    def __len__(self) -> int:
        return len(self.axioms)

    def __or__(self, other: "TBox") -> "TBox":
        return TBox(self.axioms + tuple(other.axioms))

    def signature(self) -> Signature:
        return sig_of(self)

    def uses_inverse(self) -> bool:
        return any(r.inverted for r in roles_in(*self.axioms))

    def __str__(self) -> str:
        return "\n".join(str(a) for a in self.axioms)


@dataclass(frozen=True)
class ABox:
    concept_assertions: frozenset[ConceptAssertion] = frozenset()
    role_assertions: frozenset[RoleAssertion] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "concept_assertions", frozenset(self.concept_assertions))
        object.__setattr__(self, "role_assertions", frozenset(self.role_assertions))

    @classmethod
    def of(cls, *assertions: Assertion) -> "ABox":
        return cls(
            frozenset(a for a in assertions if isinstance(a, ConceptAssertion)),
            frozenset(a for a in assertions if isinstance(a, RoleAssertion)),
        )

    def assertions(self) -> list[Assertion]:
        return sorted(self.concept_assertions) + sorted(self.role_assertions)

    def individuals(self) -> frozenset[str]:
        inds = {a.ind for a in self.concept_assertions}
        for a in self.role_assertions:
            inds.update((a.subj, a.obj))
        return frozenset(inds)

    def __len__(self) -> int:
        return len(self.concept_assertions) + len(self.role_assertions)

    def __or__(self, other: "ABox") -> "ABox":
        return ABox(
            self.concept_assertions | other.concept_assertions,
            self.role_assertions | other.role_assertions,
        )

    def __str__(self) -> str:
        return "\n".join(str(a) for a in self.assertions())


@dataclass(frozen=True)
class KB:
    tbox: TBox = field(default_factory=TBox)
    abox: ABox = field(default_factory=ABox)

    def individuals(self) -> frozenset[str]:
        return self.abox.individuals()

    def signature(self) -> Signature:
        return sig_of(self)
