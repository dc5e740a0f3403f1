"""S-expression reader and printer for documents and signature files."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

from ..errors import ParseError
from .terms import (
    ABox, And, Assertion, Axiom, BOT, Concept, ConceptAssertion, Equiv, Exists,
    Forall, KEYWORDS, Name, Not, Or, RSub, Role, RoleAssertion, Signature, Sub,
    TBox, TOP, TOP_NAME, BOT_NAME, conj, disj, sig_of,
)

_TOKEN = re.compile(r"\s+|;[^\n]*|\(|\)|[^\s();]+")


@dataclass(frozen=True)
class Atom:
    text: str
    line: int
    col: int


@dataclass
class SList:
    items: list
    line: int
    col: int


SExpr = Union[Atom, SList]


def read_sexprs(text: str) -> list[SExpr]:
    stack: list[SList] = [SList([], 0, 0)]
    line, line_start = 1, 0
    for m in _TOKEN.finditer(text):
        tok = m.group()
        col = m.start() - line_start + 1
        if tok.isspace() or tok.startswith(";"):
            nl = tok.count("\n")
            if nl:
                line += nl
                line_start = m.start() + tok.rindex("\n") + 1
            continue
        if tok == "(":
            stack.append(SList([], line, col))
        elif tok == ")":
            if len(stack) == 1:
                raise ParseError("unbalanced ')'", line, col)
            done = stack.pop()
            stack[-1].items.append(done)
        else:
            stack[-1].items.append(Atom(tok, line, col))
    if len(stack) > 1:
        open_ = stack[-1]
        raise ParseError("unclosed '('", open_.line, open_.col)
    return stack[0].items


def _head(x: SExpr) -> str:
    if isinstance(x, SList) and x.items and isinstance(x.items[0], Atom):
        return x.items[0].text
    return ""


def _ident(x: SExpr, what: str) -> str:
    if not isinstance(x, Atom):
        raise ParseError(f"expected {what}", x.line, x.col)
    if x.text in KEYWORDS:
        raise ParseError(f"reserved word {x.text!r} used as {what}", x.line, x.col)
    return x.text


def _arity(x: SList, n: int, form: str, at_least: bool = False):
    got = len(x.items) - 1
    if got < n or (not at_least and got != n):
        want = f"at least {n}" if at_least else str(n)
        raise ParseError(f"({form} ...) takes {want} arguments, got {got}", x.line, x.col)


def to_role(x: SExpr) -> Role:
    if isinstance(x, Atom):
        return Role(_ident(x, "role name"))
    if _head(x) == "inv":
        _arity(x, 1, "inv")
        inner = x.items[1]
        if isinstance(inner, SList):
            return to_role(inner).inv()
        return Role(_ident(inner, "role name"), True)
    raise ParseError("expected role", x.line, x.col)


def to_concept(x: SExpr) -> Concept:
    if isinstance(x, Atom):
        if x.text == TOP_NAME:
            return TOP
        if x.text == BOT_NAME:
            return BOT
        return Name(x.text)
    head = _head(x)
    if head in ("and", "or"):
        _arity(x, 2, head, at_least=True)
        args = [to_concept(a) for a in x.items[1:]]
        return (conj if head == "and" else disj)(*args)
    if head == "not":
        _arity(x, 1, "not")
        return Not(to_concept(x.items[1]))
    if head in ("some", "all"):
        _arity(x, 2, head)
        cls = Exists if head == "some" else Forall
        return cls(to_role(x.items[1]), to_concept(x.items[2]))
    raise ParseError(f"unknown concept constructor {head!r}", x.line, x.col)


@dataclass
class Document:
    tbox: TBox = field(default_factory=TBox)
    abox: ABox = field(default_factory=ABox)
    locations: dict = field(default_factory=dict)

    @property
    def signature(self) -> Signature:
        return sig_of(self.tbox, self.abox)


def parse_document(text: str) -> Document:
    axioms: list[Axiom] = []
    assertions: list[Assertion] = []
    locations: dict = {}
    for x in read_sexprs(text):
        head = _head(x)
        if not isinstance(x, SList):
            raise ParseError(f"stray token {x.text!r}", x.line, x.col)
        item: Union[Axiom, Assertion]
        if head in ("sub", "equiv"):
            _arity(x, 2, head)
            cls = Sub if head == "sub" else Equiv
            item = cls(to_concept(x.items[1]), to_concept(x.items[2]))
            axioms.append(item)
        elif head == "rsub":
            _arity(x, 2, head)
            item = RSub(to_role(x.items[1]), to_role(x.items[2]))
            axioms.append(item)
        elif head == "ca":
            _arity(x, 2, head)
            item = ConceptAssertion(_ident(x.items[1], "concept name"), _ident(x.items[2], "individual"))
            assertions.append(item)
        elif head == "ra":
            _arity(x, 3, head)
            item = RoleAssertion(
                _ident(x.items[1], "role name"),
                _ident(x.items[2], "individual"),
                _ident(x.items[3], "individual"),
            )
            assertions.append(item)
        else:
            raise ParseError(f"unknown item {head!r}", x.line, x.col)
        locations.setdefault(item, (x.line, x.col))
    return Document(TBox(tuple(axioms)), ABox.of(*assertions), locations)


def parse_concept(text: str) -> Concept:
    xs = read_sexprs(text)
    if len(xs) != 1:
        raise ParseError("expected exactly one concept")
    return to_concept(xs[0])


def parse_tbox(text: str) -> TBox:
    return parse_document(text).tbox


def parse_abox(text: str) -> ABox:
    return parse_document(text).abox


def parse_signature(text: str) -> Signature:
    """Signature file (``concept A`` / ``role r`` per line) or inline ``concept:A,B;role:r``."""
    concepts: set[str] = set()
    roles: set[str] = set()
    seen: dict[str, int] = {}

    def bind(kind: str, name: str, line: int):
        name = name.strip()
        if not name:
            return
        if name in KEYWORDS:
            raise ParseError(f"reserved word {name!r} in signature", line, 1)
        if name in seen:
            raise ParseError(f"duplicate signature binding for {name!r}", line, 1)
        seen[name] = line
        (concepts if kind == "concept" else roles).add(name)

    stripped = text.strip()
    if stripped and "\n" not in stripped and ":" in stripped:
        for part in stripped.split(";"):
            if not part.strip():
                continue
            kind, _, names = part.partition(":")
            kind = kind.strip()
            if kind not in ("concept", "role"):
                raise ParseError(f"unknown signature kind {kind!r}", 1, 1)
            for n in names.split(","):
                bind(kind, n, 1)
        return Signature(frozenset(concepts), frozenset(roles))

    for i, raw in enumerate(text.splitlines(), 1):
        line = raw.split(";", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or parts[0] not in ("concept", "role"):
            raise ParseError("expected 'concept NAME' or 'role NAME'", i, 1)
        bind(parts[0], parts[1], i)
    return Signature(frozenset(concepts), frozenset(roles))


def load_signature(spec: str) -> Signature:
    p = Path(spec)
    if p.is_file():
        return parse_signature(p.read_text())
    return parse_signature(spec)


def print_document(tbox: TBox = TBox(), abox: ABox = ABox()) -> str:
    lines = [str(a) for a in tbox.axioms] + [str(a) for a in abox.assertions()]
    return "\n".join(lines) + ("\n" if lines else "")
