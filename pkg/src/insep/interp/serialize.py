"""Text form of interpretations: (elem ID) (in ID NAME) (edge NAME ID ID) (ind NAME ID)."""
from __future__ import annotations

from typing import Callable, Optional

from ..errors import ParseError
from ..syntax.reader import Atom, SList, read_sexprs
from .model import Elem, FiniteInterpretation, InterpretationBuilder, elem_key


def _ident(x) -> str:
    if not isinstance(x, Atom):
        raise ParseError("expected identifier", x.line, x.col)
    return x.text


def parse_interpretation(text: str) -> FiniteInterpretation:
    b = InterpretationBuilder()
    for form in read_sexprs(text):
        if not isinstance(form, SList) or not form.items:
            raise ParseError("expected a form", form.line, form.col)
        head = _ident(form.items[0])
        args = [_ident(a) for a in form.items[1:]]
        arity = {"elem": 1, "in": 2, "edge": 3, "ind": 2, "gen": 3}.get(head)
        if arity is None:
            raise ParseError(f"unknown form '{head}'", form.line, form.col)
        if len(args) != arity:
            raise ParseError(f"'{head}' takes {arity} arguments", form.line, form.col)
        if head == "elem":
            b.elem(args[0])
        elif head == "in":
            b.label(args[0], args[1])
        elif head == "edge":
            b.edge(args[0], args[1], args[2])
        elif head == "ind":
            if args[0] in b.inds:
                raise ParseError(f"individual {args[0]} bound twice", form.line, form.col)
            b.individual(args[0], args[1])
        # gen triples are informational for interpretations
    return b.build()


def default_namer(i: FiniteInterpretation) -> Callable[[Elem], str]:
    """Strings stay as they are; other ids get e<k> in a deterministic order."""
    names: dict[Elem, str] = {}
    taken = {x for x in i.domain if isinstance(x, str)}
    k = 0
    for x in sorted(i.domain, key=elem_key):
        if isinstance(x, str):
            names[x] = x
        else:
            while f"e{k}" in taken:
                k += 1
            names[x] = f"e{k}"
            taken.add(names[x])
    return names.__getitem__


def print_interpretation(i: FiniteInterpretation, namer: Optional[Callable[[Elem], str]] = None,
                         extra: tuple[str, ...] = ()) -> str:
    n = namer or default_namer(i)
    lines = [f"(elem {n(x)})" for x in sorted(i.domain, key=lambda x: n(x))]
    lines += sorted(f"(in {n(x)} {a})" for a, ext in i.concept_ext.items() for x in ext)
    lines += sorted(f"(edge {r} {n(x)} {n(y)})" for r, ps in i.role_ext.items() for x, y in ps)
    lines += sorted(f"(ind {a} {n(x)})" for a, x in i.individuals.items())
    lines += list(extra)
    return "\n".join(lines) + "\n"
