"""Concept language, documents, fragments, normal forms and dependencies."""
from .terms import (
    ABox, And, Assertion, Axiom, BOT, BOT_NAME, Bot, Concept, ConceptAssertion,
    Equiv, Exists, Forall, KB, Name, Not, Or, RSub, Role, RoleAssertion,
    Signature, Sub, TBox, TOP, TOP_NAME, Top, concept_depth, concept_size, conj,
    disj, expand_equivs, roles_in, sig_of, subconcepts,
)
from .reader import (
    Document, load_signature, parse_abox, parse_concept, parse_document,
    parse_signature, parse_tbox, print_document, read_sexprs,
)
from .fragments import (
    Fragment, FragmentReport, HORN_FRAGMENTS, detect_fragment, horn_violations,
    in_fragment, is_basic, is_el_concept, is_horn, validate_fragment,
)
from .normal import HornNF, Normalizer, normalize_el, normalize_horn, simplify
from .depend import (
    defined_names, definitorial_axioms, definitorial_view, dependencies,
    lhs_names,
)
