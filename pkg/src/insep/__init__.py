"""Inseparability of description-logic ontologies: concept difference for EL,
safety and locality-based modules, and query inseparability of Horn KBs."""
from .errors import InconsistentKB, InsepError, ParseError, ResourceCap, ShapeError, UnsupportedFragment
from .syntax import KB, ABox, Signature, TBox, parse_abox, parse_concept, parse_document, parse_tbox
from .eldiff import el_diff
from .safety import extract_module, model_insep_empty, semantic_empty_locality, syntactic_bot_locality
from .chase import build_generating_structure, certain_answer
from .qgames import kb_cq_entails, kb_cq_inseparable, tbox_cq_entails_dllite

__version__ = "0.1.0"
