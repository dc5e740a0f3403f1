"""Generating structures, canonical models, unraveling and certain answers."""
from .structure import (
    CanonicalPrefix, GeneratingStructure, build_from_types, build_generating_structure,
    canonical_for_concept, role_label, unravel,
)
from .query import (
    AnswerReport, CQ, answer_in_structure, certain_answer, certain_answer_report,
    concept_to_cq, parse_cq,
)
