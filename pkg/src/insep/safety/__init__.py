"""Safety for a signature, ∅-/⊥-/⊤-locality and module extraction."""
from .safety import (
    SafetyReport, direct_dependency, find_countermodel, has_extension, indirect_dependency,
    model_insep_empty,
)
from .locality import (
    bot_local_axiom, is_bot_concept, is_top_concept, restrict_empty, semantic_empty_local_axiom,
    semantic_empty_locality, syntactic_bot_locality, syntactic_top_locality, top_local_axiom,
)
from .module import KINDS, ModuleResult, extract_module, is_depleting
