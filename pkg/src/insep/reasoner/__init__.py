"""Horn saturation: subsumption, classification and KB consistency."""
from .roles import RoleHierarchy
from .core import ABoxTypes, HornReasoner
from .entail import Entailer, dnf, is_positive, tree_abox
from .api import (
    SubsumptionMap, classify, el_classify, el_subsumes, entailer_for, horn_subsumes,
    instance_of, kb_consistent, reasoner_for,
)
