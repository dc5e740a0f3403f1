"""EL concept difference: left- and right-hand witnesses and example inclusions."""
from .lhs import cwtn_lhs, distinguishing_concept, lhs_simulation
from .rhs import RhsEncoding, build_encoding, cwtn_rhs, rhs_detail, unfold
from .report import DiffReport, el_diff, minimize, tbox_rcq_entails_el
