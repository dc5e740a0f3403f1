"""Query-inseparability games for Horn knowledge bases."""
from .arena import GameArena, WinningRegion, describe, initial_positions, moves, winning_region
from .entail import (
    GameReport, InseparabilityReport, TBoxEntailReport, choose_variant, kb_cq_entails,
    kb_cq_inseparable, singleton_aboxes, tbox_cq_entails_dllite,
)
