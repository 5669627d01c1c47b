"""Ext computation over the mod-2 Steenrod algebra and its regradings."""

from .cobar import CobarBudgetExceeded, cobar_ext
from .regrade import crho_chart, trigraded_ext_G, vanishing_check
from .resolution import (
    BudgetExceeded,
    CHECKPOINT_HEADER,
    CheckpointError,
    Resolution,
    minimal_resolution,
)

__all__ = [
    "BudgetExceeded",
    "CHECKPOINT_HEADER",
    "CheckpointError",
    "CobarBudgetExceeded",
    "Resolution",
    "cobar_ext",
    "crho_chart",
    "minimal_resolution",
    "trigraded_ext_G",
    "vanishing_check",
]
