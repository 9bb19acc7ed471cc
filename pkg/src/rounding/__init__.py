"""
Rounding

Local Cheeger level-set sweeps and the witness-to-set pipeline.
"""

from .sweep import (
    LevelSet, RoundingResult,
    level_sets, local_cheeger_rhs, lcb_bound_low,
    sweep_low, sweep_high, collision_ratio, round_witness,
)

__all__ = [
    "LevelSet", "RoundingResult",
    "level_sets", "local_cheeger_rhs", "lcb_bound_low",
    "sweep_low", "sweep_high", "collision_ratio", "round_witness",
]
