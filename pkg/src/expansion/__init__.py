"""
Expansion

Exact edge expansion of vertex sets and the δ-expansion profile.
"""

from .profile import (
    ExpansionProfile, ProfileMode,
    cut_size, phi, phi_bar, phi_walk, phi_quadratic,
    max_set_size, iter_small_sets, enumeration_cost,
    sse_profile, sse_profile_heuristic,
)

__all__ = [
    "ExpansionProfile", "ProfileMode",
    "cut_size", "phi", "phi_bar", "phi_walk", "phi_quadratic",
    "max_set_size", "iter_small_sets", "enumeration_cost",
    "sse_profile", "sse_profile_heuristic",
]
