"""
Utility Functions

Common helpers used across the package.
"""

from .workers import resolve_threads, map_ordered
from .parsing import (
    parse_number, parse_exponent, parse_pairs, parse_number_list, format_exponent
)

__all__ = [
    "resolve_threads", "map_ordered",
    "parse_number", "parse_exponent", "parse_pairs", "parse_number_list",
    "format_exponent",
]
