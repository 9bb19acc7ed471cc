"""
Argument Parsing Helpers

Exponents accept "inf" and rationals like "4/3"; densities accept "1/16" or "0.0625".
"""

import math
from fractions import Fraction

from errors import UsageError

_INFINITY_WORDS = {"inf", "infinity", "∞", "+inf"}


def parse_number(text: str) -> float:
    """Parse a decimal, a rational "a/b", or "inf"""
    token = text.strip().lower()
    if token in _INFINITY_WORDS:
        return math.inf
    try:
        return float(Fraction(token))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a number: {text!r}") from None


def parse_exponent(text: str) -> float:
    """Parse an L_p exponent in [1, inf]"""
    value = parse_number(text)
    if not value >= 1:
        raise UsageError(f"exponent must be >= 1, got {text!r}")
    return value


def parse_pairs(text: str) -> list[tuple[float, float]]:
    """Parse "2:4,2:inf" into [(2.0, 4.0), (2.0, inf)]"""
    pairs = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if ":" not in chunk:
            raise UsageError(f"pair must look like p:q, got {chunk!r}")
        p_text, q_text = chunk.split(":", 1)
        pairs.append((parse_exponent(p_text), parse_exponent(q_text)))
    if not pairs:
        raise UsageError("no exponent pairs given")
    return pairs


def parse_number_list(text: str) -> list[float]:
    """Parse a comma-separated list of numbers"""
    values = [parse_number(chunk) for chunk in text.split(",") if chunk.strip()]
    if not values:
        raise UsageError("empty number list")
    return values


def format_exponent(p: float) -> str:
    """Inverse of parse_exponent for display: 4/3, 2, inf"""
    if math.isinf(p):
        return "inf"
    frac = Fraction(p).limit_denominator(1000)
    if abs(float(frac) - p) < 1e-12:
        return str(frac)
    return repr(p)
