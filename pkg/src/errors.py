"""
sse-certify - Error Types

One hierarchy for every refusal the library can make. Value-shaped errors
also derive from ValueError so plain callers can catch them generically.
"""

from typing import Optional


class SSEError(Exception):
    """Base class for all library errors"""


class ParameterError(SSEError, ValueError):
    """Invalid family or run parameters"""


class GenerationError(SSEError):
    """Random graph generation gave up"""

    def __init__(self, message: str, attempts: int = 0):
        super().__init__(message)
        self.attempts = attempts


class EdgeListParseError(SSEError, ValueError):
    """Malformed edge-list text"""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class RegularityError(SSEError, ValueError):
    """A vertex does not have the declared degree"""

    def __init__(self, vertex: int, degree: int, expected: int):
        super().__init__(f"vertex {vertex} has degree {degree}, expected {expected}")
        self.vertex = vertex
        self.degree = degree
        self.expected = expected


class SimplicityError(SSEError, ValueError):
    """Self-loop or repeated edge"""

    def __init__(self, message: str, line_no: Optional[int] = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class DomainError(SSEError, ValueError):
    """Argument outside the domain of the operation"""


class DimensionError(DomainError):
    """Vector or matrix dimensions do not match"""


class NumericalError(SSEError, ArithmeticError):
    """A numerical routine missed its accuracy target"""

    def __init__(self, message: str, residual: float = float("nan")):
        super().__init__(f"{message} (residual={residual:.3e})")
        self.residual = residual


class BudgetExceededError(SSEError):
    """Exact enumeration would exceed the configured budget"""

    def __init__(self, cost: int, budget: int):
        super().__init__(
            f"exact enumeration needs {cost} membership checks, budget is {budget}; "
            f"use sse_profile_heuristic for a sampled upper bound"
        )
        self.cost = cost
        self.budget = budget


class PreconditionError(SSEError, ValueError):
    """A proof hypothesis required by an operation does not hold"""

    def __init__(self, message: str, ratio: float = float("nan")):
        super().__init__(message)
        self.ratio = ratio


class UsageError(SSEError):
    """Bad command-line usage"""
