"""
L_p Norms and p->q Operator Bounds

All norms use expectation normalization: ||x||_p = (mean |x_i|^p)^(1/p).
"""

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from errors import DimensionError, DomainError
from spectral.operators import Projector, SymmetricOperator

MatrixLike = Union[Projector, SymmetricOperator, np.ndarray]


def as_matrix(M: MatrixLike) -> np.ndarray:
    """Dense square matrix behind any supported operator value"""
    if isinstance(M, Projector):
        return M.matrix
    if isinstance(M, SymmetricOperator):
        return M.entries
    arr = np.asarray(M, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {arr.shape}")
    return arr


def _check_exponent(p: float, name: str = "p") -> None:
    if not p >= 1:
        raise DomainError(f"{name} must be in [1, inf], got {p}")


def lp_norm(v: np.ndarray, p: float) -> float:
    """Expectation L_p norm; p = inf gives max |v_i|"""
    _check_exponent(p)
    v = np.abs(np.asarray(v, dtype=float))
    if v.size == 0:
        raise DimensionError("vector must have dimension >= 1")
    peak = float(v.max())
    if math.isinf(p) or peak == 0.0:
        return peak
    # scale by the peak so large p neither overflows nor underflows
    return peak * float(np.mean((v / peak) ** p)) ** (1.0 / p)


def lp_counting_norm(v: np.ndarray, p: float) -> float:
    """Counting ℓ_p norm: (sum |v_i|^p)^(1/p) = n^(1/p) ||v||_p"""
    _check_exponent(p)
    v = np.asarray(v, dtype=float)
    if math.isinf(p):
        return lp_norm(v, p)
    return lp_norm(v, p) * v.size ** (1.0 / p)


def inner(u: np.ndarray, v: np.ndarray) -> float:
    """Expectation inner product (1/n) sum u_i v_i"""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise DimensionError(f"dimension mismatch: {u.shape} vs {v.shape}")
    return float(np.dot(u, v)) / u.size


def holder_dual(p: float) -> float:
    """p* with 1/p + 1/p* = 1"""
    _check_exponent(p)
    if p == 1:
        return math.inf
    if math.isinf(p):
        return 1.0
    return 1.0 / (1.0 - 1.0 / p)


def ratio(M: np.ndarray, v: np.ndarray, p: float, q: float) -> float:
    """||Mv||_q / ||v||_p, 0 for v = 0"""
    denom = lp_norm(v, p)
    if denom == 0.0:
        return 0.0
    return lp_norm(M @ v, q) / denom


def two_to_inf_norm(P: Projector) -> float:
    """||P||_{2->inf} = sqrt(n * max_i P_ii) for an orthogonal projector"""
    diag = np.diag(P.matrix)
    return math.sqrt(P.n * max(0.0, float(diag.max())))


def one_to_inf_bound(M: MatrixLike) -> float:
    """n * max |M_ij|, an upper bound on ||M||_{p->q} for every 1 <= p, q <= inf"""
    A = as_matrix(M)
    return A.shape[0] * float(np.max(np.abs(A)))


def pq_norm_upper(P: Projector, p: float, q: float) -> float:
    """
    Certified upper bound on ||P||_{p->q} for 2 <= p <= q <= inf

    min of ||P||_{2->inf} and, for p = 2, the interpolation bound
    ||P||_{2->inf}^(1 - 2/q) (from ||P||_{2->2} <= 1).
    """
    return _pq_norm_upper_with_method(P, p, q)[0]


def _pq_norm_upper_with_method(P: Projector, p: float, q: float) -> tuple[float, str]:
    _check_exponent(p)
    _check_exponent(q, "q")
    if p < 2 or q < p:
        raise DomainError(f"upper bound needs 2 <= p <= q <= inf, got p={p}, q={q}")

    base = two_to_inf_norm(P)
    best, method = base, "two_to_inf"
    if p == 2:
        exponent = 1.0 if math.isinf(q) else 1.0 - 2.0 / q
        interpolated = base ** exponent
        if interpolated < best:
            best, method = interpolated, "interpolation"
    return best, method


def pq_norm_upper_dual(P: Projector, p: float, q: float) -> float:
    """
    Upper bound on ||P||_{p->q} for 1 <= p <= q <= 2

    Hölder duality plus P = P^T gives ||P||_{p->q} = ||P||_{q*->p*},
    and 2 <= q* <= p* is the regime pq_norm_upper covers.
    """
    _check_exponent(p)
    _check_exponent(q, "q")
    if q > 2 or q < p:
        raise DomainError(f"dual upper bound needs 1 <= p <= q <= 2, got p={p}, q={q}")
    return pq_norm_upper(P, holder_dual(q), holder_dual(p))


def dual_witness(M: MatrixLike, v: np.ndarray, q: float) -> np.ndarray:
    """
    Norming functional of Mv in L_{q*}

    u with <Mv, u> = ||Mv||_q ||u||_{q*}; its ratio for M^T in (q*, p*)
    is at least v's ratio for M in (p, q).
    """
    _check_exponent(q, "q")
    w = as_matrix(M) @ np.asarray(v, dtype=float)
    if math.isinf(q):
        u = np.zeros_like(w)
        k = int(np.argmax(np.abs(w)))
        u[k] = np.sign(w[k]) or 1.0
        return u
    if q == 1:
        return np.sign(w)
    peak = float(np.max(np.abs(w))) or 1.0
    return np.sign(w) * (np.abs(w) / peak) ** (q - 1.0)


@dataclass
class NormEstimate:
    """Certified bracket on ||M||_{p->q} with the witness for the lower end"""
    p: float
    q: float
    lower: float
    upper: float
    witness: Optional[np.ndarray]
    lower_method: str
    upper_method: str

    @property
    def gap(self) -> float:
        return self.upper - self.lower

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "lower": self.lower,
            "upper": self.upper,
            "lower_method": self.lower_method,
            "upper_method": self.upper_method,
            "witness": None if self.witness is None else self.witness.tolist(),
        }


def upper_bound_with_method(P: MatrixLike, p: float, q: float) -> tuple[float, str]:
    """Best certified upper bound available for (p, q)"""
    if isinstance(P, Projector):
        if 2 <= p <= q:
            return _pq_norm_upper_with_method(P, p, q)
        if p <= q <= 2:
            return pq_norm_upper_dual(P, p, q), "duality"
    return one_to_inf_bound(P), "one_to_inf"


def is_hypercontractive(P: Projector, p: float, q: float, C: float,
                        lower: Optional[float] = None) -> Optional[bool]:
    """
    Decide ||P||_{p->q} <= C from certified bounds

    True when the upper bound is <= C, False when a known lower bound
    exceeds C, None when the bracket straddles C.
    """
    upper, _ = upper_bound_with_method(P, p, q)
    if upper <= C:
        return True
    if lower is not None and lower > C:
        return False
    return None
