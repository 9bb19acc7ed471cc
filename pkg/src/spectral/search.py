"""
p->q Norm Lower Bounds by Witness Search

Every evaluated vector is a feasible point, so the best ratio found is a
certified lower bound. Candidates: standard basis vectors, rows of the
matrix, the all-ones vector, extra caller starts, then seeded gradient-ascent
restarts on log||Mv||_q - log||v||_p. Restarts ascend together as the rows
of one array.
"""

import logging
import math
from typing import Optional, Sequence

import numpy as np

from config import config
from errors import DomainError
from spectral.norms import MatrixLike, NormEstimate, as_matrix, ratio, upper_bound_with_method
from spectral.operators import Projector
from utils.workers import map_ordered

logger = logging.getLogger(__name__)

# Gradient surrogate exponent for the non-smooth L_inf norm
_INF_SURROGATE = 64.0

# Relative margin a later candidate needs to replace the incumbent
_REPLACE_MARGIN = 1e-12

# Restarts per ascent batch; fixed so results never depend on the worker count
_BATCH_ROWS = 256

# Smallest backtracking step before a row gives up
_MIN_STEP = 1e-12

# Every _PRUNE_EVERY trials, rows trailing the batch leader by more than 5%
# in ratio stop
_PRUNE_EVERY = 64
_PRUNE_GAP = math.log(1.05)


# =============================================================================
# Row-wise norms and gradients
# =============================================================================

def row_norms(X: np.ndarray, p: float) -> np.ndarray:
    """Expectation L_p norm of every row of X"""
    A = np.abs(X)
    peak = A.max(axis=1)
    if math.isinf(p):
        return peak
    safe = np.where(peak > 0, peak, 1.0)
    return peak * np.mean((A / safe[:, None]) ** p, axis=1) ** (1.0 / p)


def _log_ratios(M: np.ndarray, V: np.ndarray, p: float, q: float) -> np.ndarray:
    num = row_norms(V @ M.T, q)
    den = row_norms(V, p)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.log(num) - np.log(den)
    return np.where((num > 0) & (den > 0), out, -np.inf)


def _log_norm_grads(X: np.ndarray, p: float) -> np.ndarray:
    """Gradient of log ||x||_p per row (a subgradient at kinks, 0 for x = 0)"""
    if math.isinf(p):
        p = _INF_SURROGATE
    A = np.abs(X)
    peak = A.max(axis=1, keepdims=True)
    safe = np.where(peak > 0, peak, 1.0)
    Y = A / safe
    total = np.sum(Y ** p, axis=1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        grads = np.sign(X) * Y ** (p - 1.0) / (safe * total)
    return np.where(peak > 0, grads, 0.0)


def _directions(M: np.ndarray, V: np.ndarray, p: float, q: float) -> np.ndarray:
    return _log_norm_grads(V @ M.T, q) @ M - _log_norm_grads(V, p)


# =============================================================================
# Ascent
# =============================================================================

def ascend_batch(M: np.ndarray, starts: np.ndarray, p: float, q: float,
                 max_steps: Optional[int] = None,
                 tolerance: Optional[float] = None) -> np.ndarray:
    """
    Normalized gradient ascent with backtracking, one row per start

    Each row keeps its own step size: an accepted trial doubles it (capped
    at 1), a rejected one halves it. A row stops when an accepted step
    improves its log-ratio by less than tolerance, when the step underflows,
    when the gradient vanishes, or when it trails the best row by more
    than 5%. max_steps bounds the number of trials.
    """
    max_steps = max_steps or config.ascent_max_steps
    tolerance = config.ascent_tolerance if tolerance is None else tolerance

    V = np.array(starts, dtype=float, ndmin=2)
    norms = np.linalg.norm(V, axis=1)
    live = norms > 0
    V[live] /= norms[live, None]

    F = np.full(len(V), -np.inf)
    if live.any():
        F[live] = _log_ratios(M, V[live], p, q)
    active = np.isfinite(F)
    fresh = active.copy()
    step = np.full(len(V), 0.5)
    D = np.zeros_like(V)

    for trial_no in range(1, max_steps + 1):
        if trial_no % _PRUNE_EVERY == 0 and len(V) > 1:
            active &= F >= F.max() - _PRUNE_GAP
            fresh &= active

        if fresh.any():
            idx = np.flatnonzero(fresh)
            G = _directions(M, V[idx], p, q)
            gnorm = np.linalg.norm(G, axis=1)
            ok = (gnorm > 0) & np.isfinite(gnorm)
            D[idx[ok]] = G[ok] / gnorm[ok, None]
            active[idx[~ok]] = False
            fresh[:] = False

        idx = np.flatnonzero(active)
        if idx.size == 0:
            break

        trial = V[idx] + step[idx, None] * D[idx]
        tnorm = np.linalg.norm(trial, axis=1)
        good = tnorm > 0
        trial[good] /= tnorm[good, None]
        ft = np.full(idx.size, -np.inf)
        if good.any():
            ft[good] = _log_ratios(M, trial[good], p, q)

        up = ft > F[idx]
        accepted, rejected = idx[up], idx[~up]
        improvement = ft[up] - F[accepted]
        V[accepted] = trial[up]
        F[accepted] = ft[up]
        step[accepted] = np.minimum(2.0 * step[accepted], 1.0)
        active[accepted[improvement < tolerance]] = False
        fresh[accepted] = active[accepted]

        step[rejected] *= 0.5
        active[rejected[step[rejected] < _MIN_STEP]] = False
    return V


def ascend(M: np.ndarray, start: np.ndarray, p: float, q: float,
           max_steps: Optional[int] = None, tolerance: Optional[float] = None) -> np.ndarray:
    """Single-start ascend_batch"""
    start = np.asarray(start, dtype=float)
    if not np.any(start):
        return start
    return ascend_batch(M, start[None, :], p, q, max_steps, tolerance)[0]


# =============================================================================
# Lower bound
# =============================================================================

def _ratios(M: np.ndarray, C: np.ndarray, p: float, q: float) -> np.ndarray:
    """||Mc||_q / ||c||_p for every row c of C, in bounded blocks"""
    out = np.zeros(len(C))
    for lo in range(0, len(C), _BATCH_ROWS):
        block = C[lo:lo + _BATCH_ROWS]
        den = row_norms(block, p)
        num = row_norms(block @ M.T, q)
        out[lo:lo + _BATCH_ROWS] = np.divide(num, den, out=np.zeros_like(num), where=den > 0)
    return out


def pq_norm_lower(
    P: MatrixLike,
    p: float,
    q: float,
    restarts: Optional[int] = None,
    seed: Optional[int] = None,
    starts: Sequence[np.ndarray] = (),
    threads: Optional[int] = None,
) -> NormEstimate:
    """
    Certified lower bound on ||P||_{p->q} with a witness

    For a Projector, restarts begin inside its range and the witness is
    replaced by its projection whenever that does not lose ratio, so
    witnesses lie in V_λ.
    """
    if not (p >= 1 and q >= 1):
        raise DomainError(f"exponents must be in [1, inf], got p={p}, q={q}")
    restarts = config.default_restarts if restarts is None else restarts
    seed = config.default_seed if seed is None else seed
    if restarts < 1:
        raise DomainError(f"restarts must be >= 1, got {restarts}")

    M = as_matrix(P)
    n = M.shape[0]
    upper, upper_method = upper_bound_with_method(P, p, q)

    if not np.any(M):
        return NormEstimate(p=p, q=q, lower=0.0, upper=upper, witness=None,
                            lower_method="zero_operator", upper_method=upper_method)

    def start_for(index: int) -> np.ndarray:
        rng = np.random.default_rng([seed, index])
        if isinstance(P, Projector) and P.dimension > 0:
            return P.sample_range(rng, 1)[0]
        return rng.standard_normal(n)

    random_starts = np.array([start_for(i) for i in range(restarts)])
    batches = [random_starts[lo:lo + _BATCH_ROWS] for lo in range(0, restarts, _BATCH_ROWS)]
    restarted = np.vstack(map_ordered(lambda b: ascend_batch(M, b, p, q), batches, threads))

    blocks = [("basis", np.eye(n)), ("row", M.copy()), ("ones", np.ones((1, n)))]
    if len(starts):
        given = np.array([np.asarray(s, dtype=float) for s in starts], ndmin=2)
        # caller starts are also polished by ascent
        blocks += [("start", given), ("start_ascent", ascend_batch(M, given, p, q))]
    blocks.append(("ascent", restarted))

    best, witness, method = 0.0, None, "none"
    for tag, C in blocks:
        for r, v in zip(_ratios(M, C, p, q), C):
            if witness is None or r > best * (1.0 + _REPLACE_MARGIN):
                best, witness, method = float(r), v, tag
    best = ratio(M, witness, p, q)

    if isinstance(P, Projector):
        projected = M @ witness
        r = ratio(M, projected, p, q)
        if r >= best * (1.0 - 1e-9) and np.any(projected):
            best, witness = r, projected

    logger.debug(f"pq_norm_lower p={p} q={q} n={n}: lower={best:.6g} via {method}, "
                 f"upper={upper:.6g} ({upper_method})")
    return NormEstimate(p=p, q=q, lower=best, upper=upper, witness=witness,
                        lower_method=method, upper_method=upper_method)
