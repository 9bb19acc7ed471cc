"""
Level-Set Rounding

Sweeps the level sets {i : score_i > t} of a nonnegative score vector and
returns the least-expanding one under a density cap. Two scores are used:
v^2 (low-expansion regime) and (Az + z)^2 (high-expansion regime).
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from config import config
from errors import DomainError, PreconditionError
from graphs.core import Graph, VertexSet
from spectral.norms import inner, lp_norm

logger = logging.getLogger(__name__)

# Scores within this fraction of the largest score are one level
LEVEL_TOLERANCE = 1e-12

# 1 - rayleigh^2 at or below this is an exact eigenvector up to rounding
RADICAND_TOLERANCE = 1e-12


@dataclass(frozen=True)
class LevelSet:
    """S = {i : score_i >= level} = {i : score_i > threshold}"""
    members: tuple[int, ...]
    level: float
    threshold: float
    cut: int


@dataclass(frozen=True)
class RoundingResult:
    """Output of one sweep"""
    found: bool
    vertex_set: Optional[VertexSet]
    phi: Optional[Fraction]
    mu: Optional[Fraction]
    bound: float
    vacuous: bool
    threshold: Optional[float]
    level: Optional[float]
    level_sets_examined: int
    regime: str
    certified: Optional[bool] = None
    target: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "found": self.found,
            "set": None if self.vertex_set is None else self.vertex_set.to_list(),
            "phi": self.phi,
            "mu": self.mu,
            "bound": self.bound,
            "vacuous": self.vacuous,
            "threshold": self.threshold,
            "level": self.level,
            "level_sets_examined": self.level_sets_examined,
            "regime": self.regime,
            "certified": self.certified,
            "target": self.target,
        }


def _nonzero(v: np.ndarray, name: str) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or v.size == 0 or not np.any(v):
        raise DomainError(f"{name} must be a nonzero vector")
    return v


def level_sets(G: Graph, score: np.ndarray) -> list[LevelSet]:
    """
    All level sets of a nonnegative score, largest level first

    Equal scores (within LEVEL_TOLERANCE of the max) are never split.
    Zero scores never enter a set, so the last set is the support.
    """
    score = np.asarray(score, dtype=float)
    if score.shape != (G.n,):
        raise DomainError(f"score has shape {score.shape}, graph has n={G.n}")
    top = float(score.max(initial=0.0))
    if top <= 0:
        return []
    tol = LEVEL_TOLERANCE * top

    order = sorted(range(G.n), key=lambda i: (-score[i], i))
    inside = [False] * G.n
    members: list[int] = []
    cut = 0
    sets: list[LevelSet] = []

    i = 0
    while i < G.n and score[order[i]] > tol:
        head = score[order[i]]
        j = i
        while j < G.n and head - score[order[j]] <= tol and score[order[j]] > tol:
            v = order[j]
            cut += G.d - 2 * sum(1 for w in G.adjacency[v] if inside[w])
            inside[v] = True
            members.append(v)
            j += 1
        level = float(score[order[j - 1]])
        threshold = float(score[order[j]]) if j < G.n and score[order[j]] > tol else 0.0
        sets.append(LevelSet(members=tuple(sorted(members)), level=level,
                             threshold=threshold, cut=cut))
        i = j
    return sets


def local_cheeger_rhs(rayleigh: float, collision: float) -> float:
    """sqrt(1 - rayleigh^2) / (1 - collision), +inf when the denominator is <= 0"""
    rayleigh = min(1.0, max(-1.0, rayleigh))
    radicand = 1.0 - rayleigh * rayleigh
    if radicand <= RADICAND_TOLERANCE:
        radicand = 0.0
    denominator = 1.0 - collision
    if denominator <= 0:
        return math.inf
    return math.sqrt(radicand) / denominator


def lcb_bound_low(G: Graph, v: np.ndarray, delta: float) -> float:
    """
    Local Cheeger right-hand side for v at density delta

    sqrt(1 - <v,Av>^2/||v||_2^4) / (1 - ||v||_1^2/(δ||v||_2^2)), expectation norms.
    """
    v = _nonzero(v, "v")
    if not delta > 0:
        raise DomainError(f"delta must be positive, got {delta}")
    two_sq = lp_norm(v, 2) ** 2
    rayleigh = inner(v, G.apply_adjacency(v)) / two_sq
    collision = lp_norm(v, 1) ** 2 / (delta * two_sq)
    return local_cheeger_rhs(rayleigh, collision)


def _best_level_set(G: Graph, score: np.ndarray, delta: float
                    ) -> tuple[Optional[LevelSet], int]:
    cap = math.floor(delta * G.n + 1e-12)
    best: Optional[LevelSet] = None
    best_phi: Optional[Fraction] = None
    sets = level_sets(G, score)
    for s in sets:
        if len(s.members) > cap:
            continue
        value = Fraction(s.cut, G.d * len(s.members))
        if best_phi is None or value < best_phi:
            best, best_phi = s, value
    return best, len(sets)


def _result(G: Graph, best: Optional[LevelSet], examined: int, bound: float,
            vacuous: bool, regime: str) -> RoundingResult:
    if best is None:
        return RoundingResult(found=False, vertex_set=None, phi=None, mu=None, bound=bound,
                              vacuous=vacuous, threshold=None, level=None,
                              level_sets_examined=examined, regime=regime)
    S = VertexSet(n=G.n, members=best.members)
    return RoundingResult(
        found=True,
        vertex_set=S,
        phi=Fraction(best.cut, G.d * len(S)),
        mu=Fraction(len(S), G.n),
        bound=bound,
        vacuous=vacuous,
        threshold=best.threshold,
        level=best.level,
        level_sets_examined=examined,
        regime=regime,
    )


def sweep_low(G: Graph, v: np.ndarray, delta: float) -> RoundingResult:
    """Least-expanding level set of v^2 with density <= delta"""
    v = _nonzero(v, "v")
    bound = lcb_bound_low(G, v, delta)
    best, examined = _best_level_set(G, v * v, delta)
    return _result(G, best, examined, bound, vacuous=bound >= 1, regime="low")


def sweep_high(G: Graph, z: np.ndarray, delta: float,
               constant: Optional[float] = None) -> RoundingResult:
    """
    Least-expanding level set of (Az + z)^2 with density <= delta

    bound = 1 - C ε^2 with ε = ||Az||_2^2 / ||z||_2^2, the largest ε the
    high-expansion Local Cheeger hypothesis admits for z.
    """
    z = _nonzero(z, "z")
    if not delta > 0:
        raise DomainError(f"delta must be positive, got {delta}")
    constant = config.high_expansion_constant if constant is None else constant

    Az = G.apply_adjacency(z)
    eps = lp_norm(Az, 2) ** 2 / lp_norm(z, 2) ** 2
    bound = 1.0 - constant * eps * eps
    best, examined = _best_level_set(G, (Az + z) ** 2, delta)
    return _result(G, best, examined, bound, vacuous=bound <= 0, regime="high")


def collision_ratio(w: np.ndarray, delta: float) -> float:
    """||w||_1^2 / (δ ||w||_2^2); the rounding pipeline needs it <= 1"""
    w = _nonzero(w, "w")
    return lp_norm(w, 1) ** 2 / (delta * lp_norm(w, 2) ** 2)


def round_witness(G: Graph, w: np.ndarray, delta: float, epsilon: float) -> RoundingResult:
    """
    Turn a dense eigenspace witness into a small non-expanding set

    Normalizes w to z with sum |z_i| = 1 and sweeps z^2 at density 4δ.
    certified means the set found has Φ < 2√ε.
    """
    w = _nonzero(w, "w")
    if not delta > 0:
        raise DomainError(f"delta must be positive, got {delta}")
    if not epsilon > 0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")

    ratio = collision_ratio(w, delta)
    if ratio > 1.0 + config.certificate_slack:
        raise PreconditionError(
            f"collision condition fails: ||w||_1^2 / (delta ||w||_2^2) = {ratio:.6g} > 1",
            ratio,
        )

    z = w / np.sum(np.abs(w))
    swept = sweep_low(G, z, 4.0 * delta)
    target = 2.0 * math.sqrt(epsilon)
    certified = swept.found and float(swept.phi) < target
    logger.debug(f"round_witness delta={delta} eps={epsilon}: found={swept.found} "
                 f"phi={swept.phi} certified={certified}")
    return RoundingResult(
        found=swept.found,
        vertex_set=swept.vertex_set,
        phi=swept.phi,
        mu=swept.mu,
        bound=swept.bound,
        vacuous=swept.vacuous,
        threshold=swept.threshold,
        level=swept.level,
        level_sets_examined=swept.level_sets_examined,
        regime="pipeline",
        certified=certified,
        target=target,
    )
