"""
Edge Expansion and the δ-Expansion Profile

Φ(S) is the fraction of edge endpoints in S whose edge leaves S, kept as an
exact Fraction. Φ(δ) minimizes it over nonempty sets of density at most δ,
either by exhaustive enumeration (exact) or by seeded local search (sampled).
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional

import networkx as nx
import numpy as np

from config import config
from errors import BudgetExceededError, DomainError
from graphs.core import Graph, VertexSet, _check_set

logger = logging.getLogger(__name__)

# Vectorized bitmask enumeration replaces DFS when n <= 24 and k >= 5
BITMASK_MAX_N = 24
BITMASK_MIN_K = 5
_BITMASK_CHUNK = 1 << 16


class ProfileMode(Enum):
    EXACT = "exact"
    SAMPLED = "sampled"


@dataclass(frozen=True)
class ExpansionProfile:
    """Φ(δ) with the set attaining it"""
    delta: float
    value: Fraction
    witness: VertexSet
    mode: ProfileMode
    sets_examined: int

    def to_dict(self) -> dict:
        return {
            "delta": self.delta,
            "value": self.value,
            "witness": self.witness.to_list(),
            "mode": self.mode.value,
            "sets_examined": self.sets_examined,
        }


def cut_size(G: Graph, S: VertexSet) -> int:
    """Number of edges with exactly one endpoint in S"""
    return nx.cut_size(G.nx_graph, S.members)


def phi(G: Graph, S: VertexSet) -> Fraction:
    """Φ(S) = |E(S, V∖S)| / (d |S|)"""
    _check_set(G, S)
    if len(S) == 0:
        raise DomainError("expansion of the empty set is undefined")
    return Fraction(cut_size(G, S), G.d * len(S))


def phi_bar(G: Graph, S: VertexSet) -> Fraction:
    """Non-expansion 1 - Φ(S)"""
    return 1 - phi(G, S)


def phi_walk(G: Graph, S: VertexSet) -> Fraction:
    """P[w ∉ S] for v uniform in S and w a uniform neighbor of v"""
    _check_set(G, S)
    if len(S) == 0:
        raise DomainError("expansion of the empty set is undefined")
    inside = set(S.members)
    total = sum(
        (Fraction(sum(1 for w in G.adjacency[v] if w not in inside), G.d) for v in S.members),
        Fraction(0),
    )
    return total / len(S)


def phi_quadratic(G: Graph, S: VertexSet) -> float:
    """1 - <1_S, A 1_S> / ||1_S||_2^2, floating point"""
    _check_set(G, S)
    if len(S) == 0:
        raise DomainError("expansion of the empty set is undefined")
    x = S.indicator()
    return 1.0 - float(np.dot(x, G.apply_adjacency(x))) / float(np.dot(x, x))


def max_set_size(G: Graph, delta: float) -> int:
    """⌊δn⌋, robust to δn landing a hair below an integer"""
    if not 0 < delta <= 1:
        raise DomainError(f"delta must lie in (0, 1], got {delta}")
    return int(math.floor(delta * G.n + 1e-12))


def iter_small_sets(G: Graph, k: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """
    Every nonempty S with |S| <= k, lexicographically, with its cut size

    Depth-first over sorted member tuples; a prefix precedes its extensions.
    Adding v to S changes the cut by d - 2|N(v) ∩ S|.
    """
    n, d = G.n, G.d
    inside = [False] * n
    members: list[int] = []
    cuts: list[int] = [0]

    def extend(start: int) -> Iterator[tuple[tuple[int, ...], int]]:
        for v in range(start, n):
            c = cuts[-1] + d - 2 * sum(1 for w in G.adjacency[v] if inside[w])
            inside[v] = True
            members.append(v)
            cuts.append(c)
            yield tuple(members), c
            if len(members) < k:
                yield from extend(v + 1)
            cuts.pop()
            members.pop()
            inside[v] = False

    if k >= 1:
        yield from extend(0)


def enumeration_cost(n: int, k: int) -> int:
    """Membership checks the exact profile is charged: C(n, k) * k"""
    return math.comb(n, k) * k


def sse_profile(G: Graph, delta: float, budget: Optional[int] = None) -> ExpansionProfile:
    """
    Exact Φ(δ) over all nonempty S with |S| <= ⌊δn⌋

    The witness is the lexicographically least minimizer.
    Raises BudgetExceededError when C(n, k)·k exceeds the budget.
    """
    budget = config.enumeration_budget if budget is None else budget
    k = max_set_size(G, delta)
    if k < 1:
        raise DomainError(f"no nonempty set has density <= {delta} on n={G.n} vertices")

    cost = enumeration_cost(G.n, k)
    if cost > budget:
        logger.info(f"Refusing exact profile n={G.n} k={k}: cost {cost} > budget {budget}")
        raise BudgetExceededError(cost, budget)

    value, members, examined = _exact_minimum(G, k)
    logger.debug(f"sse_profile n={G.n} delta={delta}: Φ={value} witness={members} "
                 f"({examined} sets)")
    return ExpansionProfile(
        delta=float(delta),
        value=value,
        witness=VertexSet(n=G.n, members=members),
        mode=ProfileMode.EXACT,
        sets_examined=examined,
    )


@lru_cache(maxsize=256)
def _exact_minimum(G: Graph, k: int) -> tuple[Fraction, tuple[int, ...], int]:
    if G.n <= BITMASK_MAX_N and k >= BITMASK_MIN_K:
        return _bitmask_minimum(G, k)
    return _dfs_minimum(G, k)


def _dfs_minimum(G: Graph, k: int) -> tuple[Fraction, tuple[int, ...], int]:
    best_value: Optional[Fraction] = None
    best_members: tuple[int, ...] = ()
    examined = 0
    for members, cut in iter_small_sets(G, k):
        examined += 1
        value = Fraction(cut, G.d * len(members))
        if best_value is None or value < best_value:
            best_value, best_members = value, members
            if cut == 0:
                # nothing beats zero and later sets are lexicographically larger
                break
    return best_value, best_members, examined


def _bitmask_chunks(n: int) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """(masks, bits) blocks covering 1 .. 2^n - 1; bits[:, i] is vertex i"""
    shifts = np.arange(n, dtype=np.int64)
    total = 1 << n
    for start in range(1, total, _BITMASK_CHUNK):
        masks = np.arange(start, min(start + _BITMASK_CHUNK, total), dtype=np.int64)
        bits = ((masks[:, None] >> shifts) & 1).astype(np.int8)
        yield masks, bits


def _bitmask_minimum(G: Graph, k: int) -> tuple[Fraction, tuple[int, ...], int]:
    edges = np.array(list(G.edges()), dtype=np.intp)
    min_cut = np.full(k + 1, np.iinfo(np.int64).max, dtype=np.int64)
    examined = 0

    # pass 1: smallest cut per set size
    for _, bits in _bitmask_chunks(G.n):
        sizes = bits.sum(axis=1, dtype=np.int64)
        cuts = (bits[:, edges[:, 0]] ^ bits[:, edges[:, 1]]).sum(axis=1, dtype=np.int64)
        keep = sizes <= k
        examined += int(np.count_nonzero(keep))
        np.minimum.at(min_cut, sizes[keep], cuts[keep])

    best_value = min(
        Fraction(int(min_cut[j]), G.d * j) for j in range(1, k + 1)
        if min_cut[j] != np.iinfo(np.int64).max
    )

    # pass 2: lexicographically least set attaining it
    best_members: Optional[tuple[int, ...]] = None
    for masks, bits in _bitmask_chunks(G.n):
        sizes = bits.sum(axis=1, dtype=np.int64)
        cuts = (bits[:, edges[:, 0]] ^ bits[:, edges[:, 1]]).sum(axis=1, dtype=np.int64)
        hit = (sizes <= k) & (cuts * best_value.denominator == best_value.numerator * G.d * sizes)
        for mask in masks[hit].tolist():
            members = tuple(i for i in range(G.n) if (mask >> i) & 1)
            if best_members is None or members < best_members:
                best_members = members

    return best_value, best_members, examined


def sse_profile_heuristic(G: Graph, delta: float, budget: Optional[int] = None,
                          seed: Optional[int] = None) -> ExpansionProfile:
    """
    Sampled upper bound on Φ(δ)

    budget seeded random starting sets, each improved by best-move local
    search over removals, additions and swaps until no move lowers Φ.
    """
    budget = config.heuristic_budget if budget is None else budget
    seed = config.default_seed if seed is None else seed
    if budget < 1:
        raise DomainError(f"budget must be >= 1, got {budget}")
    k = max_set_size(G, delta)
    if k < 1:
        raise DomainError(f"no nonempty set has density <= {delta} on n={G.n} vertices")

    rng = np.random.default_rng(seed)
    adjacency = np.zeros((G.n, G.n), dtype=np.int64)
    adjacency[np.repeat(np.arange(G.n), G.d), G.neighbor_array.ravel()] = 1

    best: Optional[tuple[Fraction, tuple[int, ...]]] = None
    for _ in range(budget):
        size = int(rng.integers(1, k + 1))
        start = np.sort(rng.choice(G.n, size=size, replace=False))
        result = _local_search(G, adjacency, start, k)
        if best is None or result < best:
            best = result

    value, members = best
    logger.debug(f"sse_profile_heuristic n={G.n} delta={delta}: Φ<={value} after {budget} starts")
    return ExpansionProfile(
        delta=float(delta),
        value=value,
        witness=VertexSet(n=G.n, members=members),
        mode=ProfileMode.SAMPLED,
        sets_examined=budget,
    )


def _local_search(G: Graph, adjacency: np.ndarray, start: np.ndarray,
                  k: int) -> tuple[Fraction, tuple[int, ...]]:
    d = G.d
    x = np.zeros(G.n, dtype=np.int64)
    x[start] = 1
    cut = int(np.sum(x * (d - adjacency @ x)))
    value = Fraction(cut, d * int(x.sum()))

    while True:
        size = int(x.sum())
        inner_deg = adjacency @ x
        ins = np.flatnonzero(x == 1)
        outs = np.flatnonzero(x == 0)
        moves: list[tuple[Fraction, tuple[int, ...], int]] = []

        if size > 1:
            new_cuts = cut - d + 2 * inner_deg[ins]
            j = int(np.argmin(new_cuts))
            moves.append(_move(G, x, ins[j], None, int(new_cuts[j]), size - 1))
        if size < k and outs.size:
            new_cuts = cut + d - 2 * inner_deg[outs]
            j = int(np.argmin(new_cuts))
            moves.append(_move(G, x, None, outs[j], int(new_cuts[j]), size + 1))
        if outs.size:
            swap = (cut + 2 * inner_deg[ins][:, None] - 2 * inner_deg[outs][None, :]
                    + 2 * adjacency[np.ix_(ins, outs)])
            a, b = np.unravel_index(int(np.argmin(swap)), swap.shape)
            moves.append(_move(G, x, ins[a], outs[b], int(swap[a, b]), size))

        candidate = min(moves, default=None)
        if candidate is None or candidate[0] >= value:
            break
        value, _, cut = candidate
        x[:] = 0
        x[list(candidate[1])] = 1

    return value, tuple(int(i) for i in np.flatnonzero(x))


def _move(G: Graph, x: np.ndarray, drop: Optional[int], add: Optional[int],
          new_cut: int, new_size: int) -> tuple[Fraction, tuple[int, ...], int]:
    y = x.copy()
    if drop is not None:
        y[drop] = 0
    if add is not None:
        y[add] = 1
    members = tuple(int(i) for i in np.flatnonzero(y))
    return Fraction(new_cut, G.d * new_size), members, new_cut
