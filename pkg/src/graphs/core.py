"""
Regular Graph Core

Immutable regular graphs, vertex sets, and the built-in test families.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Optional

import networkx as nx
import numpy as np

from config import config
from errors import DomainError, GenerationError, ParameterError, RegularityError, SimplicityError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Graph:
    """Finite undirected d-regular simple graph on vertices 0..n-1"""
    n: int
    d: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1 or self.d < 1 or self.d >= self.n:
            raise ParameterError(f"need 1 <= d < n, got n={self.n}, d={self.d}")
        if len(self.adjacency) != self.n:
            raise ParameterError(f"adjacency has {len(self.adjacency)} rows, expected {self.n}")

        for u, nbrs in enumerate(self.adjacency):
            if len(nbrs) != self.d:
                raise RegularityError(u, len(nbrs), self.d)
            if len(set(nbrs)) != len(nbrs):
                raise SimplicityError(f"vertex {u} lists a neighbor twice")
            for v in nbrs:
                if v == u:
                    raise SimplicityError(f"self-loop at vertex {u}")
                if not 0 <= v < self.n:
                    raise ParameterError(f"vertex {u} lists out-of-range neighbor {v}")
                if u not in self.adjacency[v]:
                    raise ParameterError(f"asymmetric adjacency: {u} lists {v} but not conversely")

    @classmethod
    def from_edges(cls, n: int, d: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph from undirected edges; duplicates are rejected"""
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise SimplicityError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u}, {v}) out of range for n={n}")
            if v in nbrs[u]:
                raise SimplicityError(f"repeated edge ({min(u, v)}, {max(u, v)})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n=n, d=d, adjacency=tuple(tuple(sorted(s)) for s in nbrs))

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        """Freeze a networkx graph whose nodes are 0..n-1"""
        n = g.number_of_nodes()
        if set(g.nodes) != set(range(n)):
            raise ParameterError("networkx graph nodes must be 0..n-1")
        if nx.number_of_selfloops(g):
            raise SimplicityError("graph has a self-loop")
        d = g.degree(0) if n else 0
        return cls(n=n, d=d, adjacency=tuple(tuple(sorted(g.adj[u])) for u in range(n)))

    @property
    def m(self) -> int:
        """Edge count nd/2"""
        return self.n * self.d // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        """Each undirected edge once, as (u, v) with u < v, in sorted order"""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield u, v

    @cached_property
    def neighbor_array(self) -> np.ndarray:
        """(n, d) integer array of neighbor lists"""
        arr = np.array(self.adjacency, dtype=np.intp).reshape(self.n, self.d)
        arr.setflags(write=False)
        return arr

    def apply_adjacency(self, v: np.ndarray) -> np.ndarray:
        """Normalized adjacency applied to v: (Av)_i = mean of v over neighbors of i"""
        v = np.asarray(v, dtype=float)
        if v.shape != (self.n,):
            raise DomainError(f"vector has shape {v.shape}, graph has n={self.n}")
        return v[self.neighbor_array].mean(axis=1)

    @cached_property
    def nx_graph(self) -> nx.Graph:
        """The same graph as a networkx Graph"""
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g

    def components(self) -> list[tuple[int, ...]]:
        """Connected components, each sorted, ordered by smallest vertex"""
        return sorted(tuple(sorted(c)) for c in nx.connected_components(self.nx_graph))


@dataclass(frozen=True)
class VertexSet:
    """Sorted, deduplicated subset of {0, ..., n-1}"""
    n: int
    members: tuple[int, ...] = ()

    @classmethod
    def of(cls, n: int, members: Iterable[int]) -> "VertexSet":
        uniq = sorted({int(x) for x in members})
        for x in uniq:
            if not 0 <= x < n:
                raise DomainError(f"vertex {x} outside 0..{n - 1}")
        return cls(n=n, members=tuple(uniq))

    @classmethod
    def from_indicator(cls, mask: np.ndarray) -> "VertexSet":
        mask = np.asarray(mask, dtype=bool)
        return cls(n=mask.size, members=tuple(int(i) for i in np.flatnonzero(mask)))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, x: object) -> bool:
        return x in self.members

    def indicator(self) -> np.ndarray:
        out = np.zeros(self.n)
        out[list(self.members)] = 1.0
        return out

    def complement(self) -> "VertexSet":
        inside = set(self.members)
        return VertexSet(n=self.n, members=tuple(x for x in range(self.n) if x not in inside))

    def to_list(self) -> list[int]:
        return list(self.members)


class Family(Enum):
    """Built-in test families"""
    COMPLETE = "complete"
    CYCLE = "cycle"
    HYPERCUBE = "hypercube"
    CLIQUE_UNION = "clique_union"
    RANDOM_REGULAR = "random_regular"


@dataclass(frozen=True)
class FamilySpec:
    """A named family plus its integer parameters"""
    family: Family
    n: Optional[int] = None
    k: Optional[int] = None
    m: Optional[int] = None
    d: Optional[int] = None
    seed: Optional[int] = None

    def label(self) -> str:
        """Stable human-readable identifier, e.g. hypercube(k=3)"""
        parts = []
        for name in ("n", "m", "k", "d", "seed"):
            value = getattr(self, name)
            if value is not None:
                parts.append(f"{name}={value}")
        return f"{self.family.value}({','.join(parts)})"


def density(G: Graph, S: VertexSet) -> Fraction:
    """μ(S) = |S| / n, exactly"""
    _check_set(G, S)
    return Fraction(len(S), G.n)


def _check_set(G: Graph, S: VertexSet) -> None:
    if S.n != G.n:
        raise DomainError(f"vertex set lives on n={S.n}, graph has n={G.n}")
    for x in S.members:
        if not 0 <= x < G.n:
            raise DomainError(f"vertex {x} outside 0..{G.n - 1}")


def generate(spec: FamilySpec) -> Graph:
    """Build the graph a FamilySpec describes"""
    family = spec.family

    if family == Family.COMPLETE:
        n = _require(spec.n, "n", "complete")
        if n < 2:
            raise ParameterError(f"complete graph needs n >= 2, got {n}")
        return Graph.from_networkx(nx.complete_graph(n))

    if family == Family.CYCLE:
        n = _require(spec.n, "n", "cycle")
        if n < 3:
            raise ParameterError(f"cycle needs n >= 3, got {n}")
        return Graph.from_networkx(nx.cycle_graph(n))

    if family == Family.HYPERCUBE:
        k = _require(spec.k, "k", "hypercube")
        if k < 1:
            raise ParameterError(f"hypercube needs k >= 1, got {k}")
        # vertex i <-> bit-string of i; neighbors differ in one bit
        cube = nx.hypercube_graph(k)
        labels = {bits: int("".join(map(str, bits)), 2) for bits in cube.nodes}
        return Graph.from_networkx(nx.relabel_nodes(cube, labels))

    if family == Family.CLIQUE_UNION:
        m = _require(spec.m, "m", "clique_union")
        k = _require(spec.k, "k", "clique_union")
        if m < 1 or k < 1:
            raise ParameterError(f"clique_union needs m, k >= 1, got m={m}, k={k}")
        if k < 2:
            raise ParameterError("clique_union needs k >= 2 (k=1 has degree 0)")
        # clique j occupies vertices jk .. jk + k - 1
        return Graph.from_networkx(nx.disjoint_union_all([nx.complete_graph(k)] * m))

    if family == Family.RANDOM_REGULAR:
        n = _require(spec.n, "n", "random_regular")
        d = _require(spec.d, "d", "random_regular")
        if spec.seed is None:
            raise ParameterError("random_regular requires a seed")
        return _random_regular(n, d, spec.seed)

    raise ParameterError(f"unknown family {family}")


def _require(value: Optional[int], name: str, family: str) -> int:
    if value is None:
        raise ParameterError(f"{family} requires parameter {name}")
    return int(value)


def _random_regular(n: int, d: int, seed: int, retries: Optional[int] = None) -> Graph:
    """Pairing (configuration) model, rejecting non-simple outcomes"""
    if d < 1 or d >= n:
        raise ParameterError(f"random_regular needs 1 <= d < n, got n={n}, d={d}")
    if (n * d) % 2:
        raise ParameterError(f"random_regular needs n*d even, got n={n}, d={d}")
    if seed < 0:
        raise ParameterError(f"seed must be non-negative, got {seed}")

    retries = retries or config.pairing_retries
    rng = np.random.default_rng(seed)
    points = np.repeat(np.arange(n), d)

    for attempt in range(1, retries + 1):
        pairs = rng.permutation(points).reshape(-1, 2)
        if np.any(pairs[:, 0] == pairs[:, 1]):
            continue
        lo = np.minimum(pairs[:, 0], pairs[:, 1])
        hi = np.maximum(pairs[:, 0], pairs[:, 1])
        keys = lo * n + hi
        if np.unique(keys).size != keys.size:
            continue
        logger.debug(f"random_regular(n={n}, d={d}, seed={seed}) accepted on attempt {attempt}")
        return Graph.from_edges(n, d, zip(lo.tolist(), hi.tolist()))

    raise GenerationError(
        f"pairing model produced no simple {d}-regular graph on {n} vertices "
        f"in {retries} attempts",
        attempts=retries,
    )
