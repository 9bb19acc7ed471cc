"""
Edge-List Format

Text format: first line "n d"; then one "u v" line per undirected edge with
0 <= u < v < n. Blank lines are ignored, lines starting with '#' are comments.
"""

import logging
from pathlib import Path
from typing import Union

from errors import EdgeListParseError, RegularityError, SimplicityError
from graphs.core import Graph

logger = logging.getLogger(__name__)


def load_edge_list(text: Union[bytes, str]) -> Graph:
    """Parse edge-list text into a validated Graph"""
    if isinstance(text, bytes):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as e:
            raise EdgeListParseError(1, f"non-ASCII input ({e.reason})") from e

    header = None
    n = d = 0
    seen: set[tuple[int, int]] = set()
    degree: list[int] = []
    edges: list[tuple[int, int]] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue

        fields = line.split()
        if len(fields) != 2:
            raise EdgeListParseError(line_no, f"expected two integers, got {line!r}")
        try:
            a, b = int(fields[0]), int(fields[1])
        except ValueError:
            raise EdgeListParseError(line_no, f"expected two integers, got {line!r}") from None

        if header is None:
            header = (a, b)
            n, d = a, b
            if n < 1 or d < 1 or d >= n:
                raise EdgeListParseError(line_no, f"header needs 1 <= d < n, got n={n}, d={d}")
            degree = [0] * n
            continue

        u, v = a, b
        if u == v:
            raise SimplicityError(f"self-loop at vertex {u}", line_no=line_no)
        if not (0 <= u < v < n):
            raise EdgeListParseError(line_no, f"edge must satisfy 0 <= u < v < {n}, got {u} {v}")
        if (u, v) in seen:
            raise SimplicityError(f"duplicate edge {u} {v}", line_no=line_no)
        seen.add((u, v))
        edges.append((u, v))
        degree[u] += 1
        degree[v] += 1

    if header is None:
        raise EdgeListParseError(1, "missing 'n d' header")

    for vertex, deg in enumerate(degree):
        if deg != d:
            raise RegularityError(vertex, deg, d)

    logger.debug(f"Loaded edge list: n={n}, d={d}, m={len(edges)}")
    return Graph.from_edges(n, d, edges)


def write_edge_list(G: Graph) -> str:
    """Serialize G in the edge-list format; load_edge_list inverts it exactly"""
    lines = [f"{G.n} {G.d}"]
    lines.extend(f"{u} {v}" for u, v in G.edges())
    return "\n".join(lines) + "\n"


def read_graph_file(path: Union[str, Path]) -> Graph:
    """Load an edge-list file from disk"""
    return load_edge_list(Path(path).read_bytes())
