"""
Graph Core

Regular graphs, vertex sets, test families and the edge-list format.
"""

from .core import Graph, VertexSet, Family, FamilySpec, density, generate
from .edgelist import load_edge_list, write_edge_list, read_graph_file

__all__ = [
    "Graph", "VertexSet", "Family", "FamilySpec", "density", "generate",
    "load_edge_list", "write_edge_list", "read_graph_file",
]
