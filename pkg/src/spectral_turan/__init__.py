"""Spectral Turan toolkit for flower graphs.

A flower H(s; t1..tk) is s triangles and k odd cycles sharing one vertex.
The package builds the extremal constructions, decides flower containment,
computes adjacency and signless Laplacian radii, certifies small extremal
numbers exhaustively and measures stability quantities on concrete graphs.
"""

from ._backend import COMPILED
from .constructions import (
    FlowerSpec,
    complete,
    complete_bipartite,
    cycle,
    cycle_bouquet,
    embed_into_turan,
    extremal_family_member,
    fan_extremal,
    flower,
    split_graph,
    turan,
)
from .detection import contains_flower, contains_flower_at, is_flower_free, triangle_count
from .graph import Graph, GraphError, VertexSet, canonical_form, graph_from_edges, parse_graph6, to_graph6
from .matching import matching_number, maximum_matching
from .search import certify, ch_f, enumerate_graphs, hill_climb_spectral
from .spectral import SpectralResult, signless_laplacian_radius, spectral_radius
from .stability import max_cut_partition, stability_report

__version__ = "0.1.0"

__all__ = [
    "COMPILED",
    "FlowerSpec",
    "Graph",
    "GraphError",
    "SpectralResult",
    "VertexSet",
    "canonical_form",
    "certify",
    "ch_f",
    "complete",
    "complete_bipartite",
    "contains_flower",
    "contains_flower_at",
    "cycle",
    "cycle_bouquet",
    "embed_into_turan",
    "enumerate_graphs",
    "extremal_family_member",
    "fan_extremal",
    "flower",
    "graph_from_edges",
    "hill_climb_spectral",
    "is_flower_free",
    "matching_number",
    "max_cut_partition",
    "maximum_matching",
    "parse_graph6",
    "signless_laplacian_radius",
    "spectral_radius",
    "split_graph",
    "stability_report",
    "to_graph6",
    "triangle_count",
    "turan",
]
