"""Connectivity-preserving Hamiltonian cycles in Dirac graphs."""

from __future__ import annotations

import logging

from .connectivity import disjoint_paths, is_k_connected, kappa, min_vertex_cut
from .errors import (
    BoundViolationError,
    DomainError,
    ExtractionFailure,
    HamPreserveError,
    InfeasibleError,
    InternalConsistencyError,
    NotApplicableError,
)
from .graph import Graph, induced_subgraph, remove_edges
from .hamilton import closure, edge_disjoint_ham_paths, ham_cycle_dirac, ham_path_between
from .io import parse_graph, read_graph, write_edge_list
from .kernels import BACKEND
from .oracle import verify_certificate
from .pairs import decompose_into_pairs, max_edge_disjoint_pairs
from .preserve import PreserveCertificate, preserve_exact, preserve_many, preserve_one

logging.getLogger(__name__).addHandler(logging.NullHandler())

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Graph",
    "PreserveCertificate",
    "HamPreserveError",
    "DomainError",
    "BoundViolationError",
    "ExtractionFailure",
    "InfeasibleError",
    "InternalConsistencyError",
    "NotApplicableError",
    "closure",
    "decompose_into_pairs",
    "disjoint_paths",
    "edge_disjoint_ham_paths",
    "ham_cycle_dirac",
    "ham_path_between",
    "induced_subgraph",
    "is_k_connected",
    "kappa",
    "max_edge_disjoint_pairs",
    "min_vertex_cut",
    "parse_graph",
    "preserve_exact",
    "preserve_many",
    "preserve_one",
    "read_graph",
    "remove_edges",
    "verify_certificate",
    "write_edge_list",
]
