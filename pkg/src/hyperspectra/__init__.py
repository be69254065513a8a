"""Spectra of k-power hypergraphs via parity-closed walk counts.

The package computes the factored characteristic polynomial (all eigenvalue
multiplicities) of the k-uniform power of a graph from exact combinatorial
data: covering parity-closed walk counts of its motifs, occurrence counts of
those motifs, and the squared eigenvalues of its signed subgraphs.  Exact
brute-force oracles for every identity involved ship alongside the closed
forms; `hyperspectra verify` replays all of them.
"""

from .graphs import (
    Graph,
    Hypergraph,
    Motif,
    MotifCensus,
    canonical_certificate,
    complete_graph,
    connected_subgraph_census,
    cycle_graph,
    parse_graph,
    path_graph,
    power_hypergraph,
    star_graph,
)
from .walks import (
    WalkCount,
    closed_walk_count,
    covering_parity_closed_count,
    covering_parity_profile,
    parity_closed_count,
    parity_closed_profile,
)
from .signed import (
    RealSpectrum,
    SignedGraph,
    SigmaSet,
    char_poly_exact,
    eigenvalues,
    enumerate_signings,
    is_balanced,
    sigma_set,
    signed_spectral_moment,
)
from .digraphs import (
    Multidigraph,
    TraceTerm,
    arborescence_count,
    covering_parity_via_best,
    eulerian_walk_count,
    lift_from_core,
    moment_coefficient,
    naive_tensor_trace,
    reduce_to_core,
    spanning_tree_reduction_check,
    trace_terms,
)
from .spectrum import (
    FactoredSpectralFunction,
    MomentSystem,
    beta,
    build_system,
    char_poly_power,
    script_S,
    spectral_radius_multiplicity,
)
from .means import amgm_check, geometric_mean_evaluate, matching_polynomial
from .verify import VerifyReport, run_verify_suite

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "Hypergraph",
    "Motif",
    "MotifCensus",
    "Multidigraph",
    "RealSpectrum",
    "SignedGraph",
    "SigmaSet",
    "TraceTerm",
    "WalkCount",
    "FactoredSpectralFunction",
    "MomentSystem",
    "VerifyReport",
    "amgm_check",
    "arborescence_count",
    "beta",
    "build_system",
    "canonical_certificate",
    "char_poly_exact",
    "char_poly_power",
    "closed_walk_count",
    "complete_graph",
    "connected_subgraph_census",
    "covering_parity_closed_count",
    "covering_parity_profile",
    "covering_parity_via_best",
    "cycle_graph",
    "eigenvalues",
    "enumerate_signings",
    "eulerian_walk_count",
    "geometric_mean_evaluate",
    "is_balanced",
    "lift_from_core",
    "matching_polynomial",
    "moment_coefficient",
    "naive_tensor_trace",
    "parity_closed_count",
    "parity_closed_profile",
    "parse_graph",
    "path_graph",
    "power_hypergraph",
    "reduce_to_core",
    "run_verify_suite",
    "script_S",
    "sigma_set",
    "signed_spectral_moment",
    "spanning_tree_reduction_check",
    "spectral_radius_multiplicity",
    "star_graph",
    "trace_terms",
]
