"""Multipartite information of regions in zero-correlation-length topological phases."""

from ._core import (
    Boundary,
    CodeLattice,
    EntropyModel,
    Grid,
    StabilizerState,
    TopoError,
    adjacency_edges,
    annular_loop,
    connectivity_count,
    entanglement_vector,
    euler_characteristic,
    hole_constraint,
    hole_count,
    irreducible_correlation_bound,
    is_annular,
    multipartite_information,
    multipartite_information_exact,
    parse_grid,
    rasterize,
    recursion_residual,
    rho,
    run_scenario_file,
    run_suite,
    shapes,
    sigma_of_css,
    strong_subadditivity,
    subloop_revival,
    union_j,
    union_perimeter,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
