"""Robust graph asymmetry toolkit: random graph models, exact and heuristic
robustness profiles over k-permutations, and structural property checks."""

from ._core import (
    AsymmetryProfile,
    DeltaEntry,
    DomainError,
    Graph,
    IoError,
    Permutation,
    SearchParams,
    apply_perm,
    check_avg_degree,
    check_common_neighbors,
    check_small_k_bound,
    check_small_set_density,
    count_k_perms,
    covered_edges,
    default_degree_floor,
    degree_stats,
    derangement_count,
    dist,
    dist_perm,
    enumerate_k_perms,
    exact_delta_2,
    exact_delta_k,
    exact_profile,
    gen_gnp,
    gen_gnpd,
    has_nontrivial_automorphism,
    heuristic_delta_k,
    induced_edge_count,
    is_delta_asymmetric,
    placement_exact_sweep,
    max_common_neighbors,
    mc_covered_edges,
    mc_edge_probability,
    mc_placement_expectation,
    sample_k_perm,
)

__all__ = [name for name in dir() if not name.startswith("_")]
