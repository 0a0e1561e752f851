"""Uniform random width-2 posets through non-hitting walk pairs.

The package provides the two-chain-cover walk encoding of one-factor width-2
posets, exact counting and exact uniform sampling of the walk space, brute
force enumeration oracles at small n, and Monte Carlo experiments against the
scaling limit laws of the incomparability window and the height.
"""

from .counting import CountTable, count, count_up_to, m_decomposition_total, m_weights_exact
from .cover import (
    GreedyPair,
    TwoChainCover,
    chain_partition_covers,
    cover_as_poset,
    cover_from_json,
    cover_to_json,
    gamma,
    gamma_inverse,
    greedy_pair,
    is_greedy_pair,
    psi,
    swap_chains,
)
from .experiments import (
    ErrScalingReport,
    ExperimentResult,
    experiment_avg_window,
    experiment_err_scaling,
    experiment_height,
    experiment_window,
    sampler_agreement,
)
from .laws import (
    ReferenceLaw,
    excursion_area,
    half_normal_height,
    half_normal_height_consistent,
    ks_distance,
    ks_pvalue,
    rayleigh_window,
    rayleigh_window_consistent,
    two_sample_ks,
)
from .poset import (
    IncompGraph,
    Poset,
    Violation,
    antichain,
    chain,
    factors,
    factors_with_elements,
    height,
    incomparability_graph,
    max_antichain_size,
    poset_from_json,
    poset_to_json,
    tau,
    validate,
    width,
    window,
)
from .sampling import (
    DecomposedSampler,
    DPSampler,
    LazyExcursion,
    sample_decomposed,
    sample_dp,
    stream_rng,
    uniform_nonneg_path,
    uniform_strict_excursion,
)
from .walks import (
    WalkPair,
    area,
    element_err_bound,
    err_bound,
    height_fn,
    height_from_walks,
    heights,
    longest_chain_from_walks,
    intercept_windows,
    involute,
    tau_walk,
    walk_from_json,
    walk_from_text,
    walk_to_json,
    walk_to_text,
)

__version__ = "0.1.0"
