"""Walsh-Paley analysis on the dyadic group.

Arrays are indexed by cell: bit k of an index is the k-th coordinate of the
point. 1D arrays have length 2^N and 2D arrays are 2^N x 2^N.
"""

from ._core import (
    InvalidArgument,
    conditional_expectation,
    counterexample,
    diagonal_average,
    dirichlet_kernel,
    divergence_experiment,
    forward,
    hp_quasinorm,
    integrate,
    inverse,
    kernel_identities,
    lp_quasinorm,
    maximal_function,
    partial_sum,
    partial_sum_rect,
    random_atom,
    select_alphas,
    simon_1d_sum,
    theorem1_sum,
    theoremG_sum,
    walsh_function,
    weak_lp_quasinorm,
)

__all__ = [
    "InvalidArgument",
    "conditional_expectation",
    "counterexample",
    "diagonal_average",
    "dirichlet_kernel",
    "divergence_experiment",
    "forward",
    "hp_quasinorm",
    "integrate",
    "inverse",
    "kernel_identities",
    "lp_quasinorm",
    "maximal_function",
    "partial_sum",
    "partial_sum_rect",
    "random_atom",
    "select_alphas",
    "simon_1d_sum",
    "theorem1_sum",
    "theoremG_sum",
    "walsh_function",
    "weak_lp_quasinorm",
]
