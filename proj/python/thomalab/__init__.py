"""Exact combinatorics, characters and tensor-model traces for the infinite
symmetric group.

Everything rational crosses the boundary as exact fraction strings like
"1/3"; see the project README for the full surface.
"""

from _thomalab import (  # noqa: F401
    ConfigError,
    ContractError,
    ModelOperator,
    ModelSpace,
    Permutation,
    ResourceCapError,
    antisymmetrizer_check,
    cesaro_A,
    character,
    character_table,
    conditional_E,
    eval_coxeter_word,
    eval_star_word,
    excursion_length,
    is_markov_params,
    limit_cycle_A,
    moment,
    multiply,
    n_derivative,
    orbits,
    represent,
    run_suite,
    shift,
    shift_endo,
    spectral_measure,
    star_word_of_cycle,
    stirling_sum,
    suite_names,
    trace,
    transition_R0,
)

__all__ = [
    "ConfigError",
    "ContractError",
    "ModelOperator",
    "ModelSpace",
    "Permutation",
    "ResourceCapError",
    "antisymmetrizer_check",
    "cesaro_A",
    "character",
    "character_table",
    "conditional_E",
    "eval_coxeter_word",
    "eval_star_word",
    "excursion_length",
    "is_markov_params",
    "limit_cycle_A",
    "moment",
    "multiply",
    "n_derivative",
    "orbits",
    "represent",
    "run_suite",
    "shift",
    "shift_endo",
    "spectral_measure",
    "star_word_of_cycle",
    "stirling_sum",
    "suite_names",
    "trace",
    "transition_R0",
]
