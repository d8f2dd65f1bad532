"""Solvers for multi-dimensional energy parity games and related games.

The chain energy parity -> extended energy -> bounding -> perfect half
space -> lexicographic energy -> mean payoff is implemented module by
module; :mod:`phsgames.pipeline` and :mod:`phsgames.cli` tie it together.
"""

from .bounding import BoundingResult, bounded_safety_oracle, lasso_bounding_winner, solve_bounding
from .energy_parity import (
    Credit,
    ReductionCertificate,
    capped_energy_parity_oracle,
    lasso_energy_parity_winner,
    reduce_extended_to_bounding,
    reduce_parity_to_extended,
    solve_arbitrary_credit,
)
from .graph import (
    OMEGA,
    GameError,
    GameInvariantError,
    GameSyntaxError,
    Lasso,
    MultiWeightedGameGraph,
    ResourceCapError,
    cycle_decompose,
    export_dot,
    load_game,
    normalize,
    parse_game,
    parse_lasso,
    path_weight,
    random_game,
    serialize_game,
    validate,
)
from .halfspaces import (
    HalfSpaceRep,
    contains,
    dot_sequence,
    enumerate_perfect_half_spaces,
    flag_vector,
    interleave,
    lex_compare,
    longest_common_prefix,
)
from .lexenergy import EncodedGraph, encode_lex_to_mpg, lasso_lex_energy_winner, solve_lex_energy
from .mpg import MeanPayoffResult, brute_force_mpg, compute_values, min_cycle_mean, solve_threshold
from .phs import (
    ProductArena,
    ProductStrategy,
    build_phs_arena,
    check_p2_strategy,
    lasso_phs_winner,
    make_oblivious,
    solve_phs_game,
    translate_phs_to_lexen,
)
from .pipeline import Report, SolveConfig, solve

PLAYER1, PLAYER2 = 1, 2

__version__ = "0.1.0"
