"""Finite normal-form games: equilibria, fragility, and dynamics.

Build a game from payoff tables (build_game), a text document
(parse_game / load_game), or the builtin catalog (builtin_game). Solve it
(solve_nash, zero_sum_value, enumerate_pure_nash), verify candidate
profiles (nash_residual, is_nash), probe how equilibria fare once
coalitions may deviate jointly (classify_equilibrium, cooperation_gain),
and run deviation walks over pure profiles (c1_walk, c2_walk).
"""

from .catalog import (
    battle_of_sexes,
    builtin_game,
    builtin_names,
    matching_pennies,
    prisoners_dilemma,
    public_goods,
    random_game,
    rock_paper_scissors,
    zero_sum,
)
from .dynamics import Trajectory, c1_walk, c2_walk, detect_cycle
from .gamefile import GameFormatError, load_game, parse_game, serialize_game
from .model import (
    Game,
    GameError,
    MixedProfile,
    MixedStrategy,
    PureProfile,
    build_game,
    deviation_payoffs,
    embed_pure,
    index_to_profile,
    mixed_payoff,
    mixed_profile,
    mixed_strategy,
    payoff,
    profile_index,
    profile_probability,
    replace_strategy,
)
from .rng import SplitMix64
from .solvers import (
    BudgetExceededError,
    EquilibriumNotFoundError,
    EquilibriumReport,
    NotZeroSumError,
    SolveConfig,
    SolverError,
    ZeroSumSolution,
    enumerate_pure_nash,
    is_best_strategy,
    is_nash,
    nash_residual,
    newton_support_search,
    replicator_search,
    solve_nash,
    support_enumeration_2p,
    zero_sum_value,
)
from .stability import (
    CooperationGainReport,
    FragilityReport,
    JointDeviation,
    MixedJointDeviation,
    NotAnEquilibriumError,
    classify_equilibrium,
    coalitions,
    cooperation_gain,
    find_pure_coalition_deviation,
    min_destabilizing_coalition,
    mixed_deviation_search,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "CooperationGainReport",
    "EquilibriumNotFoundError",
    "EquilibriumReport",
    "FragilityReport",
    "Game",
    "GameError",
    "GameFormatError",
    "JointDeviation",
    "MixedJointDeviation",
    "MixedProfile",
    "MixedStrategy",
    "NotAnEquilibriumError",
    "NotZeroSumError",
    "PureProfile",
    "SolveConfig",
    "SolverError",
    "SplitMix64",
    "Trajectory",
    "ZeroSumSolution",
    "battle_of_sexes",
    "build_game",
    "builtin_game",
    "builtin_names",
    "c1_walk",
    "c2_walk",
    "classify_equilibrium",
    "coalitions",
    "cooperation_gain",
    "detect_cycle",
    "deviation_payoffs",
    "embed_pure",
    "enumerate_pure_nash",
    "find_pure_coalition_deviation",
    "index_to_profile",
    "is_best_strategy",
    "is_nash",
    "load_game",
    "matching_pennies",
    "min_destabilizing_coalition",
    "mixed_deviation_search",
    "mixed_payoff",
    "mixed_profile",
    "mixed_strategy",
    "nash_residual",
    "newton_support_search",
    "parse_game",
    "payoff",
    "prisoners_dilemma",
    "profile_index",
    "profile_probability",
    "public_goods",
    "random_game",
    "replace_strategy",
    "replicator_search",
    "rock_paper_scissors",
    "serialize_game",
    "solve_nash",
    "support_enumeration_2p",
    "zero_sum",
    "zero_sum_value",
]
