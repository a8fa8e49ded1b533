"""Equilibrium predicates, enumeration, mixed solvers, zero-sum value."""

import math

import pytest

from nfgkit.catalog import (
    battle_of_sexes,
    matching_pennies,
    prisoners_dilemma,
    public_goods,
    random_game,
    rock_paper_scissors,
    zero_sum,
)
from nfgkit.model import (
    GameError,
    build_game,
    embed_pure,
    mixed_payoff,
    mixed_profile,
    payoff,
    replace_strategy,
)
from nfgkit.rng import SplitMix64
from nfgkit.solvers import (
    BudgetExceededError,
    EquilibriumNotFoundError,
    NotZeroSumError,
    SolveConfig,
    SolverError,
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

UNIFORM_2 = ((0.5, 0.5), (0.5, 0.5))


def _pure_nash_oracle(game):
    """Independent literal transcription of the no-unilateral-gain condition."""
    result = []
    for s in game.profiles():
        stable = True
        for j in range(1, game.player_count + 1):
            own = payoff(game, j, s)
            for alt in range(1, game.strategy_counts[j - 1] + 1):
                if payoff(game, j, replace_strategy(game, s, j, alt)) > own:
                    stable = False
                    break
            if not stable:
                break
        if stable:
            result.append(s)
    return result


# --- predicates ---


def test_is_best_strategy_pd():
    g = prisoners_dilemma()
    assert is_best_strategy(g, 1, 2)
    assert not is_best_strategy(g, 1, 1)


def test_is_best_strategy_matching_pennies():
    g = matching_pennies()
    assert not is_best_strategy(g, 1, 1)
    assert not is_best_strategy(g, 1, 2)


def test_is_best_strategy_range_errors():
    g = prisoners_dilemma()
    with pytest.raises(GameError):
        is_best_strategy(g, 3, 1)
    with pytest.raises(GameError):
        is_best_strategy(g, 1, 3)


def test_nash_residual_rps_uniform_is_zero():
    g = rock_paper_scissors()
    uniform = mixed_profile(g, [[1 / 3] * 3, [1 / 3] * 3])
    assert nash_residual(g, uniform) == 0.0


def test_nash_residual_pd_cooperate():
    g = prisoners_dilemma()
    assert nash_residual(g, embed_pure(g, (1, 1))) == 2.0


def test_nash_residual_never_negative():
    rng = SplitMix64(17)
    for trial in range(30):
        g = random_game(2, [2, 3], seed=trial)
        sigma = tuple(rng.interior_weights(m) for m in g.strategy_counts)
        assert nash_residual(g, sigma) >= 0.0


def test_is_nash_examples():
    g = prisoners_dilemma()
    assert is_nash(g, embed_pure(g, (2, 2)), 0.0)
    assert not is_nash(g, embed_pure(g, (1, 1)), 0.0)
    assert is_nash(matching_pennies(), UNIFORM_2, 1e-9)


def test_is_nash_rejects_negative_tol():
    with pytest.raises(GameError):
        is_nash(prisoners_dilemma(), UNIFORM_2, -1e-9)


# --- pure enumeration ---


def test_enumerate_pure_nash_examples():
    assert enumerate_pure_nash(prisoners_dilemma()) == [(2, 2)]
    assert enumerate_pure_nash(matching_pennies()) == []
    assert enumerate_pure_nash(battle_of_sexes()) == [(1, 1), (2, 2)]


def test_enumerate_pure_nash_sorted_by_index():
    g = build_game(2, [2, 2], [[0] * 4, [0] * 4])  # everything is an equilibrium
    assert enumerate_pure_nash(g) == [(1, 1), (1, 2), (2, 1), (2, 2)]


def test_enumerate_pure_nash_budget():
    with pytest.raises(BudgetExceededError, match="4 profiles"):
        enumerate_pure_nash(prisoners_dilemma(), budget=3)


def test_enumerate_pure_nash_matches_oracle():
    for trial in range(100):
        players = 2 + trial % 2
        sizes = [2 + trial % 3, 2, 3][:players]
        g = random_game(players, sizes, seed=1000 + trial)
        assert enumerate_pure_nash(g) == _pure_nash_oracle(g)


# --- support enumeration (2 players) ---


def test_support_enumeration_battle_of_sexes():
    reports = support_enumeration_2p(battle_of_sexes())
    assert len(reports) == 3
    profiles = [r.profile for r in reports]
    assert profiles[0] == ((1.0, 0.0), (1.0, 0.0))
    assert profiles[2] == ((0.0, 1.0), (0.0, 1.0))
    mixed = profiles[1]
    # oracle: indifference gives p = 2/3 (for player 2) and q = 1/3
    assert abs(mixed[0][0] - 2 / 3) <= 1e-9
    assert abs(mixed[1][0] - 1 / 3) <= 1e-9
    assert abs(reports[1].payoffs[0] - 2 / 3) <= 1e-9
    assert abs(reports[1].payoffs[1] - 2 / 3) <= 1e-9
    assert all(r.residual <= 1e-9 for r in reports)


def test_support_enumeration_matching_pennies():
    reports = support_enumeration_2p(matching_pennies())
    assert len(reports) == 1
    assert reports[0].profile == UNIFORM_2
    assert reports[0].residual == 0.0
    assert reports[0].method == "support-enumeration"


def test_support_enumeration_pd_only_defection():
    reports = support_enumeration_2p(prisoners_dilemma())
    assert len(reports) == 1
    assert reports[0].profile == ((0.0, 1.0), (0.0, 1.0))
    assert reports[0].is_pure


def test_support_enumeration_rejects_wrong_player_count():
    with pytest.raises(SolverError):
        support_enumeration_2p(public_goods())


def test_support_enumeration_cap():
    g = random_game(2, [9, 2], seed=1)
    with pytest.raises(BudgetExceededError):
        support_enumeration_2p(g)


def test_support_enumeration_deterministic_on_degenerate_game():
    g = build_game(2, [2, 2], [[0] * 4, [0] * 4])
    first = support_enumeration_2p(g)
    second = support_enumeration_2p(g)
    assert first == second
    assert all(r.residual == 0.0 for r in first)


# --- newton support search (n >= 2) ---


def test_newton_finds_public_goods_defection():
    reports = newton_support_search(public_goods())
    assert len(reports) == 1
    assert reports[0].profile == ((0.0, 1.0), (0.0, 1.0), (0.0, 1.0))
    assert reports[0].is_pure
    assert reports[0].method == "newton-support"


def test_newton_pd_only_defection():
    reports = newton_support_search(prisoners_dilemma())
    assert len(reports) == 1
    assert reports[0].profile == ((0.0, 1.0), (0.0, 1.0))


def test_newton_rps_uniform():
    reports = newton_support_search(rock_paper_scissors())
    assert len(reports) == 1
    third = 1 / 3
    for weights in reports[0].profile:
        assert all(abs(w - third) <= 1e-9 for w in weights)
    assert reports[0].residual <= 1e-6


def test_newton_combo_budget():
    g = random_game(3, [3, 3, 3], seed=2)
    with pytest.raises(BudgetExceededError):
        newton_support_search(g, max_support=3, combo_budget=10)


# --- replicator fallback ---


def test_replicator_pd_converges():
    for seed in (0, 1, 2):
        report = replicator_search(prisoners_dilemma(), seed=seed)
        assert report.residual <= 1e-6
        assert report.profile[0][1] > 0.999
        assert report.profile[1][1] > 0.999


def test_replicator_public_goods_converges():
    report = replicator_search(public_goods(), seed=0)
    assert report.residual <= 1e-6
    for weights in report.profile:
        assert weights[1] > 0.999


def test_replicator_always_reports_true_residual():
    # matching pennies may orbit; the contract is an honest residual
    report = replicator_search(matching_pennies(), seed=0, starts=2, max_iters=50)
    assert report.method == "replicator"
    recomputed = nash_residual(matching_pennies(), report.profile)
    assert abs(report.residual - recomputed) <= 1e-12


def test_replicator_rejects_zero_starts():
    with pytest.raises(GameError):
        replicator_search(prisoners_dilemma(), seed=0, starts=0)


# --- dispatcher ---


def test_solve_nash_pd():
    report = solve_nash(prisoners_dilemma())
    assert report.method == "pure-enumeration"
    assert report.residual == 0.0
    assert report.profile == ((0.0, 1.0), (0.0, 1.0))
    assert report.payoffs == (1.0, 1.0)


def test_solve_nash_matching_pennies():
    report = solve_nash(matching_pennies())
    assert report.method == "support-enumeration"
    assert report.profile == UNIFORM_2
    assert report.residual <= 1e-9


def test_solve_nash_random_3x3x3():
    report = solve_nash(random_game(3, [3, 3, 3], seed=42))
    assert report.residual <= 1e-6
    assert abs(nash_residual(random_game(3, [3, 3, 3], seed=42), report.profile) - report.residual) <= 1e-12


def test_solve_nash_deterministic():
    cfg = SolveConfig(seed=9)
    a = solve_nash(random_game(3, [2, 3, 2], seed=30), cfg)
    b = solve_nash(random_game(3, [2, 3, 2], seed=30), cfg)
    assert a == b


def test_solve_nash_lp_minimax_beyond_support_cap():
    # 9x9 zero-sum parity game: no pure saddle, support enumeration over cap
    size = 9
    table = [
        1.0 if (i + j) % 2 == 0 else -1.0 for i in range(size) for j in range(size)
    ]
    g = build_game(2, [size, size], [table, [-v for v in table]])
    assert enumerate_pure_nash(g) == []
    report = solve_nash(g)
    assert report.method == "lp-minimax"
    assert report.residual <= 1e-6


def test_solve_nash_reports_best_residual_on_failure():
    # starve every stage: pure and support budgets too small, game not
    # zero-sum, replicator cut to one coarse start with an unreachable tol
    cfg = SolveConfig(
        tol=1e-15,
        pure_budget=1,
        support_cap=1,
        replicator_starts=1,
        replicator_iters=1,
    )
    with pytest.raises(EquilibriumNotFoundError) as excinfo:
        solve_nash(battle_of_sexes(), cfg)
    assert excinfo.value.best_residual > 0.0
    assert math.isfinite(excinfo.value.best_residual)


# --- soundness and structural properties ---


def test_report_residuals_recompute_exactly():
    cases = [
        (prisoners_dilemma(), solve_nash(prisoners_dilemma())),
        (matching_pennies(), solve_nash(matching_pennies())),
        (public_goods(), solve_nash(public_goods())),
    ]
    for game, report in cases:
        assert abs(nash_residual(game, report.profile) - report.residual) <= 1e-12
        for j in range(1, game.player_count + 1):
            assert abs(mixed_payoff(game, j, report.profile) - report.payoffs[j - 1]) <= 1e-12


def test_dominance_implies_nash():
    # a best strategy for every player combines into a tol-0 equilibrium
    for g in (prisoners_dilemma(), public_goods()):
        choice = []
        for j in range(1, g.player_count + 1):
            best = [
                s
                for s in range(1, g.strategy_counts[j - 1] + 1)
                if is_best_strategy(g, j, s)
            ]
            assert best, f"player {j} has no best strategy"
            choice.append(best[0])
        assert is_nash(g, embed_pure(g, tuple(choice)), 0.0)


def test_residual_invariant_under_single_player_shift():
    rng = SplitMix64(7)
    g = random_game(2, [3, 3], seed=12)
    shifted = build_game(
        2,
        [3, 3],
        [[v + 4.25 for v in g.payoffs[0]], list(g.payoffs[1])],
    )
    for _ in range(20):
        sigma = tuple(rng.interior_weights(m) for m in g.strategy_counts)
        assert abs(nash_residual(g, sigma) - nash_residual(shifted, sigma)) <= 1e-9


def test_residual_scales_with_positive_scaling():
    rng = SplitMix64(8)
    g = random_game(2, [3, 3], seed=13)
    lam = 3.5
    scaled = build_game(
        2, [3, 3], [[lam * v for v in table] for table in g.payoffs]
    )
    for _ in range(20):
        sigma = tuple(rng.interior_weights(m) for m in g.strategy_counts)
        assert abs(nash_residual(scaled, sigma) - lam * nash_residual(g, sigma)) <= 1e-9


# --- zero-sum value ---


def test_zero_sum_matching_pennies():
    solution = zero_sum_value(matching_pennies())
    assert abs(solution.value) <= 1e-9
    assert all(abs(w - 0.5) <= 1e-9 for w in solution.row_strategy)
    assert all(abs(w - 0.5) <= 1e-9 for w in solution.column_strategy)


def test_zero_sum_mixed_example():
    solution = zero_sum_value(zero_sum([[3, 1], [0, 2]]))
    assert abs(solution.value - 1.5) <= 1e-9
    assert abs(solution.row_strategy[0] - 0.5) <= 1e-9
    assert abs(solution.column_strategy[0] - 0.25) <= 1e-9


def test_zero_sum_pure_saddle():
    solution = zero_sum_value(zero_sum([[2, 3], [0, 1]]))
    assert abs(solution.value - 2.0) <= 1e-9
    assert abs(solution.row_strategy[0] - 1.0) <= 1e-9
    assert abs(solution.column_strategy[0] - 1.0) <= 1e-9


def test_zero_sum_rejects_nonzero_sum():
    with pytest.raises(NotZeroSumError):
        zero_sum_value(prisoners_dilemma())


def test_zero_sum_rejects_wrong_player_count():
    with pytest.raises(NotZeroSumError):
        zero_sum_value(public_goods())


def test_zero_sum_antisymmetry():
    rng = SplitMix64(44)
    for trial in range(20):
        rows = 2 + rng.randrange(3)
        cols = 2 + rng.randrange(3)
        matrix = [
            [rng.uniform(-2.0, 2.0) for _ in range(cols)] for _ in range(rows)
        ]
        v = zero_sum_value(zero_sum(matrix)).value
        swapped = [[-matrix[i][j] for i in range(rows)] for j in range(cols)]
        w = zero_sum_value(zero_sum(swapped)).value
        assert abs(v + w) <= 1e-9, f"trial {trial}"


def test_zero_sum_equilibrium_payoff_matches_value():
    rng = SplitMix64(45)
    for trial in range(20):
        rows = 2 + rng.randrange(3)
        cols = 2 + rng.randrange(3)
        matrix = [
            [rng.uniform(-1.0, 1.0) for _ in range(cols)] for _ in range(rows)
        ]
        g = zero_sum(matrix)
        v = zero_sum_value(g).value
        for report in support_enumeration_2p(g):
            assert abs(report.payoffs[0] - v) <= 1e-7, f"trial {trial}"


def test_zero_sum_solution_strategies_are_equilibrium():
    g = zero_sum([[1.0, -1.0], [-2.0, 3.0]])
    solution = zero_sum_value(g)
    profile = (solution.row_strategy, solution.column_strategy)
    assert nash_residual(g, profile) <= 1e-9
    # hand oracle: indifference gives row (5/7, 2/7), column (4/7, 3/7)
    assert abs(solution.row_strategy[0] - 5 / 7) <= 1e-9
    assert abs(solution.column_strategy[0] - 4 / 7) <= 1e-9
    assert abs(solution.value - 1 / 7) <= 1e-9
