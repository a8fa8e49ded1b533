"""Equilibrium computation and verification.

The residual of a profile is the largest payoff any single player could
gain by switching to one of their pure strategies, floored at zero; a
profile is an equilibrium exactly when its residual is zero (pure
deviations suffice because expected payoff is linear in each player's own
weights). Solvers here never report a residual they have not recomputed.

Methods, in the order solve_nash tries them:
  pure-enumeration    exhaustive scan of pure profiles (exact comparisons)
  support-enumeration 2-player scan of all support pairs via linear solves
  newton-support      n-player damped Newton on per-support indifference
  lp-minimax          2-player zero-sum value via the simplex kernel
  replicator          multiplicative-weights descent, best effort
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .model import (
    Game,
    GameError,
    MixedProfile,
    MixedStrategy,
    PureProfile,
    deviation_payoffs,
    embed_pure,
    mixed_payoff,
    payoff,
    profile_index,
    replace_strategy,
)
from .rng import SplitMix64
from .simplex import LpError, lp_solve, solve_linear_system

EXACT_TOL = 1e-9  # acceptance for solutions of linear systems
ITERATIVE_TOL = 1e-6  # acceptance for Newton / replicator candidates
DEDUP_TOL = 1e-7  # L-infinity distance treated as the same equilibrium


class SolverError(RuntimeError):
    """Base class for solver failures."""


class BudgetExceededError(SolverError):
    """An enumeration would exceed its configured budget."""


class NotZeroSumError(SolverError):
    """zero_sum_value was given a game that is not 2-player zero-sum."""


class EquilibriumNotFoundError(SolverError):
    """All solver stages exhausted without meeting the tolerance.

    Equilibria always exist in mixed strategies, so this signals an
    insufficient budget, not nonexistence; best_residual records how close
    the search came.
    """

    def __init__(self, message: str, best_residual: float) -> None:
        super().__init__(message)
        self.best_residual = best_residual


@dataclass(frozen=True)
class EquilibriumReport:
    """A candidate equilibrium with its independently recomputed residual."""

    profile: MixedProfile
    payoffs: tuple[float, ...]
    residual: float
    is_pure: bool
    method: str


@dataclass(frozen=True)
class ZeroSumSolution:
    """Value and optimal strategies of a 2-player zero-sum game."""

    value: float
    row_strategy: MixedStrategy
    column_strategy: MixedStrategy


@dataclass
class SolveConfig:
    """Budgets and tolerances for solve_nash."""

    tol: float = ITERATIVE_TOL
    seed: int = 0
    pure_budget: int = 10_000_000
    support_cap: int = 8
    max_support: int = 3
    combo_budget: int = 20_000
    replicator_starts: int = 10
    replicator_iters: int = 2000


def nash_residual(game: Game, mixed: MixedProfile) -> float:
    """Largest unilateral gain available at the profile, floored at 0."""
    eps = 0.0
    for j in range(1, game.player_count + 1):
        dev = deviation_payoffs(game, j, mixed)
        expected = sum(w * d for w, d in zip(mixed[j - 1], dev))
        gain = max(dev) - expected
        if gain > eps:
            eps = gain
    return eps


def is_nash(game: Game, mixed: MixedProfile, tol: float) -> bool:
    """Whether no player can gain more than tol by deviating alone."""
    if tol < 0:
        raise GameError(f"tolerance must be >= 0 (got {tol})")
    return nash_residual(game, mixed) <= tol


def is_best_strategy(game: Game, player: int, strategy: int) -> bool:
    """Whether `strategy` is optimal for `player` against every opponent
    combination (exhaustive, exact comparisons)."""
    game.check_player(player)
    m = game.strategy_counts[player - 1]
    if not 1 <= strategy <= m:
        raise GameError(f"player {player}: strategy {strategy} out of range 1..{m}")
    for profile in game.profiles():
        base = payoff(game, player, replace_strategy(game, profile, player, strategy))
        for alt in range(1, m + 1):
            if payoff(game, player, replace_strategy(game, profile, player, alt)) > base:
                return False
    return True


def enumerate_pure_nash(game: Game, budget: int = 10_000_000) -> list[PureProfile]:
    """All pure profiles where no player gains by a unilateral switch.

    Exact comparisons on stored payoffs; output sorted by profile index.
    """
    if game.profile_count > budget:
        raise BudgetExceededError(
            f"{game.profile_count} profiles exceed the budget of {budget}"
        )
    found = []
    for profile in game.profiles():
        if _pure_profile_is_nash(game, profile):
            found.append(profile)
    return found


def _pure_profile_is_nash(game: Game, profile: PureProfile) -> bool:
    for j in range(1, game.player_count + 1):
        current = payoff(game, j, profile)
        for alt in range(1, game.strategy_counts[j - 1] + 1):
            if payoff(game, j, replace_strategy(game, profile, j, alt)) > current:
                return False
    return True


def _report(game: Game, mixed: MixedProfile, method: str) -> EquilibriumReport:
    residual = nash_residual(game, mixed)
    pays = tuple(mixed_payoff(game, i, mixed) for i in range(1, game.player_count + 1))
    pure = all(all(w in (0.0, 1.0) for w in weights) for weights in mixed)
    return EquilibriumReport(
        profile=mixed, payoffs=pays, residual=residual, is_pure=pure, method=method
    )


def _support_key(mixed: MixedProfile) -> tuple:
    supports = tuple(
        tuple(k + 1 for k, w in enumerate(weights) if w > 0.0) for weights in mixed
    )
    return (supports, mixed)


def _dedup_and_sort(reports: list[EquilibriumReport]) -> list[EquilibriumReport]:
    reports = sorted(reports, key=lambda r: _support_key(r.profile))
    kept: list[EquilibriumReport] = []
    for report in reports:
        flat = [w for weights in report.profile for w in weights]
        duplicate = False
        for other in kept:
            other_flat = [w for weights in other.profile for w in weights]
            if max(abs(a - b) for a, b in zip(flat, other_flat)) < DEDUP_TOL:
                duplicate = True
                break
        if not duplicate:
            kept.append(report)
    return kept


def _solve_support_weights(
    table: list[list[float]], support: tuple[int, ...], opp_support: tuple[int, ...]
) -> list[float] | None:
    """Weights on `support` making the opponent indifferent across
    `opp_support`, from the linear indifference-plus-normalization system.

    `table[k][l]` is the opponent's payoff when this player plays their
    k-th support strategy and the opponent plays their l-th.
    """
    if len(support) == 1:
        return [1.0]
    rows = []
    rhs = []
    for l in range(len(opp_support)):
        rows.append([table[k][l] for k in range(len(support))] + [-1.0])
        rhs.append(0.0)
    rows.append([1.0] * len(support) + [0.0])
    rhs.append(1.0)
    solution = solve_linear_system(rows, rhs)
    if solution is None:
        return None
    return solution[: len(support)]


def support_enumeration_2p(game: Game, support_cap: int = 8) -> list[EquilibriumReport]:
    """All equilibria of a 2-player game found by scanning support pairs.

    Considers every pair of nonempty supports (sizes need not match, so
    degenerate games are admitted; one canonical representative is kept per
    support pair). Candidates must have support weights >= -1e-9 (clamped),
    and residual <= 1e-9 after renormalization.
    """
    if game.player_count != 2:
        raise SolverError(
            f"support enumeration needs exactly 2 players (got {game.player_count})"
        )
    m1, m2 = game.strategy_counts
    if max(m1, m2) > support_cap:
        raise BudgetExceededError(
            f"strategy counts {m1}x{m2} exceed the support cap of {support_cap}"
        )

    supports1 = _all_supports(m1)
    supports2 = _all_supports(m2)
    reports = []
    for sup1, sup2 in itertools.product(supports1, supports2):
        # player 1's weights leave player 2 indifferent across sup2, and
        # symmetrically; singleton supports are trivially weight 1.
        table2 = [[payoff(game, 2, (i, j)) for j in sup2] for i in sup1]
        table1 = [[payoff(game, 1, (i, j)) for i in sup1] for j in sup2]
        w1 = _solve_support_weights(table2, sup1, sup2)
        if w1 is None:
            continue
        w2 = _solve_support_weights(table1, sup2, sup1)
        if w2 is None:
            continue
        s1 = _expand_weights(w1, sup1, m1)
        s2 = _expand_weights(w2, sup2, m2)
        if s1 is None or s2 is None:
            continue
        candidate = (s1, s2)
        report = _report(game, candidate, "support-enumeration")
        if report.residual <= EXACT_TOL:
            reports.append(report)
    return _dedup_and_sort(reports)


def _all_supports(m: int) -> list[tuple[int, ...]]:
    out = []
    for size in range(1, m + 1):
        out.extend(itertools.combinations(range(1, m + 1), size))
    return out


def _expand_weights(
    weights: list[float], support: tuple[int, ...], m: int
) -> MixedStrategy | None:
    """Full-length strategy from support weights; None if any weight is
    meaningfully negative. Small negatives are clamped and the vector
    renormalized."""
    if any(w < -EXACT_TOL for w in weights):
        return None
    clamped = [max(w, 0.0) for w in weights]
    total = sum(clamped)
    if total <= 0.0:
        return None
    full = [0.0] * m
    for idx, w in zip(support, clamped):
        full[idx - 1] = w / total
    return tuple(full)


# --- n-player Newton search over support combinations ---


def _pair_payoffs(
    game: Game, player: int, other: int, mixed: MixedProfile
) -> list[list[float]]:
    """Expected payoff to `player` for each (own pure k, other's pure l),
    remaining players drawn from the mixed profile."""
    p = player - 1
    q = other - 1
    counts = game.strategy_counts
    strides = game.strides
    rest = [i for i in range(game.player_count) if i not in (p, q)]
    table = game.payoffs[p]
    out = [[0.0] * counts[q] for _ in range(counts[p])]
    for combo in itertools.product(*(range(counts[i]) for i in rest)):
        w = 1.0
        for i, c in zip(rest, combo):
            w *= mixed[i][c]
            if w == 0.0:
                break
        if w == 0.0:
            continue
        base = sum(strides[i] * c for i, c in zip(rest, combo))
        for k in range(counts[p]):
            row_base = base + k * strides[p]
            row = out[k]
            for l in range(counts[q]):
                row[l] += w * table[row_base + l * strides[q]]
    return out


class _SupportSystem:
    """Indifference-plus-normalization equations restricted to one support
    combination: every on-support strategy earns its player's value, and
    each player's support weights sum to one."""

    def __init__(self, game: Game, supports: tuple[tuple[int, ...], ...]) -> None:
        self.game = game
        self.supports = supports
        self.n = game.player_count
        self.weight_count = sum(len(s) for s in supports)
        # variable layout: all support weights player by player, then values
        self.offsets = []
        offset = 0
        for s in supports:
            self.offsets.append(offset)
            offset += len(s)

    def profile(self, x: list[float]) -> MixedProfile:
        out = []
        for i, support in enumerate(self.supports):
            weights = [0.0] * self.game.strategy_counts[i]
            for k, strat in enumerate(support):
                weights[strat - 1] = x[self.offsets[i] + k]
            out.append(tuple(weights))
        return tuple(out)

    def residual_vector(self, x: list[float]) -> list[float]:
        mixed = self.profile(x)
        g = []
        for i, support in enumerate(self.supports):
            dev = deviation_payoffs(self.game, i + 1, mixed)
            v = x[self.weight_count + i]
            for strat in support:
                g.append(dev[strat - 1] - v)
        for i, support in enumerate(self.supports):
            total = sum(x[self.offsets[i] + k] for k in range(len(support)))
            g.append(total - 1.0)
        return g

    def jacobian(self, x: list[float]) -> list[list[float]]:
        mixed = self.profile(x)
        size = self.weight_count + self.n
        rows: list[list[float]] = []
        pair_cache: dict[tuple[int, int], list[list[float]]] = {}
        for i, support in enumerate(self.supports):
            for strat in support:
                row = [0.0] * size
                for j, opp_support in enumerate(self.supports):
                    if j == i:
                        continue  # own weights never enter own deviation payoff
                    if (i, j) not in pair_cache:
                        pair_cache[(i, j)] = _pair_payoffs(self.game, i + 1, j + 1, mixed)
                    pair = pair_cache[(i, j)]
                    for l, opp_strat in enumerate(opp_support):
                        row[self.offsets[j] + l] = pair[strat - 1][opp_strat - 1]
                row[self.weight_count + i] = -1.0
                rows.append(row)
        for i, support in enumerate(self.supports):
            row = [0.0] * size
            for k in range(len(support)):
                row[self.offsets[i] + k] = 1.0
            rows.append(row)
        return rows


def _newton_solve_support(
    game: Game, supports: tuple[tuple[int, ...], ...], max_iters: int = 200
) -> MixedProfile | None:
    """Damped Newton from the uniform-on-support start; None on failure."""
    system = _SupportSystem(game, supports)
    x = []
    for support in supports:
        x.extend([1.0 / len(support)] * len(support))
    start_profile = system.profile(x)
    for i in range(game.player_count):
        dev = deviation_payoffs(game, i + 1, start_profile)
        x.append(
            sum(dev[s - 1] for s in supports[i]) / len(supports[i])
        )
    g = system.residual_vector(x)
    norm = max(abs(v) for v in g)
    for _ in range(max_iters):
        if norm <= 1e-12:
            break
        step = solve_linear_system(system.jacobian(x), [-v for v in g])
        if step is None:
            return None
        # halve the step until the residual norm decreases
        alpha = 1.0
        improved = False
        for _ in range(30):
            trial = [xi + alpha * si for xi, si in zip(x, step)]
            trial_g = system.residual_vector(trial)
            trial_norm = max(abs(v) for v in trial_g)
            if trial_norm < norm:
                x, g, norm = trial, trial_g, trial_norm
                improved = True
                break
            alpha *= 0.5
        if not improved:
            return None
    if norm > 1e-9:
        return None
    weights = x[: system.weight_count]
    if any(w < -EXACT_TOL for w in weights):
        return None
    out = []
    for i, support in enumerate(supports):
        raw = [max(x[system.offsets[i] + k], 0.0) for k in range(len(support))]
        total = sum(raw)
        if total <= 0.0:
            return None
        full = [0.0] * game.strategy_counts[i]
        for strat, w in zip(support, raw):
            full[strat - 1] = w / total
        out.append(tuple(full))
    return tuple(out)


def _support_combinations(
    game: Game, max_support: int, budget: int
) -> list[tuple[tuple[int, ...], ...]]:
    per_player = []
    for m in game.strategy_counts:
        sizes = min(m, max_support)
        supports = []
        for size in range(1, sizes + 1):
            supports.extend(itertools.combinations(range(1, m + 1), size))
        per_player.append(supports)
    total = math.prod(len(s) for s in per_player)
    if total > budget:
        raise BudgetExceededError(
            f"{total} support combinations exceed the budget of {budget}"
        )
    combos = list(itertools.product(*per_player))
    # small totals first: pure and near-pure candidates are cheapest
    combos.sort(key=lambda c: (sum(len(s) for s in c), c))
    return combos


def newton_support_search(
    game: Game,
    max_support: int = 3,
    seed: int = 0,
    combo_budget: int = 20_000,
    stop_after: int | None = None,
    tol: float = ITERATIVE_TOL,
) -> list[EquilibriumReport]:
    """Equilibrium candidates from damped Newton runs on every support
    combination with per-player sizes up to max_support.

    Failed combinations are skipped silently; accepted candidates have
    residual <= tol. Deterministic for a given seed (the seed is reserved
    for future randomized restarts; the base sweep never draws from it).
    """
    combos = _support_combinations(game, max_support, combo_budget)
    reports = []
    for supports in combos:
        candidate = _newton_solve_support(game, supports)
        if candidate is None:
            continue
        report = _report(game, candidate, "newton-support")
        if report.residual <= tol:
            reports.append(report)
            if stop_after is not None and len(reports) >= stop_after:
                break
    return _dedup_and_sort(reports)


def replicator_search(
    game: Game,
    seed: int = 0,
    starts: int = 10,
    max_iters: int = 2000,
    tol: float = ITERATIVE_TOL,
) -> EquilibriumReport:
    """Discrete-time replicator descent from seeded interior starts.

    Per-player payoffs are shifted so all fitnesses are >= 1 before each
    multiplicative update. Always returns the best candidate found with its
    true residual; convergence is not guaranteed and the residual is the
    contract.
    """
    if starts < 1:
        raise GameError(f"starts must be >= 1 (got {starts})")
    rng = SplitMix64(seed)
    shifts = [
        1.0 - min(table) if min(table) < 1.0 else 0.0 for table in game.payoffs
    ]
    best: MixedProfile | None = None
    best_residual = math.inf
    for _ in range(starts):
        current: list[MixedStrategy] = [
            rng.interior_weights(m) for m in game.strategy_counts
        ]
        for _ in range(max_iters):
            profile = tuple(current)
            worst_gain = 0.0
            fitness_rows = []
            for i in range(game.player_count):
                dev = deviation_payoffs(game, i + 1, profile)
                expected = sum(w * d for w, d in zip(current[i], dev))
                gain = max(dev) - expected
                if gain > worst_gain:
                    worst_gain = gain
                fitness_rows.append([d + shifts[i] for d in dev])
            if worst_gain < best_residual:
                best = profile
                best_residual = worst_gain
            if worst_gain <= tol:
                break
            for i in range(game.player_count):
                weighted = [w * f for w, f in zip(current[i], fitness_rows[i])]
                total = sum(weighted)
                current[i] = tuple(w / total for w in weighted)
        if best_residual <= tol:
            break
    assert best is not None
    return _report(game, best, "replicator")


def solve_nash(game: Game, config: SolveConfig | None = None) -> EquilibriumReport:
    """Find one equilibrium with residual <= config.tol.

    Tries pure enumeration, then support enumeration (2 players) or Newton
    support search (3 or more), then the zero-sum LP when applicable, then
    the replicator fallback. Raises EquilibriumNotFoundError with the best
    residual seen if every stage falls short (a budget problem; equilibria
    always exist).
    """
    cfg = config or SolveConfig()
    best_residual = math.inf

    try:
        pure = enumerate_pure_nash(game, cfg.pure_budget)
    except BudgetExceededError:
        pure = []
    if pure:
        report = _report(game, embed_pure(game, pure[0]), "pure-enumeration")
        if report.residual <= cfg.tol:
            return report
        best_residual = min(best_residual, report.residual)

    if game.player_count == 2:
        try:
            for report in support_enumeration_2p(game, cfg.support_cap):
                if report.residual <= cfg.tol:
                    return report
                best_residual = min(best_residual, report.residual)
        except BudgetExceededError:
            pass
    else:
        try:
            for report in newton_support_search(
                game,
                cfg.max_support,
                cfg.seed,
                cfg.combo_budget,
                stop_after=1,
                tol=cfg.tol,
            ):
                if report.residual <= cfg.tol:
                    return report
                best_residual = min(best_residual, report.residual)
        except BudgetExceededError:
            pass

    if game.player_count == 2 and _is_zero_sum(game):
        try:
            solution = zero_sum_value(game)
            report = _report(
                game, (solution.row_strategy, solution.column_strategy), "lp-minimax"
            )
            if report.residual <= cfg.tol:
                return report
            best_residual = min(best_residual, report.residual)
        except (SolverError, LpError):
            pass

    report = replicator_search(
        game, cfg.seed, cfg.replicator_starts, cfg.replicator_iters, cfg.tol
    )
    if report.residual <= cfg.tol:
        return report
    best_residual = min(best_residual, report.residual)
    raise EquilibriumNotFoundError(
        f"no equilibrium within tolerance {cfg.tol}; best residual {best_residual}"
        " (equilibria exist; raise the budgets)",
        best_residual,
    )


# --- 2-player zero-sum value via linear programming ---


def _is_zero_sum(game: Game, tol: float = 1e-12) -> bool:
    if game.player_count != 2:
        return False
    return all(
        abs(a + b) <= tol for a, b in zip(game.payoffs[0], game.payoffs[1])
    )


def _lp_game_value(matrix: list[list[float]]) -> tuple[float, list[float]]:
    """Guaranteed value for the player choosing rows of `matrix`, plus the
    opponent's optimal mixed strategy.

    Shifts the matrix positive, then solves  max sum(t)  s.t.  M t <= 1,
    t >= 0;  the optimum is 1/(value+shift) and t normalizes to the
    opponent's minimax strategy.
    """
    low = min(min(row) for row in matrix)
    shift = 1.0 - low if low < 1.0 else 0.0
    shifted = [[v + shift for v in row] for row in matrix]
    cols = len(matrix[0])
    solution = lp_solve(shifted, [1.0] * len(matrix), [1.0] * cols)
    total = sum(solution.x)
    if total <= 0.0:
        raise SolverError("degenerate zero-sum program (empty optimum)")
    value = 1.0 / total - shift
    opponent = [t / total for t in solution.x]
    return value, opponent


def zero_sum_value(game: Game) -> ZeroSumSolution:
    """Value and optimal strategies of a 2-player zero-sum game.

    Solves both players' guarantee programs independently and requires the
    duality gap to close within 1e-9.
    """
    if game.player_count != 2:
        raise NotZeroSumError(
            f"zero-sum value needs exactly 2 players (got {game.player_count})"
        )
    if not _is_zero_sum(game):
        raise NotZeroSumError("payoffs do not sum to zero across players")
    m1, m2 = game.strategy_counts
    row_matrix = [
        [payoff(game, 1, (i, j)) for j in range(1, m2 + 1)] for i in range(1, m1 + 1)
    ]
    col_matrix = [
        [payoff(game, 2, (i, j)) for i in range(1, m1 + 1)] for j in range(1, m2 + 1)
    ]
    row_value, column_strategy = _lp_game_value(row_matrix)
    col_value, row_strategy = _lp_game_value(col_matrix)
    gap = abs(row_value + col_value)
    if gap > 1e-9:
        raise SolverError(f"duality gap {gap} exceeds 1e-9")
    return ZeroSumSolution(
        value=row_value,
        row_strategy=tuple(row_strategy),
        column_strategy=tuple(column_strategy),
    )
