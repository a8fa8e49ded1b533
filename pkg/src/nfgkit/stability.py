"""Coalition deviations and equilibrium fragility.

An equilibrium is held in place by the rule that only one player may move
at a time. This module asks what happens when that rule is relaxed: a
coalition deviates jointly, every member must strictly gain, and everyone
outside the coalition stays put. An equilibrium some coalition of size <=
kmax can destabilize is classified c1-dependent (its stability depends on
the single-deviator rule); one with no such coalition is coalition-robust
up to kmax.

Pure joint deviations are searched exhaustively, so emptiness there is a
proof at pure-deviation granularity. Mixed joint deviations are searched
by a seeded hill climb; emptiness there is NOT a proof.

Tolerances: a pure deviation must improve each member by more than 1e-9
(exact arithmetic differences); a mixed deviation by more than 1e-6
(iterative noise).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .model import (
    Game,
    GameError,
    MixedProfile,
    MixedStrategy,
    PureProfile,
    mixed_payoff,
    payoff,
)
from .rng import SplitMix64
from .solvers import BudgetExceededError, nash_residual

DEVIATION_TOL = 1e-9  # strict-gain threshold for pure joint deviations
MIXED_DEVIATION_TOL = 1e-6  # strict-gain threshold for mixed joint deviations

Coalition = tuple[int, ...]


class NotAnEquilibriumError(GameError):
    """classify_equilibrium was given a profile that is not an equilibrium."""


@dataclass(frozen=True)
class JointDeviation:
    """A profitable joint pure deviation: each member switches to the listed
    strategy and strictly gains."""

    coalition: Coalition
    strategies: tuple[int, ...]
    gains: tuple[float, ...]


@dataclass(frozen=True)
class MixedJointDeviation:
    """A profitable joint mixed deviation found heuristically."""

    coalition: Coalition
    strategies: tuple[MixedStrategy, ...]
    gains: tuple[float, ...]


@dataclass(frozen=True)
class FragilityReport:
    """Outcome of classifying an equilibrium against coalition deviations.

    classification is "c1-dependent" (some coalition of size kstar <= kmax
    destabilizes the equilibrium; witness records how) or
    "coalition-robust" (no pure joint deviation up to kmax_checked).
    """

    classification: str
    base_profile: MixedProfile
    kmax_checked: int
    kstar: int | None
    witness: JointDeviation | None
    gains: tuple[float, ...] | None


@dataclass(frozen=True)
class CooperationGainReport:
    """Pure profiles that Pareto-dominate a base profile, and how much
    total payoff is left on the table."""

    base_profile: MixedProfile
    base_payoffs: tuple[float, ...]
    pareto_improvers: tuple[PureProfile, ...]
    best_welfare_gap: float
    max_gains: tuple[float, ...]


def coalitions(n: int, kmin: int, kmax: int) -> list[Coalition]:
    """All coalitions of sizes kmin..kmax among players 1..n, ordered by
    size and then lexicographically."""
    if not 1 <= kmin <= kmax <= n:
        raise GameError(
            f"coalition size bounds must satisfy 1 <= kmin <= kmax <= n"
            f" (got kmin={kmin}, kmax={kmax}, n={n})"
        )
    out: list[Coalition] = []
    for size in range(kmin, kmax + 1):
        out.extend(itertools.combinations(range(1, n + 1), size))
    return out


def _check_coalition(game: Game, coalition: Coalition) -> None:
    if not coalition:
        raise GameError("coalition must be non-empty")
    for member in coalition:
        game.check_player(member)
    if any(a >= b for a, b in zip(coalition, coalition[1:])):
        raise GameError(f"coalition members must be strictly increasing (got {coalition})")


def find_pure_coalition_deviation(
    game: Game,
    base: MixedProfile,
    coalition: Coalition,
    tol: float = DEVIATION_TOL,
) -> JointDeviation | None:
    """First joint pure-strategy assignment (lexicographic order) under
    which every coalition member's expected payoff strictly improves by
    more than tol; None if none exists.

    Non-members keep their base strategies. The scan is exhaustive, so
    None is a proof that no pure joint deviation is profitable.
    """
    game.check_mixed_profile(base)
    _check_coalition(game, coalition)
    base_pays = [mixed_payoff(game, j, base) for j in coalition]
    ranges = [range(1, game.strategy_counts[j - 1] + 1) for j in coalition]
    for assignment in itertools.product(*ranges):
        candidate = _apply_pure(game, base, coalition, assignment)
        gains = []
        profitable = True
        for j, base_pay in zip(coalition, base_pays):
            gain = mixed_payoff(game, j, candidate) - base_pay
            if gain <= tol:
                profitable = False
                break
            gains.append(gain)
        if profitable:
            return JointDeviation(
                coalition=coalition,
                strategies=assignment,
                gains=tuple(gains),
            )
    return None


def _apply_pure(
    game: Game, base: MixedProfile, coalition: Coalition, assignment: tuple[int, ...]
) -> MixedProfile:
    out = list(base)
    for j, strat in zip(coalition, assignment):
        m = game.strategy_counts[j - 1]
        out[j - 1] = tuple(1.0 if k == strat - 1 else 0.0 for k in range(m))
    return tuple(out)


def _apply_mixed(
    base: MixedProfile, coalition: Coalition, strategies: tuple[MixedStrategy, ...]
) -> MixedProfile:
    out = list(base)
    for j, weights in zip(coalition, strategies):
        out[j - 1] = weights
    return tuple(out)


def min_destabilizing_coalition(
    game: Game, base: MixedProfile, kmax: int
) -> tuple[int, Coalition, JointDeviation] | None:
    """Smallest coalition (size 2..kmax, then lexicographic) with a
    profitable pure joint deviation from the base; None if none exists up
    to kmax."""
    if not 2 <= kmax <= game.player_count:
        raise GameError(
            f"kmax must be within 2..{game.player_count} (got {kmax})"
        )
    for coalition in coalitions(game.player_count, 2, kmax):
        witness = find_pure_coalition_deviation(game, base, coalition)
        if witness is not None:
            return len(coalition), coalition, witness
    return None


def classify_equilibrium(
    game: Game, equilibrium: MixedProfile, kmax: int
) -> FragilityReport:
    """Classify an equilibrium as c1-dependent or coalition-robust.

    The input must actually be an equilibrium (unilateral gain at most
    1e-6); classification asks whether its stability survives coalition
    deviations, which is only meaningful when single deviations fail.
    """
    residual = nash_residual(game, equilibrium)
    if residual > 1e-6:
        raise NotAnEquilibriumError(
            f"profile is not an equilibrium (unilateral gain {residual} > 1e-06)"
        )
    found = min_destabilizing_coalition(game, equilibrium, kmax)
    if found is None:
        return FragilityReport(
            classification="coalition-robust",
            base_profile=equilibrium,
            kmax_checked=kmax,
            kstar=None,
            witness=None,
            gains=None,
        )
    kstar, _, witness = found
    return FragilityReport(
        classification="c1-dependent",
        base_profile=equilibrium,
        kmax_checked=kmax,
        kstar=kstar,
        witness=witness,
        gains=witness.gains,
    )


def mixed_deviation_search(
    game: Game,
    equilibrium: MixedProfile,
    coalition: Coalition,
    seed: int = 0,
    starts: int = 20,
    iters: int = 200,
) -> MixedJointDeviation | None:
    """Hill climb for a joint mixed deviation improving every member by
    more than 1e-6; None when the search fails.

    Multi-start over the product of members' simplices, non-members fixed,
    objective = minimum member gain. Deterministic for a given seed: every
    iteration draws the same number of random values whether or not the
    step is accepted. Emptiness is NOT a proof; the pure search is the
    exhaustive one.
    """
    game.check_mixed_profile(equilibrium)
    _check_coalition(game, coalition)
    rng = SplitMix64(seed)
    base_pays = [mixed_payoff(game, j, equilibrium) for j in coalition]
    sizes = [game.strategy_counts[j - 1] for j in coalition]

    def objective(strategies: tuple[MixedStrategy, ...]) -> float:
        candidate = _apply_mixed(equilibrium, coalition, strategies)
        return min(
            mixed_payoff(game, j, candidate) - base_pay
            for j, base_pay in zip(coalition, base_pays)
        )

    best_strategies: tuple[MixedStrategy, ...] | None = None
    best_value = -float("inf")
    for _ in range(starts):
        current = tuple(rng.interior_weights(m) for m in sizes)
        current_value = objective(current)
        for it in range(iters):
            scale = max(0.5 * 0.98**it, 0.01)
            proposal = []
            for weights in current:
                shifted = [
                    max(w + scale * (rng.next_float() - 0.5), 0.0) for w in weights
                ]
                total = sum(shifted)
                if total <= 0.0:
                    proposal.append(weights)
                else:
                    proposal.append(tuple(w / total for w in shifted))
            proposal = tuple(proposal)
            value = objective(proposal)
            if value > current_value:
                current, current_value = proposal, value
        if current_value > best_value:
            best_strategies, best_value = current, current_value
    if best_strategies is None or best_value <= MIXED_DEVIATION_TOL:
        return None
    candidate = _apply_mixed(equilibrium, coalition, best_strategies)
    gains = tuple(
        mixed_payoff(game, j, candidate) - base_pay
        for j, base_pay in zip(coalition, base_pays)
    )
    return MixedJointDeviation(
        coalition=coalition, strategies=best_strategies, gains=gains
    )


def cooperation_gain(
    game: Game, base: MixedProfile, budget: int = 10_000_000
) -> CooperationGainReport:
    """Pure profiles Pareto-dominating the base profile, the best welfare
    gap, and per-player maximum gains.

    A profile qualifies when every player's payoff is at least their base
    payoff and at least one exceeds it by more than 1e-9. The welfare gap
    is the maximum total payoff over all pure profiles minus the total at
    the base (never negative: the base total is an average of pure
    totals). Per-player max gains are taken over the qualifying profiles
    (zeros when there are none).
    """
    game.check_mixed_profile(base)
    if game.profile_count > budget:
        raise BudgetExceededError(
            f"{game.profile_count} profiles exceed the budget of {budget}"
        )
    n = game.player_count
    base_pays = tuple(mixed_payoff(game, j, base) for j in range(1, n + 1))
    base_total = sum(base_pays)
    improvers: list[PureProfile] = []
    max_gains = [0.0] * n
    best_total = -float("inf")
    for profile in game.profiles():
        pays = [payoff(game, j, profile) for j in range(1, n + 1)]
        total = sum(pays)
        if total > best_total:
            best_total = total
        if all(p >= b for p, b in zip(pays, base_pays)) and any(
            p - b > DEVIATION_TOL for p, b in zip(pays, base_pays)
        ):
            improvers.append(profile)
            for j in range(n):
                gain = pays[j] - base_pays[j]
                if gain > max_gains[j]:
                    max_gains[j] = gain
    return CooperationGainReport(
        base_profile=base,
        base_payoffs=base_pays,
        pareto_improvers=tuple(improvers),
        best_welfare_gap=best_total - base_total,
        max_gains=tuple(max_gains),
    )
