"""Deviation dynamics over pure-strategy profiles.

Two walk rules, one per deviation regime:

  c1_walk  round-robin single-player best response. Absorbed states are
           exactly the pure equilibria: no player can unilaterally gain.
  c2_walk  canonical-first profitable joint pure deviation by coalitions
           up to a size cap. Absorbed states are coalition-robust at pure
           granularity.

A profile can absorb under c1 and still cycle under c2, which is the
point: equilibrium stability is a property of the deviation rule, not of
the profile alone.

State space is pure profiles only, so absorption and cycling are exact
and decidable; walks are deterministic for fixed inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Game, GameError, PureProfile, embed_pure, payoff, replace_strategy
from .rng import SplitMix64
from .stability import Coalition, coalitions, find_pure_coalition_deviation


@dataclass(frozen=True)
class Trajectory:
    """States visited by a walk, with how and where it ended.

    terminal is "absorbed" (absorbed_at indexes the final state), "cycle"
    (cycle_entry and cycle_period describe the loop within states), or
    "budget-exhausted". kmax and seed are set for c2 walks only.
    """

    regime: str
    states: tuple[PureProfile, ...]
    terminal: str
    absorbed_at: int | None = None
    cycle_entry: int | None = None
    cycle_period: int | None = None
    kmax: int | None = None
    seed: int | None = None


def detect_cycle(states: list[PureProfile]) -> tuple[int, int] | None:
    """Smallest period of an exact state repetition, with its first entry
    index; None when no state repeats."""
    length = len(states)
    for period in range(1, length):
        for entry in range(length - period):
            if states[entry] == states[entry + period]:
                return entry, period
    return None


def _best_response(game: Game, profile: PureProfile, player: int) -> int:
    """Lowest-index strategy maximizing the player's payoff against the
    profile; the current strategy wins all ties it participates in."""
    current = profile[player - 1]
    best_strat = current
    best_pay = payoff(game, player, profile)
    # ascending scan with strict > keeps the current strategy on ties and
    # otherwise picks the lowest-index maximizer
    for alt in range(1, game.strategy_counts[player - 1] + 1):
        if alt == current:
            continue
        pay = payoff(game, player, replace_strategy(game, profile, player, alt))
        if pay > best_pay:
            best_strat, best_pay = alt, pay
    return best_strat


def c1_walk(game: Game, start: PureProfile, max_sweeps: int = 10_000) -> Trajectory:
    """Round-robin best-response walk under the single-deviator rule.

    Players act in ascending order; the active player switches to their
    best response (ties to the lowest index, no move when the current
    strategy is already best). Absorbed after a full sweep with no move;
    a repeated (state, active player) pair is a cycle. A new state is
    recorded only when a move happens.
    """
    game.check_profile(start)
    n = game.player_count
    states = [tuple(start)]
    current = states[0]
    seen: dict[tuple[PureProfile, int], int] = {}
    active = 1
    quiet = 0  # consecutive turns without a move
    turns = 0
    budget = max_sweeps * n
    while True:
        if quiet >= n:
            return Trajectory(
                regime="c1",
                states=tuple(states),
                terminal="absorbed",
                absorbed_at=len(states) - 1,
            )
        key = (current, active)
        if key in seen:
            entry = seen[key]
            return Trajectory(
                regime="c1",
                states=tuple(states),
                terminal="cycle",
                cycle_entry=entry,
                cycle_period=len(states) - 1 - entry,
            )
        if turns >= budget:
            return Trajectory(
                regime="c1", states=tuple(states), terminal="budget-exhausted"
            )
        seen[key] = len(states) - 1
        response = _best_response(game, current, active)
        if response != current[active - 1]:
            current = replace_strategy(game, current, active, response)
            states.append(current)
            quiet = 0
        else:
            quiet += 1
        active = active % n + 1
        turns += 1


def c2_walk(
    game: Game,
    start: PureProfile,
    kmax: int,
    seed: int = 0,
    max_steps: int = 10_000,
    randomize: bool = False,
) -> Trajectory:
    """Coalition deviation walk: apply the canonical-first profitable
    joint pure deviation (smallest coalition, lexicographic members,
    lexicographic assignment) among coalitions of size 1..kmax.

    Absorbed when no coalition up to kmax has a profitable deviation; a
    repeated state is a cycle. With randomize=True the coalition order is
    reshuffled each step from the seed (assignments stay lexicographic);
    the default order is canonical and ignores the seed.
    """
    game.check_profile(start)
    n = game.player_count
    if not 2 <= kmax <= n:
        raise GameError(f"kmax must be within 2..{n} (got {kmax})")
    order = coalitions(n, 1, kmax)
    rng = SplitMix64(seed) if randomize else None
    states = [tuple(start)]
    current = states[0]
    seen: dict[PureProfile, int] = {}
    for _ in range(max_steps):
        if current in seen:
            entry = seen[current]
            return Trajectory(
                regime="c2",
                states=tuple(states),
                terminal="cycle",
                cycle_entry=entry,
                cycle_period=len(states) - 1 - entry,
                kmax=kmax,
                seed=seed,
            )
        seen[current] = len(states) - 1
        step_order = list(order)
        if rng is not None:
            rng.shuffle(step_order)
        move = _first_deviation(game, current, step_order)
        if move is None:
            return Trajectory(
                regime="c2",
                states=tuple(states),
                terminal="absorbed",
                absorbed_at=len(states) - 1,
                kmax=kmax,
                seed=seed,
            )
        coalition, assignment = move
        profile = list(current)
        for j, strat in zip(coalition, assignment):
            profile[j - 1] = strat
        current = tuple(profile)
        states.append(current)
    return Trajectory(
        regime="c2",
        states=tuple(states),
        terminal="budget-exhausted",
        kmax=kmax,
        seed=seed,
    )


def _first_deviation(
    game: Game, state: PureProfile, order: list[Coalition]
) -> tuple[Coalition, tuple[int, ...]] | None:
    base = embed_pure(game, state)
    for coalition in order:
        witness = find_pure_coalition_deviation(game, base, coalition)
        if witness is not None:
            return coalition, witness.strategies
    return None
