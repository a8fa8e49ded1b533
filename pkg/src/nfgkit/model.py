"""Finite n-player normal-form games with pure and mixed strategies.

A game holds one flat payoff table per player, indexed by pure-strategy
profile in lexicographic order with the *last* player's index varying
fastest (so a 2-player table reads as rows of player 1). Players and
strategies are 1-based everywhere in this API; the 0-based arithmetic is
internal.

All types are immutable after construction and all operations are pure
functions of their inputs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

# A pure-strategy profile: one 1-based strategy index per player.
PureProfile = tuple[int, ...]
# A mixed strategy: probability weights over one player's strategies.
MixedStrategy = tuple[float, ...]
# A mixed profile: one mixed strategy per player.
MixedProfile = tuple[MixedStrategy, ...]

# Absolute tolerance on the simplex constraint sum(weights) == 1.
SIMPLEX_TOL = 1e-12


class GameError(ValueError):
    """Invalid game data, or arguments inconsistent with a game's shape."""


@dataclass(frozen=True)
class Game:
    """An n-player finite game in strategic form.

    Attributes:
        player_count: number of players n >= 2.
        strategy_counts: per-player number of pure strategies, each >= 1.
        payoffs: per-player flat payoff table of length prod(strategy_counts),
            profile-indexed with the last player's strategy varying fastest.
        labels: optional per-player strategy labels (an entry may be None).
    """

    player_count: int
    strategy_counts: tuple[int, ...]
    payoffs: tuple[tuple[float, ...], ...]
    labels: tuple[tuple[str, ...] | None, ...] | None = None

    @cached_property
    def profile_count(self) -> int:
        return math.prod(self.strategy_counts)

    @cached_property
    def strides(self) -> tuple[int, ...]:
        """Index stride per player under the last-player-fastest order."""
        strides = [1] * self.player_count
        for i in range(self.player_count - 2, -1, -1):
            strides[i] = strides[i + 1] * self.strategy_counts[i + 1]
        return tuple(strides)

    def profiles(self) -> Iterator[PureProfile]:
        """All pure profiles in index order (last player fastest)."""
        ranges = [range(1, m + 1) for m in self.strategy_counts]
        return itertools.product(*ranges)

    def check_player(self, player: int) -> None:
        if not 1 <= player <= self.player_count:
            raise GameError(
                f"player {player} out of range 1..{self.player_count}"
            )

    def check_profile(self, profile: Sequence[int]) -> None:
        if len(profile) != self.player_count:
            raise GameError(
                f"profile has {len(profile)} entries, expected {self.player_count}"
            )
        for i, (choice, m) in enumerate(zip(profile, self.strategy_counts)):
            if not 1 <= choice <= m:
                raise GameError(
                    f"player {i + 1}: strategy {choice} out of range 1..{m}"
                )

    def check_mixed_profile(self, profile: MixedProfile) -> None:
        if len(profile) != self.player_count:
            raise GameError(
                f"mixed profile has {len(profile)} entries, expected {self.player_count}"
            )
        for i, (weights, m) in enumerate(zip(profile, self.strategy_counts)):
            if len(weights) != m:
                raise GameError(
                    f"player {i + 1}: mixed strategy has {len(weights)} weights, expected {m}"
                )


def build_game(
    player_count: int,
    strategy_counts: Sequence[int],
    payoff_lists: Sequence[Sequence[float]],
    labels: Sequence[Sequence[str] | None] | None = None,
) -> Game:
    """Validate raw inputs and construct a Game.

    Raises GameError naming the offending player or index on any violation:
    fewer than 2 players, a strategy count below 1, a payoff list whose
    length is not prod(strategy_counts), a non-finite payoff, or duplicate
    labels within one player's strategy set.
    """
    if player_count < 2:
        raise GameError(f"player_count must be at least 2 (got {player_count})")
    if len(strategy_counts) != player_count:
        raise GameError(
            f"strategy_counts has {len(strategy_counts)} entries, expected {player_count}"
        )
    counts = []
    for i, m in enumerate(strategy_counts):
        if int(m) != m or m < 1:
            raise GameError(f"player {i + 1}: strategy count must be a positive integer (got {m})")
        counts.append(int(m))
    expected = math.prod(counts)
    if len(payoff_lists) != player_count:
        raise GameError(
            f"payoff_lists has {len(payoff_lists)} entries, expected {player_count}"
        )
    tables = []
    for i, values in enumerate(payoff_lists):
        if len(values) != expected:
            raise GameError(
                f"player {i + 1}: payoff list has {len(values)} values, expected {expected}"
            )
        row = []
        for k, v in enumerate(values):
            v = float(v)
            if not math.isfinite(v):
                raise GameError(f"player {i + 1}: payoff at index {k} is not finite")
            row.append(v)
        tables.append(tuple(row))
    clean_labels: tuple[tuple[str, ...] | None, ...] | None = None
    if labels is not None:
        if len(labels) != player_count:
            raise GameError(
                f"labels has {len(labels)} entries, expected {player_count}"
            )
        out = []
        for i, names in enumerate(labels):
            if names is None:
                out.append(None)
                continue
            names = tuple(str(s) for s in names)
            if len(names) != counts[i]:
                raise GameError(
                    f"player {i + 1}: {len(names)} labels for {counts[i]} strategies"
                )
            seen = set()
            for name in names:
                # single printable tokens keep the text format round-trippable
                if not name or any(ch.isspace() for ch in name) or "#" in name:
                    raise GameError(
                        f"player {i + 1}: label {name!r} must be a single token without '#'"
                    )
                if name in seen:
                    raise GameError(f"player {i + 1}: duplicate strategy label {name!r}")
                seen.add(name)
            out.append(names)
        if any(entry is not None for entry in out):
            clean_labels = tuple(out)
    return Game(
        player_count=player_count,
        strategy_counts=tuple(counts),
        payoffs=tuple(tables),
        labels=clean_labels,
    )


def profile_index(game: Game, profile: Sequence[int]) -> int:
    """Flat index of a pure profile (last player's strategy fastest)."""
    game.check_profile(profile)
    return sum((c - 1) * s for c, s in zip(profile, game.strides))


def index_to_profile(game: Game, index: int) -> PureProfile:
    """Inverse of profile_index; round-trips exactly."""
    if not 0 <= index < game.profile_count:
        raise GameError(
            f"profile index {index} out of range 0..{game.profile_count - 1}"
        )
    out = []
    for stride, m in zip(game.strides, game.strategy_counts):
        choice, index = divmod(index, stride)
        out.append(choice + 1)
    return tuple(out)


def payoff(game: Game, player: int, profile: Sequence[int]) -> float:
    """Payoff to `player` at a pure profile (tensor lookup)."""
    game.check_player(player)
    return game.payoffs[player - 1][profile_index(game, profile)]


def replace_strategy(
    game: Game, profile: Sequence[int], player: int, strategy: int
) -> PureProfile:
    """The profile with `player`'s coordinate replaced by `strategy`."""
    game.check_profile(profile)
    game.check_player(player)
    m = game.strategy_counts[player - 1]
    if not 1 <= strategy <= m:
        raise GameError(f"player {player}: strategy {strategy} out of range 1..{m}")
    out = list(profile)
    out[player - 1] = strategy
    return tuple(out)


def mixed_strategy(weights: Sequence[float]) -> MixedStrategy:
    """Validate a probability vector, renormalizing round-off below SIMPLEX_TOL.

    Rejects negative weights, non-finite weights, and sums deviating from 1
    by more than SIMPLEX_TOL.
    """
    if len(weights) < 1:
        raise GameError("mixed strategy needs at least one weight")
    ws = []
    for k, w in enumerate(weights):
        w = float(w)
        if not math.isfinite(w):
            raise GameError(f"weight at index {k} is not finite")
        if w < 0.0:
            raise GameError(f"weight at index {k} is negative ({w})")
        ws.append(w)
    total = sum(ws)
    if abs(total - 1.0) > SIMPLEX_TOL:
        raise GameError(f"weights sum to {total!r}, expected 1 within {SIMPLEX_TOL}")
    if total != 1.0:
        ws = [w / total for w in ws]
    return tuple(ws)


def mixed_profile(game: Game, strategies: Sequence[Sequence[float]]) -> MixedProfile:
    """Validate one mixed strategy per player against the game's shape."""
    if len(strategies) != game.player_count:
        raise GameError(
            f"mixed profile has {len(strategies)} entries, expected {game.player_count}"
        )
    out = []
    for i, weights in enumerate(strategies):
        if len(weights) != game.strategy_counts[i]:
            raise GameError(
                f"player {i + 1}: mixed strategy has {len(weights)} weights,"
                f" expected {game.strategy_counts[i]}"
            )
        out.append(mixed_strategy(weights))
    return tuple(out)


def embed_pure(game: Game, profile: Sequence[int]) -> MixedProfile:
    """The mixed profile placing a point mass on each player's pure choice."""
    game.check_profile(profile)
    out = []
    for choice, m in zip(profile, game.strategy_counts):
        out.append(tuple(1.0 if k == choice - 1 else 0.0 for k in range(m)))
    return tuple(out)


def profile_probability(mixed: MixedProfile, profile: Sequence[int]) -> float:
    """Probability of a pure profile under the independent product measure."""
    if len(mixed) != len(profile):
        raise GameError(
            f"profile has {len(profile)} entries, mixed profile has {len(mixed)}"
        )
    prob = 1.0
    for i, (weights, choice) in enumerate(zip(mixed, profile)):
        if not 1 <= choice <= len(weights):
            raise GameError(
                f"player {i + 1}: strategy {choice} out of range 1..{len(weights)}"
            )
        prob *= weights[choice - 1]
    return prob


def mixed_payoff(game: Game, player: int, mixed: MixedProfile) -> float:
    """Expected payoff to `player`: sum over all pure profiles of
    profile probability times payoff.

    Zero-probability profiles are skipped, so a point-mass profile reduces
    to the exact pure payoff with no rounding.
    """
    game.check_player(player)
    game.check_mixed_profile(mixed)
    table = game.payoffs[player - 1]
    total = 0.0
    for index, choices in enumerate(itertools.product(*(range(m) for m in game.strategy_counts))):
        w = 1.0
        for weights, c in zip(mixed, choices):
            w *= weights[c]
            if w == 0.0:
                break
        if w == 0.0:
            continue
        total += w * table[index]
    return total


def deviation_payoffs(game: Game, player: int, mixed: MixedProfile) -> list[float]:
    """Expected payoff to `player` for each of their pure strategies, with
    every other player drawn from the mixed profile.

    Entry k-1 equals mixed_payoff at the profile with `player`'s component
    replaced by a point mass on strategy k. Against point-mass opponents the
    entries are exact table lookups.
    """
    game.check_player(player)
    game.check_mixed_profile(mixed)
    p = player - 1
    counts = game.strategy_counts
    strides = game.strides
    others = [i for i in range(game.player_count) if i != p]
    table = game.payoffs[p]
    own_stride = strides[p]
    result = [0.0] * counts[p]
    for combo in itertools.product(*(range(counts[i]) for i in others)):
        w = 1.0
        for i, c in zip(others, combo):
            w *= mixed[i][c]
            if w == 0.0:
                break
        if w == 0.0:
            continue
        base = sum(strides[i] * c for i, c in zip(others, combo))
        for k in range(counts[p]):
            result[k] += w * table[base + k * own_stride]
    return result
