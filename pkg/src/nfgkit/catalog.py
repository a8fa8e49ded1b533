"""Builtin game catalog.

Small classic games used throughout the test suite and available to the
CLI via --builtin, plus seeded random game generation.
"""

from __future__ import annotations

import itertools
from typing import Any, Sequence

from .model import Game, GameError, build_game
from .rng import SplitMix64


def prisoners_dilemma(
    T: float = 5.0, R: float = 3.0, P: float = 1.0, S: float = 0.0
) -> Game:
    """2x2 cooperate/defect game; requires T > R > P > S.

    Strategy 1 is C (cooperate), strategy 2 is D (defect). Defaults
    (5, 3, 1, 0) are conventional and overridable.
    """
    if not (T > R > P > S):
        raise GameError(
            f"prisoners_dilemma requires T > R > P > S (got T={T}, R={R}, P={P}, S={S})"
        )
    # profile order: (C,C), (C,D), (D,C), (D,D)
    row = [R, S, T, P]
    col = [R, T, S, P]
    return build_game(2, [2, 2], [row, col], [["C", "D"], ["C", "D"]])


def matching_pennies() -> Game:
    """2x2 zero-sum game; player 1 wins on a match."""
    row = [1.0, -1.0, -1.0, 1.0]
    return build_game(2, [2, 2], [row, [-v for v in row]], [["H", "T"], ["H", "T"]])


def rock_paper_scissors() -> Game:
    """3x3 symmetric zero-sum cycle."""
    row = [
        0.0, -1.0, 1.0,
        1.0, 0.0, -1.0,
        -1.0, 1.0, 0.0,
    ]
    labels = ["R", "P", "S"]
    return build_game(2, [3, 3], [row, [-v for v in row]], [labels, labels])


def battle_of_sexes() -> Game:
    """2x2 coordination game with opposed favorite outcomes."""
    row = [2.0, 0.0, 0.0, 1.0]
    col = [1.0, 0.0, 0.0, 2.0]
    return build_game(2, [2, 2], [row, col], [["B", "S"], ["B", "S"]])


def public_goods(players: int = 3, rate: float = 0.6, cost: float = 1.0) -> Game:
    """n-player contribution game.

    Each player contributes `cost` (strategy 1, C) or nothing (strategy 2,
    D); everyone receives `rate` times the total contributed, contributors
    pay their own cost. Requires rate < cost < players*rate: contributing
    alone is a net loss, but any pair of contributors profits.
    """
    if players < 2:
        raise GameError(f"public_goods needs at least 2 players (got {players})")
    if not (rate < cost < players * rate):
        raise GameError(
            f"public_goods requires rate < cost < players*rate"
            f" (got rate={rate}, cost={cost}, players={players})"
        )
    tables: list[list[float]] = [[] for _ in range(players)]
    for profile in itertools.product((1, 2), repeat=players):
        contributed = cost * sum(1 for c in profile if c == 1)
        for i, choice in enumerate(profile):
            own = cost if choice == 1 else 0.0
            tables[i].append(rate * contributed - own)
    labels = [["C", "D"] for _ in range(players)]
    return build_game(players, [2] * players, tables, labels)


def zero_sum(matrix: Sequence[Sequence[float]]) -> Game:
    """2-player zero-sum game from player 1's payoff matrix (rows = player 1)."""
    if not matrix or not matrix[0]:
        raise GameError("zero_sum matrix must be non-empty")
    m1 = len(matrix)
    m2 = len(matrix[0])
    if any(len(r) != m2 for r in matrix):
        raise GameError("zero_sum matrix rows must have equal length")
    flat = [float(v) for r in matrix for v in r]
    return build_game(2, [m1, m2], [flat, [-v for v in flat]])


def random_game(players: int, sizes: Sequence[int], seed: int) -> Game:
    """Seeded random game, payoffs uniform in [-1, 1).

    Values come from one splitmix64 stream: player 1's table first, then
    player 2's, and so on, each in profile-index order.
    """
    if players < 2:
        raise GameError(f"random game needs at least 2 players (got {players})")
    if len(sizes) != players:
        raise GameError(f"random game needs {players} sizes, got {len(sizes)}")
    rng = SplitMix64(seed)
    total = 1
    for m in sizes:
        total *= int(m)
    tables = [
        [rng.uniform(-1.0, 1.0) for _ in range(total)] for _ in range(players)
    ]
    return build_game(players, list(sizes), tables)


_BUILDERS = {
    "prisoners_dilemma": prisoners_dilemma,
    "matching_pennies": matching_pennies,
    "rock_paper_scissors": rock_paper_scissors,
    "battle_of_sexes": battle_of_sexes,
    "public_goods": public_goods,
    "zero_sum": zero_sum,
    "random": random_game,
}


def builtin_names() -> list[str]:
    return sorted(_BUILDERS)


def builtin_game(name: str, params: dict[str, Any] | None = None) -> Game:
    """Construct a catalog game by name with keyword parameters."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise GameError(
            f"unknown builtin game {name!r}; available: {', '.join(builtin_names())}"
        ) from None
    try:
        return builder(**(params or {}))
    except TypeError as exc:
        raise GameError(f"builtin {name}: {exc}") from None
