"""Reader and writer for the line-oriented ".game" text format.

Grammar (tokens are whitespace-separated; `#` comments run to end of line):

    players <n>
    strategies <m_1> ... <m_n>
    labels <player> <name_1> ... <name_m>     (optional, per player)
    payoffs <player> <v_1> ... <v_k>          (one line per player,
                                               k = prod of strategy counts,
                                               last player's index fastest)

`parse_game` followed by `serialize_game` is the identity on Game values;
serialization is canonical (fixed section order, shortest round-tripping
decimals, single spaces) and therefore byte-stable.
"""

from __future__ import annotations

import math

from .model import Game, GameError, build_game


class GameFormatError(ValueError):
    """Malformed game document; carries the offending 1-based line number."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _parse_int(token: str, what: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GameFormatError(f"{what} must be an integer (got {token!r})", line) from None


def _parse_float(token: str, line: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise GameFormatError(f"invalid number {token!r}", line) from None
    if not math.isfinite(value):
        raise GameFormatError(f"non-finite payoff {token!r}", line)
    return value


def parse_game(text: str) -> Game:
    """Parse a game document, raising GameFormatError with the line number."""
    player_count: int | None = None
    counts: list[int] | None = None
    labels: dict[int, tuple[str, ...]] = {}
    payoffs: dict[int, list[float]] = {}
    last_line = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        keyword, args = tokens[0], tokens[1:]

        if keyword == "players":
            if player_count is not None:
                raise GameFormatError("duplicate players section", lineno)
            if len(args) != 1:
                raise GameFormatError("players takes exactly one value", lineno)
            player_count = _parse_int(args[0], "player count", lineno)
            if player_count < 2:
                raise GameFormatError(
                    f"player count must be at least 2 (got {player_count})", lineno
                )

        elif keyword == "strategies":
            if player_count is None:
                raise GameFormatError("strategies section before players", lineno)
            if counts is not None:
                raise GameFormatError("duplicate strategies section", lineno)
            if len(args) != player_count:
                raise GameFormatError(
                    f"strategies needs {player_count} counts, got {len(args)}", lineno
                )
            counts = []
            for i, tok in enumerate(args):
                m = _parse_int(tok, f"player {i + 1} strategy count", lineno)
                if m < 1:
                    raise GameFormatError(
                        f"player {i + 1}: strategy count must be at least 1 (got {m})",
                        lineno,
                    )
                counts.append(m)

        elif keyword == "labels":
            if counts is None:
                raise GameFormatError("labels section before strategies", lineno)
            if not args:
                raise GameFormatError("labels needs a player number", lineno)
            player = _parse_int(args[0], "labels player", lineno)
            if not 1 <= player <= (player_count or 0):
                raise GameFormatError(
                    f"labels player {player} out of range 1..{player_count}", lineno
                )
            if player in labels:
                raise GameFormatError(f"duplicate labels section for player {player}", lineno)
            names = args[1:]
            if len(names) != counts[player - 1]:
                raise GameFormatError(
                    f"player {player}: expected {counts[player - 1]} labels, got {len(names)}",
                    lineno,
                )
            if len(set(names)) != len(names):
                dup = next(n for i, n in enumerate(names) if n in names[:i])
                raise GameFormatError(
                    f"player {player}: duplicate strategy label {dup!r}", lineno
                )
            labels[player] = tuple(names)

        elif keyword == "payoffs":
            if counts is None:
                raise GameFormatError("payoffs section before strategies", lineno)
            if not args:
                raise GameFormatError("payoffs needs a player number", lineno)
            player = _parse_int(args[0], "payoffs player", lineno)
            if not 1 <= player <= (player_count or 0):
                raise GameFormatError(
                    f"payoffs player {player} out of range 1..{player_count}", lineno
                )
            if player in payoffs:
                raise GameFormatError(f"duplicate payoffs section for player {player}", lineno)
            expected = math.prod(counts)
            values = args[1:]
            if len(values) != expected:
                raise GameFormatError(
                    f"player {player}: expected {expected} payoff values, got {len(values)}",
                    lineno,
                )
            payoffs[player] = [_parse_float(tok, lineno) for tok in values]

        else:
            raise GameFormatError(f"unknown directive {keyword!r}", lineno)

    if player_count is None:
        raise GameFormatError("missing players section")
    if counts is None:
        raise GameFormatError("missing strategies section")
    for player in range(1, player_count + 1):
        if player not in payoffs:
            raise GameFormatError(f"missing payoffs section for player {player}")

    label_arg = None
    if labels:
        label_arg = [labels.get(i) for i in range(1, player_count + 1)]
    try:
        return build_game(
            player_count,
            counts,
            [payoffs[i] for i in range(1, player_count + 1)],
            label_arg,
        )
    except GameError as exc:  # parser checks should have caught everything
        raise GameFormatError(str(exc)) from exc


def format_number(value: float) -> str:
    """Shortest decimal string that parses back to the same 64-bit float."""
    text = repr(float(value))
    return text[:-2] if text.endswith(".0") else text


def serialize_game(game: Game) -> str:
    """Canonical document for a game: fixed order, single spaces, newline-terminated."""
    lines = [f"players {game.player_count}"]
    lines.append("strategies " + " ".join(str(m) for m in game.strategy_counts))
    if game.labels is not None:
        for i, names in enumerate(game.labels, start=1):
            if names is not None:
                lines.append(f"labels {i} " + " ".join(names))
    for i, table in enumerate(game.payoffs, start=1):
        lines.append(f"payoffs {i} " + " ".join(format_number(v) for v in table))
    return "\n".join(lines) + "\n"


def load_game(path: str) -> Game:
    """Read and parse a .game file."""
    with open(path, "r", encoding="utf-8") as handle:
        return parse_game(handle.read())
