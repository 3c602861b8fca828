"""Reading and writing capability games as JSON.

Format::

    {
      "players": [
        {"actions": ["top", "bottom"], "cutoffs": [1, 2]},
        {"actions": ["left", "right"], "cutoffs": [2]}
      ],
      "payoffs": [[1, 2], ["-1", 1], [2, 1], [0, 2]]
    }

``payoffs`` is a flat list with one n-entry vector per full strategy
profile, in row-major profile order (the first player's action index varies
slowest).  Rationals are bare integers or "p/q" strings; decimal literals
are rejected to keep everything exact.
"""

from __future__ import annotations

import json
from itertools import product
from pathlib import Path

from .errors import GameFormatError, IncompletePayoffs
from .game import CapabilityGame, validate_game
from .rationals import as_fraction, format_rational


def parse_game(obj) -> CapabilityGame:
    """Build and validate a game from already-decoded JSON data."""
    if not isinstance(obj, dict):
        raise GameFormatError("top level must be an object")
    try:
        players = obj["players"]
        raw_payoffs = obj["payoffs"]
    except KeyError as missing:
        raise GameFormatError(f"missing field {missing}") from None
    if not isinstance(players, list) or not players:
        raise GameFormatError('"players" must be a nonempty array')

    actions, cutoffs = [], []
    for p, entry in enumerate(players):
        try:
            acts = entry["actions"]
            cuts = entry["cutoffs"]
        except (TypeError, KeyError):
            raise GameFormatError(
                f'player {p + 1} needs "actions" and "cutoffs"') from None
        if not all(isinstance(a, str) for a in acts):
            raise GameFormatError(f"player {p + 1}: actions must be strings")
        if not all(isinstance(c, int) and not isinstance(c, bool) for c in cuts):
            raise GameFormatError(f"player {p + 1}: cutoffs must be integers")
        actions.append(tuple(acts))
        cutoffs.append(tuple(cuts))

    counts = [len(a) for a in actions]
    expected = 1
    for k in counts:
        expected *= k
    if not isinstance(raw_payoffs, list) or len(raw_payoffs) != expected:
        raise IncompletePayoffs(
            f'"payoffs" must list exactly {expected} vectors, got '
            f"{len(raw_payoffs) if isinstance(raw_payoffs, list) else type(raw_payoffs).__name__}")

    payoffs = {}
    for profile, vec in zip(product(*(range(k) for k in counts)), raw_payoffs):
        if not isinstance(vec, list) or len(vec) != len(players):
            raise IncompletePayoffs(
                f"payoff vector for profile {profile} must have {len(players)} entries")
        try:
            payoffs[profile] = tuple(as_fraction(v) for v in vec)
        except (TypeError, ValueError) as bad:
            raise GameFormatError(f"profile {profile}: {bad}") from None

    game = CapabilityGame(tuple(actions), tuple(cutoffs), payoffs)
    validate_game(game)
    return game


def load_game(path: str | Path) -> CapabilityGame:
    """Load a game description from a JSON file.

    json.JSONDecodeError (with line/column info) propagates for malformed
    JSON; structural problems raise GameFormatError and friends.
    """
    text = Path(path).read_text()
    return parse_game(json.loads(text))


def game_to_json(game: CapabilityGame) -> dict:
    """Inverse of parse_game, producing plain JSON-serializable data."""
    counts = [len(a) for a in game.actions]
    flat = [
        [format_rational(v) if v.denominator != 1 else v.numerator
         for v in game.payoffs[profile]]
        for profile in product(*(range(k) for k in counts))
    ]
    return {
        "players": [
            {"actions": list(a), "cutoffs": list(c)}
            for a, c in zip(game.actions, game.cutoffs)
        ],
        "payoffs": flat,
    }
