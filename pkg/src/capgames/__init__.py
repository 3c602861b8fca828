"""Capability transfer functions of games with nested strategy spaces.

Two layers: a generic engine for pure/mixed Nash equilibria of
capability-restricted games (``game``, ``bimatrix``, ``gamefile``), and an
exact solver plus brute-force verifier for the two-player gold-and-mines
coverage game (``goldmines``, ``oracle``).
"""

from .bimatrix import (
    Bimatrix,
    MixedCtf,
    MixedEquilibrium,
    ctf_mixed,
    expected_payoff,
    is_mixed_ne,
    restrict_to_bimatrix,
    support_enumeration,
)
from .game import (
    CapabilityGame,
    Positivity,
    ctf_pure,
    enumerate_pure_ne,
    equilibrium_welfare_levels,
    is_capability_positive,
    is_pure_ne,
    validate_game,
)
from .gamefile import game_to_json, load_game, parse_game
from .goldmines import (
    CoverageSummary,
    GameParams,
    build_complement_cover,
    build_equilibrium,
    equal_capability_welfare,
    equilibrium_payoffs,
    pad_segments,
    payoff,
    perfect_cover,
    staircase,
    summarize,
)
from .oracle import (
    VerificationReport,
    enumerate_pure_equilibria,
    enumerate_strategies,
    verify_closed_form,
    verify_strict_ne_coverage,
)

__version__ = "0.1.0"

__all__ = [
    "Bimatrix",
    "CapabilityGame",
    "CoverageSummary",
    "GameParams",
    "MixedCtf",
    "MixedEquilibrium",
    "Positivity",
    "VerificationReport",
    "build_complement_cover",
    "build_equilibrium",
    "ctf_mixed",
    "ctf_pure",
    "enumerate_pure_equilibria",
    "enumerate_pure_ne",
    "enumerate_strategies",
    "equal_capability_welfare",
    "equilibrium_payoffs",
    "equilibrium_welfare_levels",
    "expected_payoff",
    "game_to_json",
    "is_capability_positive",
    "is_mixed_ne",
    "is_pure_ne",
    "load_game",
    "pad_segments",
    "parse_game",
    "payoff",
    "perfect_cover",
    "restrict_to_bimatrix",
    "staircase",
    "summarize",
    "support_enumeration",
    "validate_game",
    "verify_closed_form",
    "verify_strict_ne_coverage",
]
