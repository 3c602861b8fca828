"""Exact mixed Nash equilibria of two-player games by support enumeration.

Every candidate support pair of equal size induces square indifference
systems that are solved over the rationals, so the equilibria (and the
degeneracy verdicts) are exact.  Unequal-support equilibria only occur in
degenerate games; those games are flagged and only basic solutions of the
singular systems are reported, never whole continua.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .errors import DimensionMismatch, NotTwoPlayer, SizeLimitExceeded
from .game import CapabilityGame, restricted_sizes
from .rationals import as_fraction

DEFAULT_MAX_ACTIONS = 8

Matrix = tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class Bimatrix:
    """Payoff matrices of a two-player game; rows belong to player 1."""

    a: Matrix
    b: Matrix

    def __post_init__(self):
        conv = lambda m: tuple(tuple(as_fraction(v) for v in row) for row in m)
        object.__setattr__(self, "a", conv(self.a))
        object.__setattr__(self, "b", conv(self.b))
        if len(self.a) == 0 or len(self.a[0]) == 0:
            raise DimensionMismatch("payoff matrices must be nonempty")
        shape_a = {len(r) for r in self.a}
        shape_b = {len(r) for r in self.b}
        if len(shape_a) != 1 or len(shape_b) != 1:
            raise DimensionMismatch("ragged payoff matrix")
        if len(self.a) != len(self.b) or shape_a != shape_b:
            raise DimensionMismatch("the two payoff matrices must share a shape")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.a), len(self.a[0])


@dataclass(frozen=True)
class MixedEquilibrium:
    """One equilibrium point: mixing vectors, payoffs, and a degeneracy marker.

    ``degenerate`` is set when an indifference system was singular or a
    support probability came out exactly zero — both signs that the point may
    sit on a continuum of equilibria.
    """

    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]
    values: tuple[Fraction, Fraction]
    degenerate: bool


def _check_distribution(p: Sequence[Fraction], size: int, label: str) -> None:
    if len(p) != size:
        raise DimensionMismatch(f"{label} has {len(p)} entries, want {size}")
    if any(v < 0 for v in p) or sum(p) != 1:
        raise DimensionMismatch(f"{label} is not a probability vector")


def expected_payoff(
    game: Bimatrix, x: Sequence[Fraction], y: Sequence[Fraction]
) -> tuple[Fraction, Fraction]:
    """Exact expected payoffs x'Ay and x'By."""
    m, k = game.shape
    _check_distribution(x, m, "row strategy")
    _check_distribution(y, k, "column strategy")
    va = sum(x[i] * game.a[i][j] * y[j] for i in range(m) for j in range(k))
    vb = sum(x[i] * game.b[i][j] * y[j] for i in range(m) for j in range(k))
    return Fraction(va), Fraction(vb)


def is_mixed_ne(game: Bimatrix, x: Sequence[Fraction], y: Sequence[Fraction]) -> bool:
    """Equilibrium test via pure deviations, which suffice by linearity."""
    m, k = game.shape
    va, vb = expected_payoff(game, x, y)
    for i in range(m):
        if sum(game.a[i][j] * y[j] for j in range(k)) > va:
            return False
    for j in range(k):
        if sum(x[i] * game.b[i][j] for i in range(m)) > vb:
            return False
    return True


def _solve(rows: list[list[Fraction]], nvars: int):
    """Gauss-Jordan over Fractions on an augmented matrix.

    Returns (solution, status) where status is "unique", "degenerate"
    (consistent but underdetermined; free variables pinned to zero) or
    "inconsistent" (solution is None).
    """
    work = [row[:] for row in rows]
    n = len(work)
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(nvars):
        pivot = next((i for i in range(r, n) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = work[r][c]
        work[r] = [v / inv for v in work[r]]
        for i in range(n):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [v - f * w for v, w in zip(work[i], work[r])]
        pivots.append((r, c))
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if work[i][nvars] != 0:
            return None, "inconsistent"
    solution = [Fraction(0)] * nvars
    for row, col in pivots:
        solution[col] = work[row][nvars]
    return solution, ("unique" if len(pivots) == nvars else "degenerate")


def _indifference_solution(matrix: Matrix, rows: tuple[int, ...], cols: tuple[int, ...], by_row: bool):
    """Mixing over ``cols`` (or rows) equalizing the opponent's payoff on the support.

    ``by_row=True`` solves for the column player's vector y from A;
    ``by_row=False`` solves for the row player's vector x from B.
    """
    r = len(rows)
    system: list[list[Fraction]] = []
    if by_row:
        for i in rows:
            system.append([matrix[i][j] for j in cols] + [Fraction(-1), Fraction(0)])
    else:
        for j in cols:
            system.append([matrix[i][j] for i in rows] + [Fraction(-1), Fraction(0)])
    system.append([Fraction(1)] * r + [Fraction(0), Fraction(1)])
    return _solve(system, r + 1)


def _embed(weights: list[Fraction], support: tuple[int, ...], size: int) -> tuple[Fraction, ...]:
    full = [Fraction(0)] * size
    for w, idx in zip(weights, support):
        full[idx] = w
    return tuple(full)


def support_enumeration(
    game: Bimatrix, max_actions: int = DEFAULT_MAX_ACTIONS
) -> list[MixedEquilibrium]:
    """All equilibria on equal-size supports, in support-bitmask order.

    Complete for nondegenerate games.  For degenerate ones every emitted
    point is still exact and verified, carries the degenerate flag, and
    unequal-support continua are represented only through their basic points.
    """
    m, k = game.shape
    if m > max_actions or k > max_actions:
        raise SizeLimitExceeded(f"{m}x{k} exceeds the {max_actions}-action bound")
    found: dict[tuple, MixedEquilibrium] = {}
    for size in range(1, min(m, k) + 1):
        for rows in combinations(range(m), size):
            for cols in combinations(range(k), size):
                ys, y_status = _indifference_solution(game.a, rows, cols, by_row=True)
                if y_status == "inconsistent":
                    continue
                xs, x_status = _indifference_solution(game.b, rows, cols, by_row=False)
                if x_status == "inconsistent":
                    continue
                x = _embed(xs[:size], rows, m)
                y = _embed(ys[:size], cols, k)
                if any(v < 0 for v in x) or any(v < 0 for v in y):
                    continue
                degenerate = (
                    x_status == "degenerate"
                    or y_status == "degenerate"
                    or any(x[i] == 0 for i in rows)
                    or any(y[j] == 0 for j in cols)
                )
                if not is_mixed_ne(game, x, y):
                    continue
                key = (x, y)
                prev = found.get(key)
                if prev is None:
                    found[key] = MixedEquilibrium(
                        x, y, expected_payoff(game, x, y), degenerate)
                elif degenerate and not prev.degenerate:
                    found[key] = MixedEquilibrium(prev.x, prev.y, prev.values, True)
    return list(found.values())


@dataclass(frozen=True)
class MixedCtf:
    """Payoff set of the mixed transfer function at one capability profile."""

    payoffs: frozenset[tuple[Fraction, Fraction]]
    degenerate: bool


def restrict_to_bimatrix(game: CapabilityGame, capability: Sequence[int]) -> Bimatrix:
    """Restricted payoff matrices of a two-player capability game."""
    if game.n_players != 2:
        raise NotTwoPlayer(f"mixed analysis needs 2 players, got {game.n_players}")
    ra, rb = restricted_sizes(game, capability)
    a = tuple(tuple(game.payoffs[i, j][0] for j in range(rb)) for i in range(ra))
    b = tuple(tuple(game.payoffs[i, j][1] for j in range(rb)) for i in range(ra))
    return Bimatrix(a, b)


def ctf_mixed(
    game: CapabilityGame,
    capability: Sequence[int],
    max_actions: int = DEFAULT_MAX_ACTIONS,
) -> MixedCtf:
    """Mixed capability transfer function of a two-player game at one profile."""
    restricted = restrict_to_bimatrix(game, capability)
    equilibria = support_enumeration(restricted, max_actions=max_actions)
    return MixedCtf(
        frozenset(e.values for e in equilibria),
        any(e.degenerate for e in equilibria),
    )
