"""Brute-force verification of the gold-and-mines closed form.

Everything here works from the game definition alone: strategies are
enumerated exhaustively, payoffs come from coverage counting, and equilibria
are found by comparing against every deviation.  None of the closed-form
expressions are consulted except as the prediction being tested, so a match
is genuine evidence.

Payoffs over all strategy pairs are held as integer matrices (every value is
scaled by the common denominator of rho and mu), which keeps the sweep exact
while letting numpy do the best-response maximisations.  Each table checks a
sample of its own entries against goldmines.payoff at build time.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import lcm

import numpy as np

from . import goldmines
from .errors import OutOfRange, ScaleLimitExceeded
from .goldmines import GameParams, Strategy
from .rationals import format_rational

DEFAULT_MAX_SCALE = 3

_SELF_CHECK_PAIRS = 200


def enumerate_strategies(
    scale: int, cap: int, strict: bool = False, max_scale: int = DEFAULT_MAX_SCALE
) -> list[Strategy]:
    """All strategies with segment count <= cap (== cap when strict), in
    lexicographic bit order."""
    if scale > max_scale:
        raise ScaleLimitExceeded(
            f"scale {scale} over the exhaustive-enumeration bound {max_scale}")
    if scale < 1:
        raise OutOfRange(f"scale must be at least 1, got {scale}")
    if cap < 1:
        raise OutOfRange(f"capability must be at least 1, got {cap}")
    out = []
    for bits in product((0, 1), repeat=4 * scale):
        runs = goldmines.segment_count(bits)
        if runs == cap if strict else runs <= cap:
            out.append(bits)
    return out


class PayoffTable:
    """Scaled-integer payoff matrix over every strategy at one (scale, rho, mu).

    ``ua[a, b]`` is player A's payoff times ``denominator`` when A plays
    strategy index a and B plays b; the game is symmetric, so B's payoff is
    the transposed entry.
    """

    def __init__(self, scale: int, rho: Fraction, mu: Fraction):
        self.scale = scale
        self.rho, self.mu = rho, mu
        self.strategies: list[Strategy] = list(product((0, 1), repeat=4 * scale))
        n = len(self.strategies)
        summaries = [goldmines.summarize(f) for f in self.strategies]
        self.segments = np.array([s.segments for s in summaries], dtype=np.int64)

        # gold coverage as a site-indicator matrix; pairwise shared-gold
        # counts are then one integer matmul
        gold_cols = {}
        for k in range(scale):
            gold_cols[4 * k] = 2 * k
            gold_cols[4 * k + 1] = 2 * k + 1
        gmat = np.zeros((n, 2 * scale), dtype=np.int64)
        for idx, s in enumerate(summaries):
            for site in s.gold_sites:
                gmat[idx, gold_cols[site]] = 1
        shared = gmat @ gmat.T
        n_gold = gmat.sum(axis=1)
        n_mine = np.array([s.n_mine for s in summaries], dtype=np.int64)

        den = lcm(rho.denominator, mu.denominator)
        rho_scaled = rho.numerator * (den // rho.denominator)
        mu_scaled = mu.numerator * (den // mu.denominator)
        self.denominator = den
        bound = 2 * scale * (2 * den + abs(rho_scaled) + abs(mu_scaled))
        if bound < 2**62:
            self.ua = (
                n_gold[:, None] * den
                - shared * (den - rho_scaled)
                + n_mine[:, None] * mu_scaled
            )
        else:
            # huge denominators: fall back to exact Python integers
            self.ua = (
                n_gold[:, None].astype(object) * den
                - shared.astype(object) * (den - rho_scaled)
                + n_mine[:, None].astype(object) * mu_scaled
            )
        self._self_check()

    def _self_check(self) -> None:
        """Compare a sample of table entries against the direct payoff rule."""
        n = len(self.strategies)
        params = GameParams(self.scale, self.rho, self.mu, 4 * self.scale, 4 * self.scale)
        if n * n <= _SELF_CHECK_PAIRS:
            pairs = [(a, b) for a in range(n) for b in range(n)]
        else:
            rng = random.Random(0xC0FFEE ^ n)
            pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(_SELF_CHECK_PAIRS)]
        for a, b in pairs:
            ua, ub = goldmines.payoff(self.strategies[a], self.strategies[b], params)
            if ua * self.denominator != int(self.ua[a, b]):
                raise AssertionError(
                    f"payoff table disagrees with direct evaluation at pair {a},{b}")
            if ub * self.denominator != int(self.ua[b, a]):
                raise AssertionError(
                    f"payoff table asymmetry at pair {a},{b}")

    def payoff_pair(self, a: int, b: int) -> tuple[Fraction, Fraction]:
        den = self.denominator
        return (
            Fraction(int(self.ua[a, b]), den),
            Fraction(int(self.ua[b, a]), den),
        )

    def indices_with_cap(self, cap: int, strict: bool) -> np.ndarray:
        mask = self.segments == cap if strict else self.segments <= cap
        return np.flatnonzero(mask)

    def pure_equilibria(self, cap_a: int, cap_b: int, strict: bool) -> list[tuple[int, int]]:
        """Index pairs where neither player can improve inside their space."""
        rows = self.indices_with_cap(cap_a, strict)
        cols = self.indices_with_cap(cap_b, strict)
        if rows.size == 0 or cols.size == 0:
            return []
        ua = self.ua[np.ix_(rows, cols)]
        ub_t = self.ua[np.ix_(cols, rows)]  # ub_t[j, i] = payoff to B at (rows[i], cols[j])
        best_a = ua == ua.max(axis=0, keepdims=True)
        best_b = (ub_t == ub_t.max(axis=0, keepdims=True)).T
        return [
            (int(rows[i]), int(cols[j]))
            for i, j in np.argwhere(best_a & best_b)
        ]


@lru_cache(maxsize=8)
def _table(scale: int, rho: Fraction, mu: Fraction) -> PayoffTable:
    return PayoffTable(scale, rho, mu)


def enumerate_pure_equilibria(
    params: GameParams, strict: bool = False, max_scale: int = DEFAULT_MAX_SCALE
) -> list[tuple[Strategy, Strategy]]:
    """Every pure equilibrium of the capability-restricted game, found by
    exhaustive deviation sweep, in lexicographic profile order."""
    if params.scale > max_scale:
        raise ScaleLimitExceeded(
            f"scale {params.scale} over the exhaustive-enumeration bound {max_scale}")
    table = _table(params.scale, params.rho, params.mu)
    return [
        (table.strategies[a], table.strategies[b])
        for a, b in table.pure_equilibria(params.cap_a, params.cap_b, strict)
    ]


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking the closed-form payoff set against brute force."""

    params: GameParams
    predicted: frozenset[tuple[Fraction, Fraction]]
    observed: frozenset[tuple[Fraction, Fraction]]
    equilibria_found: int
    match: bool
    counterexamples: tuple[tuple[tuple[Strategy, Strategy], tuple[Fraction, Fraction]], ...]

    def to_json_dict(self) -> dict:
        pairs = lambda vs: [[format_rational(u), format_rational(v)]
                            for u, v in sorted(vs)]
        return {
            "scale": self.params.scale,
            "rho": format_rational(self.params.rho),
            "mu": format_rational(self.params.mu),
            "cap_a": self.params.cap_a,
            "cap_b": self.params.cap_b,
            "predicted": pairs(self.predicted),
            "observed": pairs(self.observed),
            "equilibria_found": self.equilibria_found,
            "match": self.match,
            "counterexamples": [
                {
                    "strategy_a": goldmines.format_strategy(fa),
                    "strategy_b": goldmines.format_strategy(fb),
                    "payoff": [format_rational(u), format_rational(v)],
                }
                for (fa, fb), (u, v) in self.counterexamples
            ],
        }


def verify_closed_form(
    params: GameParams, max_scale: int = DEFAULT_MAX_SCALE
) -> VerificationReport:
    """Compare the closed-form payoff set with the exhaustively observed one."""
    goldmines.require_closed_form_regime(params.rho, params.mu)
    if params.scale > max_scale:
        raise ScaleLimitExceeded(
            f"scale {params.scale} over the exhaustive-enumeration bound {max_scale}")
    predicted = goldmines.equilibrium_payoffs(params)
    table = _table(params.scale, params.rho, params.mu)
    pairs = table.pure_equilibria(params.cap_a, params.cap_b, strict=False)
    observed = set()
    counterexamples = []
    for a, b in pairs:
        value = table.payoff_pair(a, b)
        observed.add(value)
        if value not in predicted and len(counterexamples) < 10:
            counterexamples.append(
                ((table.strategies[a], table.strategies[b]), value))
    return VerificationReport(
        params=params,
        predicted=predicted,
        observed=frozenset(observed),
        equilibria_found=len(pairs),
        match=frozenset(observed) == predicted,
        counterexamples=tuple(counterexamples),
    )


def verify_strict_ne_coverage(
    params: GameParams, max_scale: int = DEFAULT_MAX_SCALE
) -> bool:
    """Do all pure equilibria over exact-segment spaces jointly cover every gold?

    Expected to hold whenever 0 < rho < -mu < 1; the check runs regardless
    and simply reports what it finds.
    """
    for fa, fb in enumerate_pure_equilibria(params, strict=True, max_scale=max_scale):
        if not goldmines.is_complete_gold_coverage(fa, fb):
            return False
    return True
