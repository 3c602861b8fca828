"""Two-player gold-and-mines coverage game with exact closed-form equilibria.

The board has ``4*scale`` resource sites indexed left to right.  Site i sits
on line ``(i+1) % 2`` — so lines alternate 1,0,1,0,... — and is gold when
``i % 4`` is 0 or 1, a mine otherwise.  A strategy is a bit per site saying
which line the player occupies there; the player covers site i exactly when
it stands on the site's line.  Gold covered alone pays 1, gold covered by
both pays ``rho`` to each, and every covered mine costs ``mu`` (negative) to
each player covering it.

A strategy's cost is its number of maximal constant runs ("segments"); each
player may only use strategies with at most (or, in strict spaces, exactly)
their capability's worth of segments.  Under ``0 < rho < -mu < 1`` the pure
equilibria of the capability-restricted game have payoffs given by a closed
form, implemented here next to the constructions that realize them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .errors import (
    HypothesisViolation,
    InvalidStartLine,
    LengthMismatch,
    NonConformingInput,
    OutOfRange,
    PreconditionViolated,
)
from .rationals import as_fraction

Strategy = tuple[int, ...]

GOLD = "gold"
MINE = "mine"


@dataclass(frozen=True)
class GameParams:
    """Board scale, payoff parameters, and the two capabilities.

    rho: payoff each player gets from a gold site both cover (0 < rho < 1).
    mu:  penalty per covered mine (mu < 0).
    """

    scale: int
    rho: Fraction
    mu: Fraction
    cap_a: int
    cap_b: int

    def __post_init__(self):
        object.__setattr__(self, "rho", as_fraction(self.rho))
        object.__setattr__(self, "mu", as_fraction(self.mu))
        if self.scale < 1:
            raise OutOfRange(f"scale must be at least 1, got {self.scale}")
        if not 0 < self.rho < 1:
            raise HypothesisViolation(f"need 0 < rho < 1, got rho = {self.rho}")
        if self.mu >= 0:
            raise HypothesisViolation(f"need mu < 0, got mu = {self.mu}")
        if self.cap_a < 1 or self.cap_b < 1:
            raise OutOfRange(
                f"capabilities must be at least 1, got {self.cap_a}, {self.cap_b}")

    @property
    def sites(self) -> int:
        return 4 * self.scale


def require_closed_form_regime(rho: Fraction, mu: Fraction) -> None:
    """The closed form needs 0 < rho < -mu < 1; raise otherwise."""
    if not (0 < rho < -mu < 1):
        raise HypothesisViolation(
            f"closed form needs 0 < rho < -mu < 1; got rho = {rho}, mu = {mu}")


# --- board geometry ---

def resource_line(i: int, scale: int) -> int:
    """Line (0 or 1) that site i sits on."""
    if not 0 <= i < 4 * scale:
        raise OutOfRange(f"site {i} outside 0..{4 * scale - 1}")
    return (i + 1) % 2


def resource_type(i: int, scale: int) -> str:
    """GOLD for i % 4 in {0, 1}, MINE otherwise."""
    if not 0 <= i < 4 * scale:
        raise OutOfRange(f"site {i} outside 0..{4 * scale - 1}")
    return GOLD if i % 4 <= 1 else MINE


def covers(f: Strategy, i: int) -> bool:
    """Whether the strategy stands on site i's line there."""
    return f[i] == (i + 1) % 2


# --- strategies ---

def _check_strategy(f: Sequence[int]) -> int:
    """Return the scale of a well-formed bit sequence."""
    if len(f) == 0 or len(f) % 4 != 0:
        raise LengthMismatch(f"strategy length {len(f)} is not a positive multiple of 4")
    if any(b not in (0, 1) for b in f):
        raise LengthMismatch("strategy entries must be bits")
    return len(f) // 4


def segment_count(f: Sequence[int]) -> int:
    """Number of maximal constant runs."""
    return 1 + sum(1 for a, b in zip(f, f[1:]) if a != b)


def parse_strategy(text: str) -> Strategy:
    cleaned = "".join(text.split())
    if not all(ch in "01" for ch in cleaned):
        raise NonConformingInput(f"strategy text must be 0/1 characters: {text!r}")
    f = tuple(int(ch) for ch in cleaned)
    _check_strategy(f)
    return f


def format_strategy(f: Sequence[int]) -> str:
    return "".join(str(b) for b in f)


@dataclass(frozen=True)
class CoverageSummary:
    """What a single strategy covers, and where its line flips sit."""

    gold_sites: frozenset[int]
    mine_sites: frozenset[int]
    n_gold: int
    n_mine: int
    up_flips: frozenset[int]    # i with f[i] = 0, f[i+1] = 1
    down_flips: frozenset[int]  # i with f[i] = 1, f[i+1] = 0
    segments: int


def summarize(f: Sequence[int]) -> CoverageSummary:
    scale = _check_strategy(f)
    gold = frozenset(
        {4 * k for k in range(scale) if f[4 * k] == 1}
        | {4 * k + 1 for k in range(scale) if f[4 * k + 1] == 0}
    )
    mine = frozenset(
        {4 * k + 2 for k in range(scale) if f[4 * k + 2] == 1}
        | {4 * k + 3 for k in range(scale) if f[4 * k + 3] == 0}
    )
    up = frozenset(i for i in range(len(f) - 1) if f[i] == 0 and f[i + 1] == 1)
    down = frozenset(i for i in range(len(f) - 1) if f[i] == 1 and f[i + 1] == 0)
    return CoverageSummary(gold, mine, len(gold), len(mine), up, down,
                           len(up) + len(down) + 1)


def payoff(fa: Sequence[int], fb: Sequence[int], params: GameParams) -> tuple[Fraction, Fraction]:
    """Exact payoffs of a strategy pair under the given parameters."""
    n = params.sites
    if len(fa) != n or len(fb) != n:
        raise LengthMismatch(
            f"strategies of length {len(fa)}, {len(fb)} on a board of {n} sites")
    ua = ub = Fraction(0)
    for i in range(n):
        line = (i + 1) % 2
        ca, cb = fa[i] == line, fb[i] == line
        if i % 4 <= 1:  # gold
            if ca and cb:
                ua += params.rho
                ub += params.rho
            elif ca:
                ua += 1
            elif cb:
                ub += 1
        else:  # mine
            if ca:
                ua += params.mu
            if cb:
                ub += params.mu
    return ua, ub


# --- structure of best responses ---

def is_aligned(f: Sequence[int]) -> bool:
    """True when every upward flip sits between a block's two mines
    (i % 4 == 2) and every downward flip between its two golds (i % 4 == 0).

    Best responses always have this shape: flipping anywhere else either
    drops a gold or picks up a mine for free.
    """
    _check_strategy(f)
    for i in range(len(f) - 1):
        if f[i] == 0 and f[i + 1] == 1 and i % 4 != 2:
            return False
        if f[i] == 1 and f[i + 1] == 0 and i % 4 != 0:
            return False
    return True


def aligned_coverage_counts(segments: int, start: int, scale: int) -> tuple[int, int]:
    """(golds covered, mines covered) of any aligned strategy, from its shape alone.

    ``start`` is the strategy's bit at site 0.  Valid for
    1 <= segments <= 2*scale + 1.
    """
    if start not in (0, 1):
        raise OutOfRange(f"start bit must be 0 or 1, got {start}")
    if not 1 <= segments <= 2 * scale + 1:
        raise OutOfRange(
            f"segments {segments} outside 1..{2 * scale + 1} at scale {scale}")
    n_gold = scale + (segments + start - 1) // 2
    n_mine = scale - (segments - start) // 2
    return n_gold, n_mine


def is_perfect_cover(f: Sequence[int], lo: int, hi: int) -> bool:
    """Covers every gold and no mine among sites lo..hi (inclusive)."""
    scale = _check_strategy(f)
    if not 0 <= lo <= hi < 4 * scale:
        raise OutOfRange(f"window {lo}..{hi} outside 0..{4 * scale - 1}")
    for i in range(lo, hi + 1):
        gold = i % 4 <= 1
        if covers(f, i) != gold:
            return False
    return True


def is_complete_gold_coverage(fa: Sequence[int], fb: Sequence[int]) -> bool:
    """Do the two strategies jointly cover all 2*scale gold sites?"""
    if len(fa) != len(fb):
        raise LengthMismatch(f"strategy lengths differ: {len(fa)} vs {len(fb)}")
    scale = _check_strategy(fa)
    _check_strategy(fb)
    golds = summarize(fa).gold_sites | summarize(fb).gold_sites
    return len(golds) == 2 * scale


def staircase(scale: int, segments: int, start: int) -> Strategy:
    """Canonical aligned strategy with exactly ``segments`` runs, flipping as
    early as possible from the given start bit.

    With start = 1 this walks the unique full perfect cover from the left;
    with start = 0 it perfectly covers everything right of site 0 once the
    budget allows.  Needs segments <= 2*scale + start.
    """
    if start not in (0, 1):
        raise OutOfRange(f"start bit must be 0 or 1, got {start}")
    limit = 2 * scale + 1 if start == 1 else 2 * scale
    if not 1 <= segments <= limit:
        raise OutOfRange(
            f"segments {segments} outside 1..{limit} for start {start} at scale {scale}")
    first = 0 if start == 1 else 2
    flips = set(range(first, first + 2 * (segments - 1), 2))
    bits = []
    v = start
    for i in range(4 * scale):
        bits.append(v)
        if i in flips:
            v = 1 - v
    return tuple(bits)


def perfect_cover(scale: int) -> Strategy:
    """The unique strategy covering every gold and no mine; costs 2*scale + 1 runs."""
    return staircase(scale, 2 * scale + 1, 1)


def build_complement_cover(fb: Sequence[int]) -> Strategy:
    """Aligned response whose gold coverage completes fb's to the whole board.

    Block by block the response takes the opposite line at the block's edges
    (sites 4k and 4k+3); when the edges disagree the single flip in between
    goes at the canonical spot.  The result never uses more segments than fb.
    """
    scale = _check_strategy(fb)
    if not is_aligned(fb):
        raise NonConformingInput("complement construction needs an aligned strategy")
    bits: list[int] = []
    for k in range(scale):
        left = 1 - fb[4 * k]
        right = 1 - fb[4 * k + 3]
        if left == right:
            bits += [left] * 4
        elif left == 1:
            bits += [1, 0, 0, 0]  # downward flip at 4k
        else:
            bits += [0, 0, 0, 1]  # upward flip at 4k+2
    return tuple(bits)


def pad_segments(f_prime: Sequence[int], target: int, scale: int) -> Strategy:
    """Grow an aligned strategy to exactly ``target`` segments without losing
    any covered gold or moving its start bit.

    Works left to right, perfecting one four-site block per step while two or
    more segments are still missing, then makes a final single-segment
    adjustment at the right edge if needed.  Requirements (each reported by
    name when violated): scale >= 2; 1 <= target <= 2*scale - 1; the input is
    aligned, within budget, and does not already cover the last block
    perfectly.
    """
    if scale < 2:
        raise PreconditionViolated("padding needs scale >= 2")
    if not 1 <= target <= 2 * scale - 1:
        raise PreconditionViolated(
            f"target segments {target} outside 1..{2 * scale - 1}")
    if len(f_prime) != 4 * scale:
        raise PreconditionViolated(
            f"strategy length {len(f_prime)} does not match scale {scale}")
    if not is_aligned(f_prime):
        raise PreconditionViolated("input strategy must be aligned")
    if segment_count(f_prime) > target:
        raise PreconditionViolated(
            f"input already has {segment_count(f_prime)} segments, over target {target}")
    n = 4 * scale
    if is_perfect_cover(f_prime, n - 4, n - 1):
        raise PreconditionViolated("last four sites must be imperfectly covered")

    f = list(f_prime)
    k = 0
    while target - segment_count(f) >= 2:
        if f[4 * k + 3] == 0:
            # alignment forces the next four bits to be 0 here
            f[4 * k + 3] = 1
            if k + 1 < scale:
                f[4 * k + 4] = 1
        elif k > 0 or f[4 * k] == 1:
            # block edges both on line 1: carve the middle out
            f[4 * k + 1] = 0
            f[4 * k + 2] = 0
        k += 1
    if target - segment_count(f) == 1:
        if f[n - 1] == 0:
            f[n - 1] = 1
        elif f[n - 2] == 1:
            f[n - 3] = 0
            f[n - 2] = 0
            f[n - 1] = 0
        else:
            f[n - 5] = 1
            f[n - 4] = 1
            f[n - 1] = 0
    return tuple(f)


# --- equilibrium constructions and the closed form ---

def _deviations(cap: int, scale: int) -> Iterable[Strategy]:
    for bits in product((0, 1), repeat=4 * scale):
        if segment_count(bits) <= cap:
            yield bits


def _search_equilibrium_small(params: GameParams, start_a: int) -> tuple[Strategy, Strategy]:
    """Exhaustive pure-equilibrium search, used only at scale 1 where the
    padding routine is not applicable."""
    sa = list(_deviations(params.cap_a, params.scale))
    sb = list(_deviations(params.cap_b, params.scale))
    for fa in sa:
        if fa[0] != start_a:
            continue
        ua_row = {fb: payoff(fa, fb, params) for fb in sb}
        for fb in sb:
            if fb[0] != 1 - start_a:
                continue
            ua, ub = ua_row[fb]
            if any(payoff(alt, fb, params)[0] > ua for alt in sa):
                continue
            if any(payoff(fa, alt, params)[1] > ub for alt in sb):
                continue
            return fa, fb
    raise RuntimeError("no pure equilibrium found in the requested class")


def _full_capability_response(opponent: Strategy, cap: int, start: int, scale: int) -> Strategy:
    """Aligned strategy with exactly ``cap`` segments (cap <= 2*scale) that
    starts on ``start`` and, together with the opponent, covers every gold."""
    if cap == 2 * scale:
        # the padding routine tops out at 2*scale - 1; the earliest-flip
        # strategy already covers every gold the opponent might miss
        return staircase(scale, cap, start)
    comp = build_complement_cover(opponent)
    if segment_count(comp) == cap:
        return comp
    return pad_segments(comp, cap, scale)


def build_equilibrium(params: GameParams, start_a: int) -> tuple[Strategy, Strategy]:
    """One pure equilibrium of the requested class.

    ``start_a`` selects the equilibrium class by fixing player A's bit at
    site 0.  When both capabilities are below 2*scale + 1 either class
    exists (A starts on ``start_a``, B on the other line).  When exactly one
    player can afford the full perfect cover the class is forced: the
    restricted player starts on line 0.  When both can, both play the
    perfect cover and ``start_a`` is ignored.
    """
    require_closed_form_regime(params.rho, params.mu)
    if start_a not in (0, 1):
        raise InvalidStartLine(f"start line must be 0 or 1, got {start_a}")
    scale, ca, cb = params.scale, params.cap_a, params.cap_b
    full = 2 * scale + 1
    if ca >= full and cb >= full:
        pc = perfect_cover(scale)
        return pc, pc
    if cb >= full:
        # A is the restricted player and must start on line 0
        if start_a != 0:
            raise InvalidStartLine(
                "only the class with player A starting on line 0 exists here")
        return staircase(scale, ca, 0), perfect_cover(scale)
    if ca >= full:
        if start_a != 1:
            raise InvalidStartLine(
                "only the class with player B starting on line 0 exists here")
        return perfect_cover(scale), staircase(scale, cb, 0)
    if scale == 1:
        return _search_equilibrium_small(params, start_a)
    if ca >= cb:
        fb = staircase(scale, cb, 1 - start_a)
        fa = _full_capability_response(fb, ca, start_a, scale)
    else:
        fa = staircase(scale, ca, start_a)
        fb = _full_capability_response(fa, cb, 1 - start_a, scale)
    return fa, fb


def _class_payoffs(params: GameParams, start_a: int) -> tuple[Fraction, Fraction]:
    scale = params.scale
    ca = min(params.cap_a, 2 * scale + 1)
    cb = min(params.cap_b, 2 * scale + 1)
    t = start_a
    rho, mu = params.rho, params.mu
    base = (mu + 1) * scale
    ua = ((ca + t - 1) // 2) * rho - ((ca - t) // 2) * mu + ((cb - t) // 2) * (rho - 1) + base
    ub = ((cb - t) // 2) * rho - ((cb + t - 1) // 2) * mu + ((ca + t - 1) // 2) * (rho - 1) + base
    return ua, ub


def admissible_start_lines(params: GameParams) -> tuple[int, ...]:
    """Equilibrium classes that exist for these capabilities."""
    top = 2 * params.scale
    if params.cap_a <= top and params.cap_b <= top:
        return (0, 1)
    if params.cap_a <= top:
        return (0,)
    if params.cap_b <= top:
        return (1,)
    return (0, 1)  # both unrestricted: one equilibrium, same payoffs either way


def equilibrium_payoffs(params: GameParams) -> frozenset[tuple[Fraction, Fraction]]:
    """Closed-form payoff set over all pure equilibria of the game.

    Capabilities act only through min(cap, 2*scale + 1).  Generically two
    payoff vectors when both players are restricted (one per class), one
    otherwise.
    """
    require_closed_form_regime(params.rho, params.mu)
    return frozenset(_class_payoffs(params, t) for t in admissible_start_lines(params))


def equal_capability_welfare(scale: int, rho: Fraction, mu: Fraction, cap: int) -> Fraction:
    """Total welfare at any equilibrium when both capabilities equal ``cap``.

    The slope per useful segment is 2*rho - mu - 1, so welfare falls as
    shared capability grows exactly when rho < (1 + mu) / 2.
    """
    rho, mu = as_fraction(rho), as_fraction(mu)
    require_closed_form_regime(rho, mu)
    if scale < 1:
        raise OutOfRange(f"scale must be at least 1, got {scale}")
    if cap < 1:
        raise OutOfRange(f"capability must be at least 1, got {cap}")
    effective = min(cap, 2 * scale + 1)
    return (2 * rho - mu - 1) * (effective - 1) + 2 * (mu + 1) * scale
