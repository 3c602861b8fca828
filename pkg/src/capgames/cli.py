"""Command-line front end.

Two command groups: ``goldmines`` (closed-form transfer functions,
equilibrium construction, board layout, brute-force verification) and
``game`` (transfer functions and capability positivity for JSON game files).
Every command renders an OutputTable as aligned text, CSV, or JSON; all
numbers are exact rationals unless --decimal is passed.

The CLI holds no game logic of its own — each cell is produced by a library
call, so scripting against the library reproduces every printed number.

Exit codes: 0 success (and verification matched), 1 usage or input errors,
2 parameter-hypothesis violations, 3 verification mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import bimatrix, gamefile, goldmines, oracle
from .errors import CapgamesError, HypothesisViolation, OutOfRange
from .game import (
    equilibrium_welfare_levels,
    is_capability_positive,
    ctf_pure,
)
from .goldmines import GameParams
from .rationals import format_rational, parse_rational

ENV_MAX_SCALE = "CAPGAMES_MAX_SCALE"

# a cell is a string, int, bool, Fraction, or a sorted tuple of payoff vectors
Cell = object
VectorSet = tuple[tuple[Fraction, ...], ...]


@dataclass
class OutputTable:
    """Rectangular output: one header row plus data rows."""

    header: list[str]
    rows: list[list[Cell]] = field(default_factory=list)


def _vector_set(values) -> VectorSet:
    return tuple(sorted(tuple(v) for v in values))


def _cell_text(cell: Cell, decimal: bool) -> str:
    if isinstance(cell, str):
        return cell
    if isinstance(cell, bool):
        return "true" if cell else "false"
    if isinstance(cell, int):
        return str(cell)
    if isinstance(cell, Fraction):
        return format_rational(cell, decimal)
    parts = []
    for vec in cell:
        inner = ", ".join(format_rational(v, decimal) for v in vec)
        parts.append(inner if len(vec) == 1 else f"({inner})")
    return ";".join(parts) if parts else "{}"


def _cell_json(cell: Cell, decimal: bool):
    if isinstance(cell, (str, bool, int)):
        return cell
    if isinstance(cell, Fraction):
        return format_rational(cell, decimal)
    return [[format_rational(v, decimal) for v in vec] for vec in cell]


def render(table: OutputTable, fmt: str, decimal: bool = False) -> str:
    """Serialize a table as aligned text, CSV, or JSON."""
    if fmt == "json":
        payload = {
            "header": table.header,
            "rows": [[_cell_json(c, decimal) for c in row] for row in table.rows],
        }
        return json.dumps(payload, indent=2)
    text_rows = [table.header] + [
        [_cell_text(c, decimal) for c in row] for row in table.rows
    ]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows(text_rows)
        return buf.getvalue().rstrip("\n")
    widths = [max(len(r[i]) for r in text_rows) for i in range(len(table.header))]
    lines = [
        "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
        for row in text_rows
    ]
    return "\n".join(lines)


# --- goldmines commands ---

def cmd_goldmines_ctf(
    scale: int,
    rho: Fraction,
    mu: Fraction,
    ca_max: int,
    cb_max: int,
    verify: bool = False,
    max_scale: int = oracle.DEFAULT_MAX_SCALE,
) -> OutputTable:
    """Closed-form payoff sets over the capability grid, optionally checked
    against brute force (the check is skipped above the enumeration bound)."""
    do_verify = verify and scale <= max_scale
    header = ["cap_a", "cap_b", "payoffs"] + (["match"] if do_verify else [])
    table = OutputTable(header)
    for ca in range(1, ca_max + 1):
        for cb in range(1, cb_max + 1):
            params = GameParams(scale, rho, mu, ca, cb)
            row: list[Cell] = [ca, cb, _vector_set(goldmines.equilibrium_payoffs(params))]
            if do_verify:
                row.append(oracle.verify_closed_form(params, max_scale=max_scale).match)
            table.rows.append(row)
    return table


def cmd_goldmines_equilibrium(
    scale: int, rho: Fraction, mu: Fraction, ca: int, cb: int, start_a: int
) -> OutputTable:
    params = GameParams(scale, rho, mu, ca, cb)
    fa, fb = goldmines.build_equilibrium(params, start_a)
    ua, ub = goldmines.payoff(fa, fb, params)
    table = OutputTable(
        ["player", "strategy", "segments", "golds_covered", "mines_covered", "payoff"])
    for name, f, u in (("A", fa, ua), ("B", fb, ub)):
        s = goldmines.summarize(f)
        table.rows.append(
            [name, goldmines.format_strategy(f), s.segments, s.n_gold, s.n_mine, u])
    return table


def cmd_goldmines_layout(scale: int) -> OutputTable:
    if scale < 1:
        raise OutOfRange(f"board scale must be a positive integer: {scale}")
    table = OutputTable(["site", "line", "type"])
    for i in range(4 * scale):
        table.rows.append(
            [i, goldmines.resource_line(i, scale), goldmines.resource_type(i, scale)])
    return table


def cmd_goldmines_verify(
    scale: int,
    rho: Fraction,
    mu: Fraction,
    ca: int,
    cb: int,
    max_scale: int = oracle.DEFAULT_MAX_SCALE,
) -> tuple[OutputTable, oracle.VerificationReport]:
    params = GameParams(scale, rho, mu, ca, cb)
    report = oracle.verify_closed_form(params, max_scale=max_scale)
    table = OutputTable(["field", "value"])
    table.rows = [
        ["scale", scale],
        ["rho", rho],
        ["mu", mu],
        ["cap_a", ca],
        ["cap_b", cb],
        ["equilibria_found", report.equilibria_found],
        ["predicted", _vector_set(report.predicted)],
        ["observed", _vector_set(report.observed)],
        ["match", report.match],
    ]
    for (fa, fb), value in report.counterexamples:
        pretty = (f"{goldmines.format_strategy(fa)} {goldmines.format_strategy(fb)}"
                  f" -> ({format_rational(value[0])}, {format_rational(value[1])})")
        table.rows.append(["counterexample", pretty])
    return table, report


# --- generic game commands ---

def cmd_game_ctf(path: str, mode: str = "pure") -> OutputTable:
    """Transfer function of a JSON game, one row per capability profile."""
    game = gamefile.load_game(path)
    caps = [f"c{p + 1}" for p in range(game.n_players)]
    header = caps + ["payoffs"] + (["degenerate"] if mode == "mixed" else [])
    table = OutputTable(header)
    for profile in product(*(range(1, b + 1) for b in game.bounds)):
        if mode == "mixed":
            result = bimatrix.ctf_mixed(game, profile)
            row = [*profile, _vector_set(result.payoffs), result.degenerate]
        else:
            row = [*profile, _vector_set(ctf_pure(game, profile))]
        table.rows.append(row)
    return table


def cmd_game_capability_positive(path: str) -> OutputTable:
    game = gamefile.load_game(path)
    table = OutputTable(["level", "welfare"])
    for b, welfare in enumerate(equilibrium_welfare_levels(game), start=1):
        table.rows.append([b, _vector_set((w,) for w in welfare)])
    table.rows.append(["verdict", is_capability_positive(game).value])
    return table


# --- argument plumbing ---

class _Parser(argparse.ArgumentParser):
    """argparse parser that exits 1 (not 2) on usage errors and lets values
    like -3/4 through as arguments rather than mistaking them for flags."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as bad:
        raise argparse.ArgumentTypeError(str(bad)) from None


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p.add_argument("--decimal", action="store_true",
                   help="render values as decimals instead of exact rationals")


def _add_game_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--M", dest="scale", type=int, required=True,
                   help="board scale: 4*M sites, 2*M golds, 2*M mines")
    p.add_argument("--rho", type=_rational, required=True,
                   help="shared-gold payoff, as p/q")
    p.add_argument("--mu", type=_rational, required=True,
                   help="mine penalty, as p/q (negative)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="capgames",
                     description="Capability transfer functions, exactly.")
    groups = parser.add_subparsers(dest="group", required=True)

    gm = groups.add_parser("goldmines", help="gold-and-mines coverage game")
    gm_cmds = gm.add_subparsers(dest="command", required=True)

    p = gm_cmds.add_parser("ctf", help="closed-form payoff sets over a capability grid")
    _add_game_params(p)
    p.add_argument("--ca-max", type=int, required=True)
    p.add_argument("--cb-max", type=int, required=True)
    p.add_argument("--verify", action="store_true",
                   help="check each cell against brute-force enumeration")
    _add_format(p)

    p = gm_cmds.add_parser("equilibrium", help="construct one pure equilibrium")
    _add_game_params(p)
    p.add_argument("--ca", type=int, required=True)
    p.add_argument("--cb", type=int, required=True)
    p.add_argument("--t", dest="start_a", type=int, required=True, choices=(0, 1),
                   help="equilibrium class: player A's line at site 0")
    _add_format(p)

    p = gm_cmds.add_parser("layout", help="print the board")
    p.add_argument("--M", dest="scale", type=int, required=True)
    _add_format(p)

    p = gm_cmds.add_parser("verify", help="brute-force check of the closed form")
    _add_game_params(p)
    p.add_argument("--ca", type=int, required=True)
    p.add_argument("--cb", type=int, required=True)
    _add_format(p)

    game = groups.add_parser("game", help="generic capability games from JSON files")
    game_cmds = game.add_subparsers(dest="command", required=True)

    p = game_cmds.add_parser("ctf", help="equilibrium payoff sets per capability profile")
    p.add_argument("file")
    p.add_argument("--mode", choices=("pure", "mixed"), default="pure")
    _add_format(p)

    p = game_cmds.add_parser("capability-positive",
                             help="per-level welfare sets and the positivity verdict")
    p.add_argument("file")
    _add_format(p)

    return parser


def _oracle_bound() -> int:
    raw = os.environ.get(ENV_MAX_SCALE)
    if raw is None:
        return oracle.DEFAULT_MAX_SCALE
    try:
        return int(raw)
    except ValueError:
        raise CapgamesError(f"{ENV_MAX_SCALE} must be an integer, got {raw!r}") from None


def _dispatch(args: argparse.Namespace) -> int:
    fmt, decimal = args.format, getattr(args, "decimal", False)
    if args.group == "goldmines":
        if args.command == "ctf":
            table = cmd_goldmines_ctf(args.scale, args.rho, args.mu,
                                      args.ca_max, args.cb_max,
                                      verify=args.verify, max_scale=_oracle_bound())
            print(render(table, fmt, decimal))
            if args.verify and "match" in table.header:
                col = table.header.index("match")
                if not all(row[col] for row in table.rows):
                    return 3
            return 0
        if args.command == "equilibrium":
            table = cmd_goldmines_equilibrium(args.scale, args.rho, args.mu,
                                              args.ca, args.cb, args.start_a)
            print(render(table, fmt, decimal))
            return 0
        if args.command == "layout":
            print(render(cmd_goldmines_layout(args.scale), fmt, decimal))
            return 0
        table, report = cmd_goldmines_verify(args.scale, args.rho, args.mu,
                                             args.ca, args.cb,
                                             max_scale=_oracle_bound())
        if fmt == "json":
            print(json.dumps(report.to_json_dict(), indent=2))
        else:
            print(render(table, fmt, decimal))
        return 0 if report.match else 3
    if args.command == "ctf":
        print(render(cmd_game_ctf(args.file, args.mode), fmt, decimal))
        return 0
    print(render(cmd_game_capability_positive(args.file), fmt, decimal))
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except HypothesisViolation as bad:
        print(f"capgames: parameter hypothesis violated: {bad}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as bad:
        print(f"capgames: bad JSON at line {bad.lineno}, column {bad.colno}: "
              f"{bad.msg}", file=sys.stderr)
        return 1
    except (CapgamesError, OSError) as bad:
        print(f"capgames: {bad}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
