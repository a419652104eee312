"""Brute-force game solver with optional draw-certificate pruning.

Depth-unbounded negamax with alpha-beta and a per-call transposition table.
Scores are from the side to move: +1 win, 0 draw, -1 loss.  With pruning
enabled, a draw certificate at a Black-to-move node proves Black cannot win
(value at most 0); it is used as a sound fail-low cutoff, so verdicts are
identical across pruning modes.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .board import (
    BLACK,
    EMPTY,
    WHITE,
    BoardSpec,
    Cell,
    Position,
    cell_key,
    enumerate_groups,
    live_black_groups,
)
from .pairing import find_hj_pairing


class SearchGuardError(RuntimeError):
    """Raised when a position has more empty cells than the solver guard allows."""


class Verdict(Enum):
    BLACK_WIN = "BlackWin"
    DRAW = "Draw"
    WHITE_WIN = "WhiteWin"

    def __str__(self) -> str:
        return self.value


PRUNING_MODES = ("none", "hj", "setmatch")

_EXACT, _LOWER, _UPPER = 0, 1, 2


@dataclass
class SearchStats:
    nodes_examined: int = 0
    table_hits: int = 0
    prune_events: Counter = field(default_factory=Counter)


def _zobrist(spec: BoardSpec) -> dict[tuple[int, str], int]:
    rng = random.Random(0xC0FFEE ^ (spec.m << 16) ^ (spec.n << 8) ^ spec.k)
    return {
        (i, s): rng.getrandbits(64)
        for i in range(spec.m * spec.n)
        for s in (BLACK, WHITE)
    }


def _certificate_holds(pos: Position, pruning: str) -> bool:
    from .configs import prove_draw

    if pruning == "hj":
        live = live_black_groups(pos)
        return find_hj_pairing(pos, live) is not None
    return prove_draw(pos) is not None


def solve(
    pos: Position,
    pruning: str = "none",
    guard: int = 26,
    use_table: bool = True,
) -> tuple[Verdict, SearchStats]:
    """Exact game value of pos with perfect play, plus search statistics."""
    if pruning not in PRUNING_MODES:
        raise ValueError(f"unknown pruning mode {pruning!r}")
    spec = pos.spec
    empt = pos.empties()
    if len(empt) > guard:
        raise SearchGuardError(
            f"{len(empt)} empty cells exceeds guard of {guard}"
        )
    stats = SearchStats()

    # Headline shortcut: on the fully empty board the first player's value is
    # at least a draw (strategy stealing), so a certificate decides it outright.
    if (
        pruning != "none"
        and pos.to_move == BLACK
        and pos.count(BLACK) == 0
        and pos.count(WHITE) == 0
        and _certificate_holds(pos, pruning)
    ):
        stats.nodes_examined = 1
        stats.prune_events[pruning] += 1
        return Verdict.DRAW, stats

    m, n = spec.m, spec.n
    grid = [EMPTY] * (m * n)
    for (c, r) in spec.cells():
        grid[r * m + c] = pos.at((c, r))
    lines_through: list[list[tuple[int, ...]]] = [[] for _ in range(m * n)]
    for g in enumerate_groups(spec):
        idxs = tuple(r * m + c for (c, r) in g.cells)
        for i in idxs:
            lines_through[i].append(idxs)
    zob = _zobrist(spec)
    h = 0
    for i, s in enumerate(grid):
        if s != EMPTY:
            h ^= zob[(i, s)]
    side_hash = random.Random(0xBADC0DE).getrandbits(64)

    center = ((m - 1) / 2, (n - 1) / 2)
    ordered = sorted(
        (c[1] * m + c[0] for c in empt),
        key=lambda i: (
            (i % m - center[0]) ** 2 + (i // m - center[1]) ** 2,
            (i // m, i % m),
        ),
    )
    table: dict[int, tuple[tuple, int, int]] = {}

    def to_position(side: str) -> Position:
        rows = tuple(
            "".join(grid[r * m : (r + 1) * m]) for r in range(n)
        )
        return Position(spec, rows, side)

    def wins(i: int, side: str) -> bool:
        return any(all(grid[j] == side for j in line) for line in lines_through[i])

    def negamax(side: str, alpha: int, beta: int, hsh: int, empties_left: int) -> int:
        stats.nodes_examined += 1
        if empties_left == 0:
            return 0
        key = hsh ^ (side_hash if side == WHITE else 0)
        state = None
        if use_table:
            entry = table.get(key)
            if entry is not None:
                state = (tuple(grid), side)
                stored_state, value, flag = entry
                if stored_state == state:
                    if flag == _EXACT:
                        stats.table_hits += 1
                        return value
                    if flag == _LOWER and value >= beta:
                        stats.table_hits += 1
                        return value
                    if flag == _UPPER and value <= alpha:
                        stats.table_hits += 1
                        return value
        if pruning != "none" and side == BLACK and alpha >= 0:
            if _certificate_holds(to_position(side), pruning):
                stats.prune_events[pruning] += 1
                return 0
        orig_alpha = alpha
        best = -2
        opp = WHITE if side == BLACK else BLACK
        for i in ordered:
            if grid[i] != EMPTY:
                continue
            grid[i] = side
            if wins(i, side):
                grid[i] = EMPTY
                best = 1
                break
            child = negamax(
                opp, -beta, -alpha, hsh ^ zob[(i, side)], empties_left - 1
            )
            grid[i] = EMPTY
            value = -child
            if value > best:
                best = value
            if best > alpha:
                alpha = best
            if alpha >= beta or best == 1:
                break
        if use_table:
            if state is None:
                state = (tuple(grid), side)
            flag = _EXACT
            if best <= orig_alpha:
                flag = _UPPER
            elif best >= beta:
                flag = _LOWER
            table[key] = (state, best, flag)
        return best

    score = negamax(pos.to_move, -1, 1, h, len(empt))
    if pos.to_move == BLACK:
        verdict = (Verdict.BLACK_WIN, Verdict.DRAW, Verdict.WHITE_WIN)[1 - score]
    else:
        verdict = (Verdict.WHITE_WIN, Verdict.DRAW, Verdict.BLACK_WIN)[1 - score]
    return verdict, stats


@dataclass
class FixtureReport:
    name: str
    verdict: Verdict
    nodes_none: int
    nodes_hj: int
    nodes_setmatch: int
    certificate_status: str


REPORT_HEADER = (
    "# node counts include every solver invocation, the root included\n"
    f"{'fixture':12s} {'verdict':9s} {'nodes_none':>10s} {'nodes_hj':>10s} "
    f"{'nodes_setmatch':>14s} {'certificate':>12s}"
)


def verify_draw_claims(fixtures: Sequence[tuple[str, str, str | None]]) -> list[FixtureReport]:
    """Solve each fixture in all pruning modes and validate its bundled certificate.

    Each fixture is (name, board_text, certificate_text_or_None).  A BlackWin
    verdict on any fixture is a loud failure: it would falsify the claimed
    draw proof.
    """
    from .board import parse_position
    from .certio import certificate_from_json
    from .configs import check_certificate

    reports = []
    for name, board_text, cert_text in fixtures:
        pos = parse_position(board_text)
        verdict, s_none = solve(pos, pruning="none")
        _, s_hj = solve(pos, pruning="hj")
        _, s_sm = solve(pos, pruning="setmatch")
        if cert_text is None:
            status = "missing"
        else:
            cert = certificate_from_json(cert_text)
            status = "Valid" if check_certificate(cert).valid else "Invalid"
        if verdict == Verdict.BLACK_WIN:
            raise AssertionError(
                f"fixture {name}: oracle verdict is BlackWin, draw claim falsified"
            )
        reports.append(
            FixtureReport(
                name,
                verdict,
                s_none.nodes_examined,
                s_hj.nodes_examined,
                s_sm.nodes_examined,
                status,
            )
        )
    return reports


def format_report(reports: Sequence[FixtureReport]) -> str:
    lines = [REPORT_HEADER]
    for r in reports:
        lines.append(
            f"{r.name:12s} {str(r.verdict):9s} {r.nodes_none:10d} "
            f"{r.nodes_hj:10d} {r.nodes_setmatch:14d} {r.certificate_status:>12s}"
        )
    return "\n".join(lines)


def report_as_dicts(reports: Sequence[FixtureReport]) -> list[dict]:
    return [
        {
            "fixture": r.name,
            "verdict": str(r.verdict),
            "nodes_none": r.nodes_none,
            "nodes_hj": r.nodes_hj,
            "nodes_setmatch": r.nodes_setmatch,
            "certificate_status": r.certificate_status,
        }
        for r in reports
    ]
