"""Matching sets: marker sets with coverings that block every Black first move.

A matching set bundles markers N, groups G, and coverings C.  Each covering
names Black's first marker move, White's response, and how the groups missed
by that response are handled: either explicit marker pairs (a plain pairing)
or a nested matching set.  Verification expands coverings omitted as
symmetric in the source notation, then demands literal completeness: every
marker must be answerable.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

from .board import BLACK, Cell, Group, Position, cell_key, winner
from .board import apply_move, cell_name
from .pairing import PairResponder

Node = Hashable
SymmetryMap = dict


@dataclass(frozen=True)
class Covering:
    """Black first move -> White response, plus the remainder coverage."""

    black_move: Node
    white_response: Node
    pairs: tuple[tuple[Node, Node], ...] = ()
    nested: "MatchingSet | None" = None


@dataclass
class MatchingSet:
    markers: frozenset
    groups: tuple
    coverings: tuple[Covering, ...]
    symmetry: tuple[SymmetryMap, ...] = ()

    def group_nodes(self, g) -> frozenset:
        return g.cell_set if isinstance(g, Group) else frozenset(g)

    def group_markers(self, g) -> frozenset:
        return self.group_nodes(g) & self.markers


@dataclass(frozen=True)
class ProofResult:
    violations: tuple[tuple[str, str], ...]

    @property
    def valid(self) -> bool:
        return not self.violations


def coverage_ratio(m: MatchingSet) -> Fraction:
    """Markers per group, as an exact rational (2 for a plain HJ-pairing)."""
    if not m.groups:
        raise ZeroDivisionError("matching set has no groups")
    return Fraction(len(m.markers), len(m.groups))


def _complete_perm(perm: SymmetryMap, nodes: frozenset) -> SymmetryMap | None:
    """Extend a partially written permutation with fixed points; None if invalid."""
    full = {n: perm.get(n, n) for n in nodes}
    if set(perm) - set(nodes) or set(full.values()) != set(nodes):
        return None
    return full


def symmetry_closure(nodes: frozenset, gens: Sequence[SymmetryMap]) -> list[SymmetryMap]:
    """The permutation group generated by the given maps (identity included)."""
    completed = []
    for g in gens:
        full = _complete_perm(g, nodes)
        if full is None:
            raise ValueError(f"symmetry map is not a permutation of the markers: {g}")
        completed.append(full)
    ident = {n: n for n in nodes}
    seen = {tuple(sorted(ident.items(), key=repr)): ident}
    frontier = [ident]
    while frontier:
        p = frontier.pop()
        for g in completed:
            q = {n: g[p[n]] for n in nodes}
            key = tuple(sorted(q.items(), key=repr))
            if key not in seen:
                seen[key] = q
                frontier.append(q)
    return list(seen.values())


def _apply_perm_covering(cov: Covering, perm: SymmetryMap) -> Covering:
    nested = None
    if cov.nested is not None:
        nested = _apply_perm_matching(cov.nested, perm)
    pairs = tuple(
        tuple(sorted((perm[u], perm[v]), key=repr)) for u, v in cov.pairs
    )
    return Covering(perm[cov.black_move], perm[cov.white_response], pairs, nested)


def _apply_perm_matching(m: MatchingSet, perm: SymmetryMap) -> MatchingSet:
    groups = tuple(
        frozenset(perm.get(n, n) for n in m.group_nodes(g)) for g in m.groups
    )
    return MatchingSet(
        markers=frozenset(perm.get(n, n) for n in m.markers),
        groups=groups,
        coverings=tuple(_apply_perm_covering(c, perm) for c in m.coverings),
        symmetry=(),
    )


def expand_coverings(m: MatchingSet, name: Callable[[Node], str]) -> tuple[dict, list]:
    """One covering per marker after symmetry expansion; also any expansion errors.

    Explicitly listed coverings win over expanded ones; among expanded
    candidates for the same first move the lexicographically-smallest is kept.
    """
    violations: list[tuple[str, str]] = []
    try:
        perms = symmetry_closure(m.markers, m.symmetry)
    except ValueError as exc:
        return {}, [("symmetry", str(exc))]
    usable = []
    for cov in m.coverings:
        touched = {cov.black_move, cov.white_response} | {
            n for pair in cov.pairs for n in pair
        }
        if touched <= m.markers:
            usable.append(cov)
        else:
            bad = ", ".join(name(n) for n in sorted(touched - m.markers, key=repr))
            violations.append(
                ("coverings", f"covering for {name(cov.black_move)} uses non-markers: {bad}")
            )
    explicit = {c.black_move: c for c in usable}
    chosen: dict[Node, Covering] = dict(explicit)
    candidates: dict[Node, list[Covering]] = {}
    for cov in usable:
        for perm in perms:
            image = _apply_perm_covering(cov, perm)
            candidates.setdefault(image.black_move, []).append(image)
    for x, cands in candidates.items():
        if x not in chosen:
            chosen[x] = min(
                cands, key=lambda c: (repr(c.white_response), repr(c.pairs))
            )
    for marker in m.markers:
        if marker not in chosen:
            violations.append(
                ("coverings", f"no covering for first move {name(marker)}")
            )
    return chosen, violations


def _verify(
    m: MatchingSet,
    is_empty: Callable[[Node], bool],
    group_has_white: Callable[[object], bool],
    name: Callable[[Node], str],
    where: str = "matching set",
) -> list[tuple[str, str]]:
    v: list[tuple[str, str]] = []
    gname = lambda g: str(g) if isinstance(g, Group) else "".join(sorted(map(str, g)))
    for marker in sorted(m.markers, key=repr):
        if not is_empty(marker):
            v.append((where, f"marker {name(marker)} is not empty"))
    node_sets = [m.group_nodes(g) for g in m.groups]
    if len(set(node_sets)) != len(node_sets):
        v.append((where, "duplicate groups"))
    for i, a in enumerate(node_sets):
        for j in range(i + 1, len(node_sets)):
            if len(a & node_sets[j]) >= 2:
                v.append(
                    (where, f"groups {gname(m.groups[i])} and "
                            f"{gname(m.groups[j])} overlap")
                )
    for g in m.groups:
        if not m.group_markers(g):
            v.append((where, f"group {gname(g)} contains no marker"))
        if group_has_white(g):
            v.append((where, f"group {gname(g)} contains a White stone"))
    if v:
        return v

    chosen, expansion_errors = expand_coverings(m, name)
    v.extend((where + "/" + loc, reason) for loc, reason in expansion_errors)

    for x, cov in sorted(chosen.items(), key=lambda kv: repr(kv[0])):
        loc = f"{where}/covering {name(x)}"
        y = cov.white_response
        if x not in m.markers or y not in m.markers:
            v.append((loc, "first move or response is not a marker"))
            continue
        if x == y:
            v.append((loc, "response equals the first move"))
            continue
        used = {x, y}
        bad_pairs = False
        for u, w in cov.pairs:
            for node in (u, w):
                if node not in m.markers:
                    v.append((loc, f"pair marker {name(node)} outside markers"))
                    bad_pairs = True
                elif node in used:
                    v.append((loc, f"pair marker {name(node)} reused"))
                    bad_pairs = True
                used.add(node)
            if u == w:
                v.append((loc, "degenerate pair"))
                bad_pairs = True
        if bad_pairs:
            continue
        remaining = [g for g in m.groups if y not in m.group_nodes(g)]
        if cov.nested is not None:
            nested_nodes = {m.group_nodes(g) for g in cov.nested.groups}
            for g in remaining:
                if m.group_nodes(g) not in nested_nodes:
                    v.append((loc, f"group {gname(g)} missing from nested set"))
            if not cov.nested.markers <= m.markers - {x, y}:
                v.append((loc, "nested markers escape the remaining markers"))
            nested_empty = lambda n: is_empty(n) and n not in (x, y)
            v.extend(
                _verify(cov.nested, nested_empty, group_has_white, name, loc + "/nested")
            )
        else:
            for g in remaining:
                nodes = m.group_nodes(g)
                if not any(u in nodes and w in nodes for u, w in cov.pairs):
                    v.append(
                        (loc, f"group {gname(g)} uncovered after "
                              f"{name(x)}->{name(y)}")
                    )
    return v


def verify_matching_set(pos: Position, m: MatchingSet) -> ProofResult:
    """Check a concrete matching set against a position; Black must be to move."""
    v: list[tuple[str, str]] = []
    if pos.to_move != BLACK:
        v.append(("position", "side to move is not Black"))
    for g in m.groups:
        if not isinstance(g, Group):
            v.append(("matching set", f"group {g!r} is not a board group"))
    if v:
        return ProofResult(tuple(v))
    from .board import WHITE

    v = _verify(
        m,
        is_empty=lambda c: pos.spec.in_bounds(c) and pos.is_empty(c),
        group_has_white=lambda g: any(pos.at(c) == WHITE for c in g),
        name=cell_name,
    )
    return ProofResult(tuple(v))


def verify_abstract(m: MatchingSet) -> ProofResult:
    """Check a matching set over abstract labels (all markers taken as empty)."""
    return ProofResult(
        tuple(
            _verify(
                m,
                is_empty=lambda n: True,
                group_has_white=lambda g: False,
                name=str,
            )
        )
    )


class MatchResponder:
    """White's reply engine for a verified matching set.

    Waits for Black's first marker move, answers with the covering's
    response, then follows the remainder (pairs, or a nested responder).
    Non-marker Black moves get the default rule: lowest empty non-marker,
    else the forced-marker rule.  Any marker White takes permanently covers
    every group through it, so forced marker moves are always safe.
    """

    def __init__(self, m: MatchingSet, key=repr) -> None:
        self.m = m
        self.key = key
        chosen, errors = expand_coverings(m, name=str)
        if errors:
            raise ValueError(f"cannot execute an invalid matching set: {errors}")
        self.cover_map = chosen
        self.delegate: PairResponder | MatchResponder | None = None
        self.white_owned: set[Node] = set()

    def _activate(self, cov: Covering) -> None:
        if cov.nested is not None:
            sub = MatchResponder(cov.nested, key=self.key)
            sub.white_owned |= self.white_owned
            self.delegate = sub
        else:
            live = [
                p for p in cov.pairs if not any(n in self.white_owned for n in p)
            ]
            self.delegate = PairResponder(live, key=self.key)

    def respond(self, black: Node | None, empties: set[Node]) -> Node | None:
        if self.delegate is not None:
            move = self.delegate.respond(black, empties)
        elif black in self.cover_map:
            cov = self.cover_map[black]
            self._activate(cov)
            if cov.white_response in empties:
                move = cov.white_response
            else:
                move = self.delegate.respond(None, empties)
        else:
            move = self._default(empties)
        if move is not None:
            self.white_owned.add(move)
        return move

    def _default(self, empties: set[Node]) -> Node | None:
        plain = sorted(empties - self.m.markers, key=self.key)
        if plain:
            return plain[0]
        responses = sorted(
            {c.white_response for c in self.cover_map.values()} & empties,
            key=self.key,
        )
        if responses:
            return responses[0]
        rest = sorted(empties, key=self.key)
        return rest[0] if rest else None


COVERED_BY_WHITE = "covered-by-white"
COMPLETED_BY_BLACK = "completed-by-black"
OPEN = "open"


@dataclass
class GameTrace:
    moves: list[tuple[str, Cell]] = field(default_factory=list)
    outcomes: dict = field(default_factory=dict)

    @property
    def black_completed(self) -> list:
        return [g for g, o in self.outcomes.items() if o == COMPLETED_BY_BLACK]


def execute_strategy(
    pos: Position,
    m: MatchingSet,
    black_policy: Callable[[Position], Cell | None],
) -> GameTrace:
    """Play White per the matching set against an arbitrary Black policy."""
    from .board import WHITE

    responder = MatchResponder(m, key=cell_key)
    trace = GameTrace()
    cur = pos
    last_black: Cell | None = None
    while True:
        if cur.to_move == BLACK:
            move = black_policy(cur)
            if move is None:
                break
            cur = apply_move(cur, move)
            trace.moves.append((BLACK, move))
            last_black = move
            if winner(cur) == BLACK:
                break
        else:
            move = responder.respond(last_black, set(cur.empties()))
            if move is None:
                break
            cur = apply_move(cur, move)
            trace.moves.append((WHITE, move))
    for g in m.groups:
        states = {cur.at(c) for c in g}
        if WHITE in states:
            trace.outcomes[g] = COVERED_BY_WHITE
        elif states == {BLACK}:
            trace.outcomes[g] = COMPLETED_BY_BLACK
        else:
            trace.outcomes[g] = OPEN
    return trace


def exhaustive_marker_adversary(m: MatchingSet) -> list[list[Node]]:
    """All Black marker orders that complete a group's markers; [] means sound.

    Runs on the abstract marker arena: Black plays only markers, White
    replies per the responder, and a group counts as completed for Black as
    soon as all of its marker labels are Black (the worst case, since
    non-marker cells may already be black).
    """
    failures: list[list[Node]] = []
    group_markers = [m.group_markers(g) for g in m.groups]

    def completed(black: frozenset, white: frozenset) -> bool:
        return any(gm <= black and not (gm & white) for gm in group_markers)

    def step(
        resp: MatchResponder,
        black: frozenset,
        white: frozenset,
        order: list[Node],
    ) -> None:
        empties = m.markers - black - white
        if not empties:
            return
        for x in sorted(empties, key=repr):
            b2 = black | {x}
            if completed(b2, white):
                failures.append(order + [x])
                continue
            r2 = copy.deepcopy(resp)
            y = r2.respond(x, m.markers - b2 - white)
            w2 = white | ({y} if y is not None else set())
            step(r2, b2, w2, order + [x])

    step(MatchResponder(m), frozenset(), frozenset(), [])
    return failures
