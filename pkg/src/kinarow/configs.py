"""Catalog of drawing configurations, embedding detection, and draw proving.

Templates describe configurations abstractly: labeled markers, groups given
by their marker labels, and a matching set over those labels.  Detection
embeds templates into concrete positions; prove_draw combines independent
embeddings with a residual pairing to cover every live Black group.
"""

from __future__ import annotations

import string
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .board import (
    BLACK,
    Cell,
    Group,
    Position,
    WHITE,
    cell_key,
    live_black_groups,
)
from .pairing import Pairing, find_hj_pairing, match_pairs
from .setmatch import (
    Covering,
    MatchingSet,
    ProofResult,
    symmetry_closure,
    verify_abstract,
    verify_matching_set,
)

Label = str
AbstractGroup = frozenset


@dataclass(frozen=True)
class ConfigTemplate:
    name: str
    matching: MatchingSet
    main_markers: tuple[Label, Label]

    @property
    def markers(self) -> frozenset:
        return self.matching.markers

    @property
    def groups(self) -> tuple[AbstractGroup, ...]:
        return self.matching.groups

    @property
    def num_markers(self) -> int:
        return len(self.matching.markers)

    @property
    def num_groups(self) -> int:
        return len(self.matching.groups)

    @property
    def reduction(self) -> int:
        """Markers saved versus a plain two-per-group pairing."""
        return 2 * self.num_groups - self.num_markers

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.num_markers, self.num_groups)


def _groups(*words: str) -> tuple[AbstractGroup, ...]:
    return tuple(frozenset(w) for w in words)


def _pairs(*ps: str) -> tuple[tuple[Label, Label], ...]:
    return tuple(tuple(sorted(p)) for p in ps)


def derive_coverings(
    markers: frozenset,
    groups: Sequence[AbstractGroup],
    main: tuple[Label, Label],
) -> tuple[Covering, ...]:
    """Build a complete covering set: main-marker responses, pairings by exact matching."""
    a, b = main
    coverings = []
    for x in sorted(markers):
        if x == a:
            replies: list[Label] = [b]
        elif x == b:
            replies = [a]
        else:
            replies = [a, b] + sorted(markers - {a, b, x})
        for y in replies:
            remaining = [g - {x, y} for g in groups if y not in g]
            pairs = match_pairs(remaining, frozenset(markers - {x, y}), key=str)
            if pairs is not None:
                coverings.append(Covering(x, y, tuple(tuple(p) for p in pairs)))
                break
        else:
            raise ValueError(f"no covering derivable for first move {x}")
    return tuple(coverings)


def _template(
    name: str,
    markers: str,
    groups: tuple[AbstractGroup, ...],
    coverings: tuple[Covering, ...] | None,
    symmetry: tuple[dict, ...],
    main: tuple[Label, Label],
) -> ConfigTemplate:
    marker_set = frozenset(markers)
    if coverings is None:
        coverings = derive_coverings(marker_set, groups, main)
        symmetry = ()
    m = MatchingSet(marker_set, groups, coverings, symmetry)
    return ConfigTemplate(name, m, main)


def cycle_template(n: int) -> ConfigTemplate:
    """Cycle of n groups: all corners marked, all sides but one carry an extra marker."""
    if n < 3:
        raise ValueError("a cycle needs at least 3 groups")
    if 2 * n - 1 > 26:
        raise ValueError("cycle too large for letter labels")
    letters = string.ascii_lowercase
    corners = list(letters[:n])  # a, b main; c.. around the cycle
    edges = list(letters[n : 2 * n - 1])
    a, b = corners[0], corners[1]
    if n == 3:
        sides = [(a, corners[2]), (b, corners[2])]
    else:
        sides = [(a, corners[-1]), (b, corners[2])]
        sides += [(corners[i], corners[i + 1]) for i in range(2, n - 1)]
    groups = [frozenset((a, b))]
    groups += [frozenset((u, e, v)) for (u, v), e in zip(sides, edges)]
    return _template(
        f"CycleN({n})", letters[: 2 * n - 1], tuple(groups), None, (), (a, b)
    )


def cycle_line_template(n: int) -> ConfigTemplate:
    """Cycle of n groups plus a line through the two edge markers nearest the main side."""
    base = cycle_template(n)
    letters = string.ascii_lowercase
    e1 = letters[n]  # edge marker on the side at a
    e2 = letters[n + 1]  # edge marker on the side at b
    extra = letters[2 * n - 1]
    groups = base.groups + (frozenset((e1, extra, e2)),)
    return _template(
        f"CycleNLine({n})",
        letters[: 2 * n],
        groups,
        None,
        (),
        base.main_markers,
    )


def _fixed_templates() -> list[ConfigTemplate]:
    ts = []
    ts.append(
        _template(
            "Triangle",
            "abcde",
            _groups("ab", "adc", "bec"),
            (
                Covering("a", "b", _pairs("cd")),
                Covering("c", "a", _pairs("be")),
                Covering("d", "a", _pairs("bc")),
            ),
            ({"a": "b", "b": "a", "d": "e", "e": "d"},),
            ("a", "b"),
        )
    )
    ts.append(
        _template(
            "Square",
            "abcdefg",
            _groups("ab", "aed", "bfc", "cgd"),
            (
                Covering("a", "b", _pairs("cg", "de")),
                Covering("c", "a", _pairs("bf", "dg")),
                Covering("e", "a", _pairs("bc", "dg")),
                Covering("g", "a", _pairs("bf", "cd")),
            ),
            ({"a": "b", "b": "a", "c": "d", "d": "c", "e": "f", "f": "e"},),
            ("a", "b"),
        )
    )
    ts.append(
        _template(
            "Triangle/Line",
            "abcdef",
            _groups("ab", "adc", "bec", "dfe"),
            (
                Covering("a", "b", _pairs("cd", "ef")),
                Covering("c", "a", _pairs("be", "df")),
                Covering("d", "a", _pairs("bc", "ef")),
                Covering("f", "a", _pairs("bc", "de")),
            ),
            ({"a": "b", "b": "a", "d": "e", "e": "d"},),
            ("a", "b"),
        )
    )
    ts.append(
        _template(
            "Square/Line",
            "abcdefgh",
            _groups("ab", "aed", "bfc", "cgd", "ehf"),
            (
                Covering("a", "b", _pairs("cg", "de", "fh")),
                Covering("c", "a", _pairs("bf", "dg", "eh")),
                Covering("e", "a", _pairs("bc", "dg", "fh")),
                Covering("g", "a", _pairs("bf", "cd", "eh")),
                Covering("h", "a", _pairs("bc", "dg", "ef")),
            ),
            ({"a": "b", "b": "a", "c": "d", "d": "c", "e": "f", "f": "e"},),
            ("a", "b"),
        )
    )
    ts.append(
        _template(
            "BiTriangle",
            "abcdefgh",
            _groups("ab", "adc", "agf", "bec", "bhf"),
            (
                Covering("a", "b", _pairs("cd", "fg")),
                Covering("c", "a", _pairs("be", "fh")),
                Covering("d", "a", _pairs("bc", "fh")),
            ),
            (
                {"c": "f", "f": "c", "d": "g", "g": "d", "e": "h", "h": "e"},
                {"a": "b", "b": "a", "d": "e", "e": "d", "g": "h", "h": "g"},
            ),
            ("a", "b"),
        )
    )
    ts.append(
        _template(
            "BiTriangleX",
            "abcdefg",
            _groups("ab", "adc", "aef", "bec", "bgf"),
            (
                Covering("a", "b", _pairs("cd", "ef")),
                Covering("c", "a", _pairs("be", "fg")),
                Covering("d", "a", _pairs("bf", "ce")),
                Covering("e", "a", _pairs("bc", "fg")),
            ),
            ({"a": "b", "b": "a", "c": "f", "f": "c", "d": "g", "g": "d"},),
            ("a", "b"),
        )
    )
    flatstar_cov = (
        Covering("a", "b", _pairs("ce", "dg", "fh")),
        Covering("b", "g", _pairs("ac", "df", "eh")),
        Covering("d", "b", _pairs("ag", "ce", "fh")),
    )
    flatstar_sym = (
        {"a": "c", "c": "a", "d": "e", "e": "d", "f": "h", "h": "f"},
        {"a": "h", "h": "a", "c": "f", "f": "c", "b": "g", "g": "b", "d": "e", "e": "d"},
    )
    ts.append(
        _template(
            "FlatStar",
            "abcdefgh",
            _groups("abc", "adg", "bdf", "beh", "ceg", "fgh"),
            flatstar_cov,
            flatstar_sym,
            ("b", "g"),
        )
    )
    ts.append(
        _template(
            "BiTriangle/Line",
            "abcdefghi",
            _groups("ab", "adc", "agf", "bec", "bhf", "die"),
            None,
            (),
            ("a", "b"),
        )
    )
    ts.append(
        _template(
            "BiTriangle/BiLine",
            "abcdefghij",
            _groups("ab", "adc", "agf", "bec", "bhf", "die", "gjh"),
            None,
            (),
            ("a", "b"),
        )
    )
    ts.append(
        _template(
            "BiTriangleX/Line",
            "abcdefgh",
            _groups("ab", "adc", "aef", "bec", "bgf", "dhg"),
            None,
            (),
            ("a", "b"),
        )
    )
    ts.append(
        _template(
            "FlatStar/Line",
            "abcdefgh",
            _groups("abc", "adg", "bdf", "beh", "bg", "ceg", "fgh"),
            flatstar_cov,
            flatstar_sym,
            ("b", "g"),
        )
    )
    ts.append(
        _template(
            "TriTriangleX",
            "abcdefghij",
            _groups("ab", "adc", "aef", "aih", "bec", "bgf", "bjh"),
            (
                Covering("a", "b", _pairs("cd", "ef", "hi")),
                Covering("c", "a", _pairs("be", "fg", "hj")),
                Covering("d", "a", _pairs("bf", "ce", "hj")),
                Covering("e", "a", _pairs("bc", "fg", "hj")),
                Covering("h", "a", _pairs("bj", "ce", "fg")),
                Covering("i", "a", _pairs("bc", "fg", "hj")),
            ),
            (
                {"a": "b", "b": "a", "c": "f", "f": "c", "d": "g", "g": "d",
                 "i": "j", "j": "i"},
            ),
            ("a", "b"),
        )
    )
    return ts


_CATALOG: list[ConfigTemplate] | None = None


def catalog(cycle_sizes: Iterable[int] = ()) -> list[ConfigTemplate]:
    """All named templates; cycle generators instantiated for the given sizes."""
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _fixed_templates()
    out = list(_CATALOG)
    for n in cycle_sizes:
        out.append(cycle_template(n))
        out.append(cycle_line_template(n))
    return out


def template_by_name(name: str) -> ConfigTemplate:
    for t in catalog():
        if t.name.lower() == name.lower():
            return t
    if name.lower().startswith("cyclenline("):
        return cycle_line_template(int(name[len("cyclenline(") : -1]))
    if name.lower().startswith("cyclen("):
        return cycle_template(int(name[len("cyclen(") : -1]))
    raise KeyError(f"unknown configuration {name!r}")


@dataclass
class Embedding:
    template: ConfigTemplate
    binding: dict[Label, Cell]
    bound_groups: dict[AbstractGroup, Group]

    def marker_cells(self) -> frozenset[Cell]:
        return frozenset(self.binding.values())

    def concrete_groups(self) -> list[Group]:
        return [self.bound_groups[g] for g in self.template.groups]

    def to_matching_set(self) -> MatchingSet:
        b = self.binding
        coverings = tuple(
            Covering(
                b[c.black_move],
                b[c.white_response],
                tuple(
                    tuple(sorted((b[u], b[v]), key=cell_key)) for u, v in c.pairs
                ),
                None,
            )
            for c in self.template.matching.coverings
        )
        symmetry = tuple(
            {b[k]: b[v] for k, v in perm.items() if k in b}
            for perm in self.template.matching.symmetry
        )
        return MatchingSet(
            markers=frozenset(b.values()),
            groups=tuple(self.bound_groups[g] for g in self.template.groups),
            coverings=coverings,
            symmetry=symmetry,
        )


def _assignment_order(groups: Sequence[AbstractGroup]) -> list[int]:
    """Order abstract groups so each new one shares as many labels as possible."""
    remaining = set(range(len(groups)))
    order: list[int] = []
    placed: set[Label] = set()
    while remaining:
        best = max(
            remaining,
            key=lambda i: (len(groups[i] & placed), len(groups[i]), -i),
        )
        order.append(best)
        placed |= groups[best]
        remaining.remove(best)
    return order


_CLASH = object()


def _embed_template(
    pos: Position, template: ConfigTemplate, live: Sequence[Group]
) -> list[Embedding]:
    groups = template.groups
    order = _assignment_order(groups)
    results: list[Embedding] = []
    n_live = len(live)

    empty = {c for g in live for c in g.cells if pos.is_empty(c)}
    cell_sets = [g.cell_set for g in live]
    empty_count = [sum(1 for c in g.cells if c in empty) for g in live]
    # Pairwise intersection table: the shared empty cell, None when none or
    # more than one cell is shared, _CLASH when the groups overlap too much.
    meet: list[list[Cell | None | object]] = [[None] * n_live for _ in range(n_live)]
    for a in range(n_live):
        for b in range(a + 1, n_live):
            common = cell_sets[a] & cell_sets[b]
            if len(common) >= 2:
                meet[a][b] = meet[b][a] = _CLASH
            elif len(common) == 1:
                (cell,) = common
                if cell in empty:
                    meet[a][b] = meet[b][a] = cell

    def bind_labels(
        assigned: dict[int, int], binding: dict[Label, Cell]
    ) -> None:
        # Corner labels are forced group intersections; only edge labels branch.
        free_edges: list[tuple[Label, int]] = []
        for label in sorted(template.markers):
            if label in binding:
                continue
            holders = [assigned[i] for i, g in enumerate(groups) if label in g]
            if len(holders) >= 2:
                cells = cell_sets[holders[0]]
                for h in holders[1:]:
                    cells = cells & cell_sets[h]
                if len(cells) != 1:
                    return
                (cell,) = cells
                if cell not in empty or cell in binding.values():
                    return
                binding[label] = cell
            else:
                free_edges.append((label, holders[0]))

        def fill(i: int, b: dict[Label, Cell]) -> None:
            if i == len(free_edges):
                results.append(
                    Embedding(
                        template,
                        dict(b),
                        {groups[j]: live[g] for j, g in assigned.items()},
                    )
                )
                return
            label, host = free_edges[i]
            used = set(b.values())
            for cell in live[host].cells:
                if cell in empty and cell not in used:
                    b[label] = cell
                    fill(i + 1, b)
                    del b[label]

        fill(0, binding)

    def assign(step: int, assigned: dict[int, int], binding: dict[Label, Cell]) -> None:
        if step == len(order):
            bind_labels(assigned, dict(binding))
            return
        i = order[step]
        ag = groups[i]
        taken = assigned.values()
        shared = [(j, groups[j]) for j in assigned if ag & groups[j]]
        for gi in range(n_live):
            if gi in taken:
                continue
            row = meet[gi]
            if any(row[other] is _CLASH for other in taken):
                continue
            if empty_count[gi] < len(ag):
                continue
            new_binding = dict(binding)
            ok = True
            for label in ag:
                if label in new_binding:
                    if new_binding[label] not in cell_sets[gi]:
                        ok = False
                        break
                else:
                    for j, abstract in shared:
                        if label in abstract:
                            cell = row[assigned[j]]
                            if cell is None or cell in new_binding.values():
                                ok = False
                                break
                            new_binding[label] = cell
                    if not ok:
                        break
            if not ok:
                continue
            assigned[i] = gi
            assign(step + 1, assigned, new_binding)
            del assigned[i]

    assign(0, {}, {})
    return _dedupe_by_symmetry(template, results)


def _dedupe_by_symmetry(
    template: ConfigTemplate, found: list[Embedding]
) -> list[Embedding]:
    perms = symmetry_closure(template.markers, template.matching.symmetry)
    labels = sorted(template.markers)
    seen: dict[tuple, Embedding] = {}
    for emb in found:
        key = min(
            tuple(emb.binding[perm[l]] for l in labels) for perm in perms
        )
        if key not in seen:
            seen[key] = emb
    return list(seen.values())


def detect(
    pos: Position, templates: Sequence[ConfigTemplate] | None = None
) -> list[Embedding]:
    """All template embeddings in pos, one representative per symmetry orbit."""
    if templates is None:
        templates = catalog()
    live = live_black_groups(pos)
    out: list[Embedding] = []
    for t in templates:
        if len(t.groups) <= len(live):
            out.extend(_embed_template(pos, t, live))
    return out


@dataclass
class CertEntry:
    template_name: str
    matching: MatchingSet
    binding: dict[Label, Cell] | None = None


@dataclass
class DrawCertificate:
    """A complete machine-checkable draw proof for one position."""

    position: Position
    entries: tuple[CertEntry, ...]
    residual: Pairing


class _Found(Exception):
    def __init__(self, cert: DrawCertificate) -> None:
        self.cert = cert


def _bits(mask: int) -> Iterator[int]:
    while mask:
        bit = mask & -mask
        yield bit
        mask ^= bit


def _bits_idx(mask: int) -> Iterator[int]:
    return (bit.bit_length() - 1 for bit in _bits(mask))


def prove_draw(
    pos: Position,
    templates: Sequence[ConfigTemplate] | None = None,
    max_attempts: int = 5000,
) -> DrawCertificate | None:
    """Cover all live Black groups by independent embeddings plus a residual pairing.

    Sound but deliberately incomplete: None proves nothing.
    """
    if pos.to_move != BLACK:
        return None
    live = live_black_groups(pos)

    def residual_for(
        covered: set[Group], used_markers: set[Cell]
    ) -> Pairing | None:
        left = [g for g in live if g not in covered]
        return find_hj_pairing(pos, left, excluded=frozenset(used_markers))

    residual = residual_for(set(), set())
    if residual is not None:
        return DrawCertificate(pos, (), residual)

    embeddings = detect(pos, templates)
    embeddings.sort(
        key=lambda e: (-e.template.reduction, -e.template.num_groups)
    )
    emb_groups = [frozenset(e.concrete_groups()) for e in embeddings]
    emb_markers = [e.marker_cells() for e in embeddings]
    budget = [max_attempts]

    def emit(chosen: list[Embedding], residual: Pairing) -> None:
        entries = tuple(
            CertEntry(e.template.name, e.to_matching_set(), dict(e.binding))
            for e in chosen
        )
        raise _Found(DrawCertificate(pos, entries, residual))

    # First preference: cover every live group with matching sets alone
    # (empty residual), branching on the least-flexible uncovered group.
    # Among full covers, keep the one pinning down the most cells, so the
    # resulting strategy prescribes a reply to as many moves as possible;
    # ties fall to the lexicographically smallest template-name combination
    # for reproducible output.  Bitmasks keep the enumeration cheap.
    total_empty = len(pos.empties())
    gidx = {g: i for i, g in enumerate(live)}
    m = pos.spec.m
    empty_mask = sum(1 << (r * m + c) for (c, r) in pos.empties())
    all_mask = (1 << len(live)) - 1

    def emb_sort_key(j: int) -> tuple:
        e = embeddings[j]
        return (e.template.name, sorted(e.binding.items()))

    # Interchangeable label assignments collapse to one candidate per
    # (marker cells, bound groups) signature.
    sig_best: dict[tuple[int, int], int] = {}
    for j, e in enumerate(embeddings):
        gmask = sum(1 << gidx[g] for g in emb_groups[j])
        mmask = sum(1 << (r * m + c) for (c, r) in emb_markers[j])
        prev = sig_best.get((gmask, mmask))
        if prev is None or emb_sort_key(j) < emb_sort_key(prev):
            sig_best[(gmask, mmask)] = j
    cands = sorted(sig_best.items(), key=lambda kv: emb_sort_key(kv[1]))
    c_gmask = [gm for (gm, _), _ in cands]
    c_mmask = [mm for (_, mm), _ in cands]
    c_emb = [embeddings[j] for _, j in cands]

    best_cover: list[tuple[tuple, list[Embedding]]] = []

    # Pass 1: embeddings that exactly tile the empty cells while covering
    # every live group.  Such a certificate prescribes a reply to every
    # possible move, so it is preferred.  Candidate template-name multisets
    # are fixed by the marker/group totals, so each is tried in name order
    # with the search restricted to that multiset; the first hit wins.
    by_name: dict[str, list[int]] = {}
    for j, e in enumerate(c_emb):
        by_name.setdefault(e.template.name, []).append(j)
    sizes = {
        name: (c_emb[js[0]].template.num_markers, c_emb[js[0]].template.num_groups)
        for name, js in by_name.items()
    }
    names = sorted(by_name)
    multisets: list[tuple[str, ...]] = []

    def pick(i: int, chosen: list[str], nm: int, ng: int) -> None:
        if nm == total_empty and ng == len(live):
            multisets.append(tuple(chosen))
            return
        if i >= len(names) or nm > total_empty or ng > len(live):
            return
        markers_i, groups_i = sizes[names[i]]
        pick(i + 1, chosen, nm, ng)
        chosen.append(names[i])
        pick(i, chosen, nm + markers_i, ng + groups_i)
        chosen.pop()

    pick(0, [], 0, 0)
    multisets.sort()
    tile_budget = [max(max_attempts, 100_000)]

    def tile(pool: list[int], chosen: list[Embedding], remaining: Counter, covered: int, markers: int) -> bool:
        if tile_budget[0] <= 0:
            return False
        tile_budget[0] -= 1
        if markers == empty_mask:
            return covered == all_mask
        open_bit = (empty_mask & ~markers) & -(empty_mask & ~markers)
        for j in pool:
            if (
                not c_mmask[j] & open_bit
                or not remaining[c_emb[j].template.name]
                or c_gmask[j] & covered
                or c_mmask[j] & markers
            ):
                continue
            chosen.append(c_emb[j])
            remaining[c_emb[j].template.name] -= 1
            if tile(pool, chosen, remaining, covered | c_gmask[j], markers | c_mmask[j]):
                return True
            remaining[c_emb[j].template.name] += 1
            chosen.pop()
            if tile_budget[0] <= 0:
                return False
        return False

    for combo in multisets:
        want = Counter(combo)
        pool = sorted(j for name in want for j in by_name[name])
        chosen: list[Embedding] = []
        if tile(pool, chosen, want, 0, 0):
            try:
                emit(chosen, Pairing(()))
            except _Found as hit:
                return hit.cert
        if tile_budget[0] <= 0:
            break

    # Pass 2: cover every live group with matching sets alone (empty
    # residual), branching on the least-flexible uncovered group; the cover
    # pinning down the most cells wins, name order breaking ties.
    by_group: list[list[int]] = [[] for _ in live]
    for j, gm in enumerate(c_gmask):
        for i in _bits_idx(gm):
            by_group[i].append(j)
    cover_budget = [max_attempts]

    def exact_cover(chosen: list[Embedding], covered: int, markers: int) -> None:
        if cover_budget[0] <= 0:
            return
        cover_budget[0] -= 1
        if covered == all_mask:
            key = (
                total_empty - markers.bit_count(),
                tuple(sorted(e.template.name for e in chosen)),
                tuple(sorted(sorted(e.binding.items()) for e in chosen)),
            )
            if not best_cover or key < best_cover[0][0]:
                best_cover[:] = [(key, list(chosen))]
            return
        i = min(
            (i for i in range(len(live)) if not covered >> i & 1),
            key=lambda i: len(by_group[i]),
        )
        for j in by_group[i]:
            if c_gmask[j] & covered or c_mmask[j] & markers:
                continue
            chosen.append(c_emb[j])
            exact_cover(chosen, covered | c_gmask[j], markers | c_mmask[j])
            chosen.pop()
            if cover_budget[0] <= 0:
                return

    best_cover.clear()
    exact_cover([], 0, 0)
    if best_cover:
        try:
            emit(best_cover[0][1], Pairing(()))
        except _Found as hit:
            return hit.cert

    def search(idx: int, chosen: list[Embedding], covered: set[Group], markers: set[Cell]) -> None:
        if budget[0] <= 0:
            return
        budget[0] -= 1
        if chosen:
            residual = residual_for(covered, markers)
            if residual is not None:
                entries = tuple(
                    CertEntry(e.template.name, e.to_matching_set(), dict(e.binding))
                    for e in chosen
                )
                raise _Found(DrawCertificate(pos, entries, residual))
        for j in range(idx, len(embeddings)):
            if emb_groups[j] & covered or emb_markers[j] & markers:
                continue
            chosen.append(embeddings[j])
            search(j + 1, chosen, covered | emb_groups[j], markers | emb_markers[j])
            chosen.pop()
            if budget[0] <= 0:
                return

    try:
        search(0, [], set(), set())
    except _Found as hit:
        return hit.cert
    return None


def check_certificate(cert: DrawCertificate) -> ProofResult:
    """Re-validate every certificate invariant, independent of how it was found."""
    v: list[tuple[str, str]] = []
    pos = cert.position
    live = set(live_black_groups(pos))
    seen_markers: set[Cell] = set()
    seen_groups: set[Group] = set()
    for i, entry in enumerate(cert.entries):
        loc = f"embedding {i} ({entry.template_name})"
        ms = entry.matching
        if ms.markers & seen_markers:
            v.append((loc, "independence violated: shared marker cells"))
        seen_markers |= ms.markers
        for g in ms.groups:
            if not isinstance(g, Group):
                v.append((loc, f"group {g!r} is not a board group"))
                continue
            if g in seen_groups:
                v.append((loc, f"independence violated: group {g} reused"))
            if g not in live:
                v.append((loc, f"group {g} is not a live Black group"))
            seen_groups.add(g)
        result = verify_matching_set(pos, ms)
        v.extend((f"{loc}/{w}", r) for w, r in result.violations)
    pair_cells = cert.residual.marker_cells()
    if pair_cells & seen_markers:
        v.append(("residual", "pair cells collide with embedding markers"))
    from .pairing import verify_pairing

    for msg in verify_pairing(pos, cert.residual):
        v.append(("residual", msg))
    for g in cert.residual.groups():
        if g in seen_groups:
            v.append(("residual", f"group {g} covered twice"))
        if g not in live:
            v.append(("residual", f"group {g} is not a live Black group"))
        seen_groups.add(g)
    for g in sorted(live, key=lambda g: g.cells):
        if g not in seen_groups:
            v.append(("coverage", f"live group {g} is not covered"))
    return ProofResult(tuple(v))


def validate_catalog() -> dict[str, ProofResult]:
    """Abstract verification of every bundled template's matching set."""
    return {t.name: verify_abstract(t.matching) for t in catalog()}
