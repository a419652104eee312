"""Structural relations between groups: intersections, overlap, node classes."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .board import Cell, Group


class OverlapError(ValueError):
    """Raised when an operation requires pairwise non-overlapping groups."""


def intersection(g1: Group, g2: Group) -> frozenset[Cell]:
    return g1.cell_set & g2.cell_set


def is_overlapping(g1: Group, g2: Group) -> bool:
    """Two groups sharing at least two cells (includes a group with itself)."""
    return len(intersection(g1, g2)) >= 2


@dataclass(frozen=True)
class NodeClass:
    """Partition of a group set's cells into corner nodes and edge nodes."""

    corners: frozenset
    edges: frozenset


def membership_counts(groups: Iterable[Iterable[Hashable]]) -> Counter:
    """How many groups each node appears in."""
    counts: Counter = Counter()
    for g in groups:
        for node in g:
            counts[node] += 1
    return counts


def classify_nodes(groups: Sequence) -> NodeClass:
    """Label each cell of the union a corner (in >= 2 groups) or an edge (in 1).

    Accepts concrete Groups or any collections of hashable nodes.  Rejects
    overlapping pairs: corner/edge vocabulary is only defined for sets of
    intersecting but non-overlapping groups.
    """
    sets = [frozenset(g) for g in groups]
    for i, a in enumerate(sets):
        for b in sets[i + 1 :]:
            if len(a & b) >= 2:
                raise OverlapError(f"groups overlap in {sorted(a & b)}")
    counts = membership_counts(sets)
    corners = frozenset(n for n, c in counts.items() if c >= 2)
    edges = frozenset(n for n, c in counts.items() if c == 1)
    return NodeClass(corners=corners, edges=edges)
