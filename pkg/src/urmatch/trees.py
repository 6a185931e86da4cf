"""Free-tree enumeration by canonical level sequences.

Each free tree is produced once, rooted at its center (or at the higher
end of its bicenter), as the lexicographically largest preorder level
sequence subject to the constraints of Wright, Richmond, Odlyzko and McKay
that make the root a center.
"""

from __future__ import annotations

from typing import Iterator

from .graph import Graph


def _next_rooted(levels: list[int], p: int | None = None) -> list[int] | None:
    """Successor of a canonical rooted level sequence (Beyer-Hedetniemi step)."""
    if p is None:
        p = len(levels) - 1
        while levels[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while levels[q] != levels[p] - 1:
        q -= 1
    out = list(levels)
    for i in range(p, len(out)):
        out[i] = out[i - p + q]
    return out


def _split(levels: list[int]) -> tuple[list[int], list[int]]:
    """Split off the first subtree of the root; both parts re-rooted."""
    cut = len(levels)
    for i in range(2, len(levels)):
        if levels[i] == 1:
            cut = i
            break
    first = [x - 1 for x in levels[1:cut]]
    rest = [0] + levels[cut:]
    return first, rest


def _center_rooted(levels: list[int]) -> list[int] | None:
    """Return ``levels`` if it is centered, else the next candidate."""
    first, rest = _split(levels)
    h1, h2 = max(first), max(rest)
    ok = h2 >= h1
    if ok and h1 == h2:
        if len(first) > len(rest) or (len(first) == len(rest) and first > rest):
            ok = False
    if ok:
        return levels
    p = len(first)
    nxt = _next_rooted(levels, p)
    if nxt is not None and levels[p] > 2:
        first2, _ = _split(nxt)
        tail = list(range(1, max(first2) + 2))
        nxt[len(nxt) - len(tail):] = tail
    return nxt


def free_tree_levels(n: int) -> Iterator[list[int]]:
    """Level sequences of all free trees on ``n`` vertices up to isomorphism."""
    if n <= 0:
        return
    if n <= 2:
        yield list(range(n))
        return
    levels: list[int] | None = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while levels is not None:
        levels = _center_rooted(levels)
        if levels is None:
            break
        yield levels
        levels = _next_rooted(levels)


def levels_to_parents(levels: list[int]) -> list[int]:
    parents = [-1] * len(levels)
    last_at = {}
    for i, d in enumerate(levels):
        if d > 0:
            parents[i] = last_at[d - 1]
        last_at[d] = i
    return parents


def levels_to_graph(levels: list[int]) -> Graph:
    parents = levels_to_parents(levels)
    return Graph.from_edges(len(levels), [(p, i) for i, p in enumerate(parents) if p >= 0])


def free_trees(n: int) -> Iterator[Graph]:
    for levels in free_tree_levels(n):
        yield levels_to_graph(levels)
