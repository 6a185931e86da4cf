"""Generation of connected subcubic graphs of girth at least 5.

Graphs on n vertices are grown from the graphs on n - 1 vertices by adding
one vertex joined to 1..3 vertices of degree at most 2 that are pairwise at
distance at least 3 (so no cycle shorter than 5 appears).  Every connected
graph has a vertex whose deletion keeps it connected, so this reaches every
isomorphism class; duplicates are rejected by canonical form.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations
from typing import Iterator

from .canon import canonical_form, canonical_graph
from .formats import from_graph6
from .graph import Graph, GraphError, distances_from, girth, is_connected

ENUMERATION_CAP = 12
DEFAULT_CAP = 11


@lru_cache(maxsize=None)
def _level(n: int) -> tuple[bytes, ...]:
    if n == 1:
        return (canonical_form(Graph.empty(1)),)
    seen: set[bytes] = set()
    out: list[bytes] = []
    for form in _level(n - 1):
        parent = from_graph6(form)
        free = [v for v in range(parent.n) if parent.degree(v) < 3]
        far = {v: distances_from(parent, v) for v in free}
        for k in (1, 2, 3):
            for combo in combinations(free, k):
                if any(0 <= far[a][b] < 3 for a, b in combinations(combo, 2)):
                    continue
                child = Graph.from_edges(n, parent.edges() + [(v, n - 1) for v in combo])
                key = canonical_form(child)
                if key not in seen:
                    seen.add(key)
                    out.append(key)
    out.sort()
    return tuple(out)


def enumerate_subcubic_girth5(n: int, cap: int = ENUMERATION_CAP) -> Iterator[Graph]:
    """Connected subcubic graphs on ``n`` vertices with girth >= 5, one per class.

    Graphs are yielded in canonical labeling, sorted by canonical graph6.
    """
    if n > cap:
        raise GraphError(f"exhaustive enumeration is capped at n = {cap}")
    if n < 1:
        return
    for form in _level(n):
        yield from_graph6(form)


def count_by_filter(n: int) -> int:
    """Oracle count: filter all edge subsets of K_n, dedupe by canonical form."""
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    forms = set()
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        if len(edges) > 3 * n // 2:
            continue
        g = Graph.from_edges(n, edges)
        if not g.is_subcubic() or not is_connected(g):
            continue
        gg = girth(g)
        if gg is not None and gg < 5:
            continue
        forms.add(canonical_form(g))
    return len(forms)


def random_subcubic_girth5(n: int, seed: int, max_tries: int = 1000) -> Graph:
    """Seeded random connected subcubic graph of girth >= 5 on ``n`` vertices.

    A random spanning tree of maximum degree 3 is grown first, then random
    extra edges are added while they keep degree and girth constraints.
    """
    if n < 1:
        raise GraphError("n must be positive")
    rng = random.Random(seed)
    for _ in range(max_tries):
        rows = [0] * n
        deg = [0] * n
        order = list(range(n))
        rng.shuffle(order)
        placed = [order[0]]
        ok = True
        for v in order[1:]:
            hosts = [u for u in placed if deg[u] < 3]
            if not hosts:
                ok = False
                break
            u = rng.choice(hosts)
            rows[u] |= 1 << v
            rows[v] |= 1 << u
            deg[u] += 1
            deg[v] += 1
            placed.append(v)
        if not ok:
            continue
        g = Graph(n, tuple(rows))
        extra = rng.randint(0, n)
        candidates = [(u, v) for u in range(n) for v in range(u + 1, n)]
        rng.shuffle(candidates)
        for u, v in candidates:
            if extra == 0:
                break
            if deg[u] >= 3 or deg[v] >= 3 or g.has_edge(u, v):
                continue
            if 0 <= distances_from(g, u)[v] < 4:
                continue
            g = g.add_edges([(u, v)])
            deg[u] += 1
            deg[v] += 1
            extra -= 1
        gg = girth(g)
        if g.is_subcubic() and is_connected(g) and (gg is None or gg >= 5):
            return g
    raise GraphError(f"failed to sample a graph after {max_tries} attempts")


__all__ = [
    "DEFAULT_CAP",
    "ENUMERATION_CAP",
    "canonical_graph",
    "count_by_filter",
    "enumerate_subcubic_girth5",
    "random_subcubic_girth5",
]
