"""Canonical labeling by partition refinement with individualization.

The search explores every leaf of the individualization-refinement tree
except those pruned by automorphisms already discovered, and keeps the
lexicographically largest relabeled adjacency.  Refinement is equitable
and depends only on the ordered partition, so the result is invariant
under relabeling.
"""

from __future__ import annotations

from .graph import Graph, GraphError, popcount

CANON_MAX_VERTICES = 40


def _refine(adj: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    cells = [list(c) for c in cells]
    changed = True
    while changed:
        changed = False
        s = 0
        while s < len(cells):
            smask = 0
            for v in cells[s]:
                smask |= 1 << v
            out: list[list[int]] = []
            split_here = False
            for cell in cells:
                if len(cell) == 1:
                    out.append(cell)
                    continue
                groups: dict[int, list[int]] = {}
                for v in cell:
                    groups.setdefault(popcount(adj[v] & smask), []).append(v)
                if len(groups) == 1:
                    out.append(cell)
                    continue
                split_here = True
                for key in sorted(groups):
                    out.append(groups[key])
            if split_here:
                cells = out
                changed = True
            s += 1
    return cells


def _certificate(adj: tuple[int, ...], order: list[int]) -> tuple[int, ...]:
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    rows = []
    for v in order:
        row = 0
        r = adj[v]
        while r:
            low = r & -r
            row |= 1 << pos[low.bit_length() - 1]
            r ^= low
        rows.append(row)
    return tuple(rows)


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def canonical_order(g: Graph) -> list[int]:
    """Vertex order (position -> old label) of the canonical relabeling."""
    if g.n > CANON_MAX_VERTICES:
        raise GraphError(f"canonical form is limited to {CANON_MAX_VERTICES} vertices")
    if g.n == 0:
        return []
    adj = g.adj
    best_cert: tuple[int, ...] | None = None
    best_order: list[int] = []
    automorphisms: list[list[int]] = []

    def search(cells: list[list[int]], prefix: list[int]) -> None:
        nonlocal best_cert, best_order
        cells = _refine(adj, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            cert = _certificate(adj, order)
            if best_cert is None or cert > best_cert:
                best_cert, best_order = cert, order
            elif cert == best_cert:
                perm = [0] * g.n
                for a, b in zip(order, best_order):
                    perm[a] = b
                automorphisms.append(perm)
            return
        explored: list[int] = []
        for v in sorted(cells[target]):
            if explored and _equivalent(v, explored, prefix):
                continue
            explored.append(v)
            rest = [w for w in cells[target] if w != v]
            child = cells[:target] + [[v], rest] + cells[target + 1:]
            search(child, prefix + [v])

    def _equivalent(v: int, explored: list[int], prefix: list[int]) -> bool:
        usable = [p for p in automorphisms if all(p[x] == x for x in prefix)]
        if not usable:
            return False
        uf = _UnionFind(g.n)
        for p in usable:
            for a, b in enumerate(p):
                uf.union(a, b)
        root = uf.find(v)
        return any(uf.find(e) == root for e in explored)

    degree_cells: dict[int, list[int]] = {}
    for v in range(g.n):
        degree_cells.setdefault(popcount(adj[v]), []).append(v)
    search([degree_cells[d] for d in sorted(degree_cells)], [])
    return best_order


def canonical_graph(g: Graph) -> Graph:
    order = canonical_order(g)
    perm = [0] * g.n
    for i, v in enumerate(order):
        perm[v] = i
    return g.relabel(perm)


def canonical_form(g: Graph) -> bytes:
    """graph6 bytes of the canonical relabeling; equal iff isomorphic."""
    from .formats import to_graph6

    return to_graph6(canonical_graph(g))


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g) == canonical_form(h)
