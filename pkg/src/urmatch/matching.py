"""Maximum matchings, the Gallai-Edmonds decomposition and factor-criticality."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .graph import Edge, Graph, GraphError, bits, components, is_connected, members, norm_edge


class MatchingError(GraphError):
    pass


@dataclass(frozen=True)
class Matching:
    host: Graph
    edges: frozenset[Edge]
    covered: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        covered = 0
        norm = set()
        for u, v in self.edges:
            if not (0 <= u < self.host.n and 0 <= v < self.host.n) or not self.host.has_edge(u, v):
                raise MatchingError(f"({u}, {v}) is not an edge of the host graph")
            if covered >> u & 1 or covered >> v & 1:
                raise MatchingError(f"edge ({u}, {v}) shares a vertex with another matching edge")
            covered |= 1 << u | 1 << v
            norm.add(norm_edge(u, v))
        object.__setattr__(self, "edges", frozenset(norm))
        object.__setattr__(self, "covered", covered)

    @classmethod
    def of(cls, host: Graph, edges: Iterable[Edge]) -> "Matching":
        return cls(host, frozenset(norm_edge(u, v) for u, v in edges))

    def __len__(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def mate(self) -> list[int]:
        out = [-1] * self.host.n
        for u, v in self.edges:
            out[u], out[v] = v, u
        return out


# core algorithms on raw adjacency, restricted to an `alive` vertex mask


def _greedy(adj: tuple[int, ...], alive: int, mate: list[int]) -> None:
    for v in members(alive):
        if mate[v] == -1:
            for w in members(adj[v] & alive):
                if mate[w] == -1:
                    mate[v], mate[w] = w, v
                    break


def _forest_matching(adj: tuple[int, ...], alive: int) -> list[int]:
    """Exact matching of a forest: repeatedly match a leaf to its neighbor."""
    n = len(adj)
    mate = [-1] * n
    deg = [bin(adj[v] & alive).count("1") if alive >> v & 1 else 0 for v in range(n)]
    live = alive
    stack = [v for v in members(alive) if deg[v] <= 1]
    while stack:
        v = stack.pop()
        if not live >> v & 1:
            continue
        live &= ~(1 << v)
        nb = adj[v] & live
        if nb:
            w = (nb & -nb).bit_length() - 1
            mate[v], mate[w] = w, v
            live &= ~(1 << w)
            for x in members(adj[w] & live):
                deg[x] -= 1
                if deg[x] <= 1:
                    stack.append(x)
    # any cycle left would mean the input was not a forest
    if live:
        raise MatchingError("forest matching applied to a graph with a cycle")
    return mate


def _blossom(adj: tuple[int, ...], alive: int, mate: list[int] | None = None) -> list[int]:
    """Edmonds' cardinality blossom algorithm (BFS with base contraction)."""
    n = len(adj)
    if mate is None:
        mate = [-1] * n
        _greedy(adj, alive, mate)
    verts = members(alive)

    def lca(a: int, b: int, base: list[int], parent: list[int]) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark_path(v: int, b: int, child: int, base: list[int], parent: list[int], blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    def find_path(root: int) -> int:
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for to in members(adj[v] & alive):
                if base[v] == base[to] or mate[v] == to:
                    continue
                if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                    cur = lca(v, to, base, parent)
                    blossom = [False] * n
                    mark_path(v, cur, to, base, parent, blossom)
                    mark_path(to, cur, v, base, parent, blossom)
                    for i in verts:
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if mate[to] == -1:
                        return _augment(to, parent)
                    used[mate[to]] = True
                    queue.append(mate[to])
        return -1

    def _augment(v: int, parent: list[int]) -> int:
        while v != -1:
            pv = parent[v]
            ppv = mate[pv]
            mate[v], mate[pv] = pv, v
            v = ppv
        return 1

    for v in verts:
        if mate[v] == -1:
            find_path(v)
    return mate


def _is_forest(adj: tuple[int, ...], alive: int) -> bool:
    nv = bin(alive).count("1")
    m2 = sum(bin(adj[v] & alive).count("1") for v in members(alive))
    if m2 // 2 > nv - 1:
        return False
    # component count via union of frontier sweeps
    comps = 0
    left = alive
    while left:
        comp = frontier = left & -left
        while frontier:
            nxt = 0
            for v in members(frontier):
                nxt |= adj[v]
            nxt &= left & ~comp
            comp |= nxt
            frontier = nxt
        left &= ~comp
        comps += 1
    return m2 // 2 == nv - comps


def mate_array(adj: tuple[int, ...], alive: int) -> list[int]:
    if _is_forest(adj, alive):
        return _forest_matching(adj, alive)
    return _blossom(adj, alive)


def matching_number_masked(adj: tuple[int, ...], alive: int) -> int:
    mate = mate_array(adj, alive)
    return sum(1 for v in members(alive) if mate[v] != -1) // 2


def _from_mate(g: Graph, mate: list[int]) -> Matching:
    return Matching(g, frozenset(norm_edge(v, mate[v]) for v in range(g.n) if mate[v] > v))


# public operations


def maximum_matching(g: Graph) -> Matching:
    return _from_mate(g, mate_array(g.adj, g.vertex_mask))


def matching_number(g: Graph) -> int:
    return matching_number_masked(g.adj, g.vertex_mask)


def iter_matchings(g: Graph, alive: int | None = None) -> Iterator[list[Edge]]:
    """Every matching (including the empty one), by exhaustive branching."""
    adj = g.adj
    start = g.vertex_mask if alive is None else alive
    chosen: list[Edge] = []

    def rec(left: int) -> Iterator[list[Edge]]:
        if not left:
            yield list(chosen)
            return
        v = (left & -left).bit_length() - 1
        rest = left & ~(1 << v)
        yield from rec(rest)
        for w in members(adj[v] & rest):
            chosen.append((v, w))
            yield from rec(rest & ~(1 << w))
            chosen.pop()

    yield from rec(start)


def matching_number_bruteforce(g: Graph) -> int:
    return max(len(m) for m in iter_matchings(g))


@dataclass(frozen=True)
class GEDecomposition:
    d: int
    a: int
    c: int
    nu: int
    d_components: tuple[int, ...]

    def d_set(self) -> list[int]:
        return members(self.d)

    def a_set(self) -> list[int]:
        return members(self.a)

    def c_set(self) -> list[int]:
        return members(self.c)

    def to_dict(self) -> dict:
        return {
            "D": self.d_set(),
            "A": self.a_set(),
            "C": self.c_set(),
            "nu": self.nu,
            "D_components": [members(c) for c in self.d_components],
        }


def gallai_edmonds(g: Graph) -> GEDecomposition:
    """D = vertices missed by some maximum matching; A = N(D) minus D; C = rest."""
    full = g.vertex_mask
    nu = matching_number_masked(g.adj, full)
    d = 0
    for v in range(g.n):
        if matching_number_masked(g.adj, full & ~(1 << v)) == nu:
            d |= 1 << v
    nd = 0
    for v in members(d):
        nd |= g.adj[v]
    a = nd & ~d
    c = full & ~(a | d)
    return GEDecomposition(d, a, c, nu, tuple(components(g, d)))


def is_factor_critical(g: Graph) -> bool:
    if not is_connected(g):
        raise GraphError("factor-criticality is defined here for connected graphs")
    if g.n % 2 == 0:
        return False
    full = g.vertex_mask
    half = (g.n - 1) // 2
    return all(matching_number_masked(g.adj, full & ~(1 << v)) == half for v in range(g.n))


def matching_avoiding(g: Graph, x: Iterable[int] | int) -> Matching | None:
    """A maximum matching of ``g`` that leaves every vertex of ``x`` uncovered, if any."""
    xm = x if isinstance(x, int) else bits(x)
    nu = matching_number_masked(g.adj, g.vertex_mask)
    mate = mate_array(g.adj, g.vertex_mask & ~xm)
    found = _from_mate(g, mate)
    return found if len(found) == nu else None
