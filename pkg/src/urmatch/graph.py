"""Immutable simple graphs over dense integer labels, with bit-set adjacency.

Vertex sets are plain Python ints used as bit-sets (bit ``v`` set when
vertex ``v`` is a member).  Edge sets are frozensets of ``(u, v)`` pairs
with ``u < v``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 64

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised for malformed graphs or violated preconditions."""


def bits(vertices: Iterable[int]) -> int:
    """Pack an iterable of vertex labels into a bit-set."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members(mask: int) -> list[int]:
    """Ascending vertex labels of a bit-set."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]
    m: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError("negative vertex count")
        if self.n > MAX_VERTICES:
            raise GraphError(f"graph has {self.n} vertices; the cap is {MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match n")
        full = (1 << self.n) - 1
        total = 0
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"vertex {v} has a neighbor label >= n")
            if row >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for w in members(row):
                if not self.adj[w] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {w}")
            total += popcount(row)
        object.__setattr__(self, "m", total // 2)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        rows = [0] * n
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    # basic queries

    def edges(self) -> list[Edge]:
        out = []
        for u in range(self.n):
            for v in members(self.adj[u] >> (u + 1) << (u + 1)):
                out.append((u, v))
        return out

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return members(self.adj[v])

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def degrees(self) -> list[int]:
        return [popcount(r) for r in self.adj]

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def is_subcubic(self) -> bool:
        return self.max_degree() <= 3

    def is_cubic(self) -> bool:
        return self.n > 0 and all(d == 3 for d in self.degrees())

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.n))

    # derived graphs

    def isolate(self, x: int) -> "Graph":
        """Same labels, every edge touching the bit-set ``x`` removed."""
        keep = ~x
        rows = tuple(0 if x >> v & 1 else row & keep for v, row in enumerate(self.adj))
        return Graph(self.n, rows)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabeled 0..k-1; returns it with the old labels."""
        old = sorted(set(vertices))
        index = {v: i for i, v in enumerate(old)}
        edges = [(index[u], index[v]) for u, v in self.edges() if u in index and v in index]
        return Graph.from_edges(len(old), edges), old

    def delete(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        gone = set(vertices)
        return self.induced(v for v in range(self.n) if v not in gone)

    def remove_edges(self, edges: Iterable[Edge]) -> "Graph":
        rows = list(self.adj)
        for u, v in edges:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return Graph(self.n, tuple(rows))

    def add_edges(self, edges: Iterable[Edge]) -> "Graph":
        return Graph.from_edges(self.n, list(self.edges()) + [tuple(e) for e in edges])

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def disjoint_union(self, other: "Graph") -> "Graph":
        off = self.n
        edges = self.edges() + [(u + off, v + off) for u, v in other.edges()]
        return Graph.from_edges(self.n + other.n, edges)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# structural queries


def components(g: Graph, within: int | None = None) -> list[int]:
    """Connected components as bit-sets, ordered by smallest member."""
    left = g.vertex_mask if within is None else within
    out = []
    while left:
        low = left & -left
        comp = low
        frontier = low
        while frontier:
            nxt = 0
            for v in members(frontier):
                nxt |= g.adj[v]
            nxt &= left & ~comp
            comp |= nxt
            frontier = nxt
        out.append(comp)
        left &= ~comp
    return out


def is_connected(g: Graph, within: int | None = None) -> bool:
    within = g.vertex_mask if within is None else within
    return within == 0 or len(components(g, within)) == 1


def is_forest(g: Graph) -> bool:
    return g.m == g.n - len(components(g))


def is_tree(g: Graph) -> bool:
    return g.n > 0 and g.m == g.n - 1 and is_connected(g)


def girth(g: Graph) -> int | None:
    """Length of a shortest cycle, or None for a forest."""
    best = None
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] >= best:
                break
            for w in members(g.adj[u]):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
    return best


def degree_profile(g: Graph) -> tuple[int, int, list[int]]:
    """(min degree, max degree, ascending degree-2 vertices)."""
    degs = g.degrees()
    if not degs:
        return (0, 0, [])
    return (min(degs), max(degs), [v for v, d in enumerate(degs) if d == 2])


def blocks_and_bridges(g: Graph) -> tuple[list[int], frozenset[Edge]]:
    """Biconnected components (as vertex bit-sets) and the bridge edges.

    Isolated vertices form no block.  Blocks are listed in discovery order of
    an iterative Hopcroft-Tarjan search started from each unvisited vertex in
    ascending order.
    """
    disc = [-1] * g.n
    low = [0] * g.n
    blocks: list[int] = []
    bridges = set()
    clock = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = clock
        clock += 1
        edge_stack: list[Edge] = []
        stack = [(root, -1, iter(members(g.adj[root])))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = clock
                    clock += 1
                    edge_stack.append((u, w))
                    stack.append((w, u, iter(members(g.adj[w]))))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[u]:
                    edge_stack.append((u, w))
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[u])
            if low[u] >= disc[parent]:
                block = 0
                count = 0
                while True:
                    a, b = edge_stack.pop()
                    block |= 1 << a | 1 << b
                    count += 1
                    if (a, b) == (parent, u):
                        break
                blocks.append(block)
                if count == 1:
                    bridges.add(norm_edge(parent, u))
    return blocks, frozenset(bridges)


def contract(g: Graph, parts: Sequence[Iterable[int]]) -> tuple[Graph, list[int]]:
    """Quotient graph of a vertex partition; loops dropped, parallels merged.

    Part ``i`` becomes vertex ``i``.  Returns the quotient and the map from
    old labels to new labels.
    """
    mapping = [-1] * g.n
    masks = []
    for i, part in enumerate(parts):
        mask = bits(part)
        if mask == 0:
            raise GraphError(f"part {i} is empty")
        for v in members(mask):
            if v >= g.n:
                raise GraphError(f"part {i} names vertex {v} outside the graph")
            if mapping[v] != -1:
                raise GraphError(f"vertex {v} appears in two parts")
            mapping[v] = i
        if not is_connected(g, mask):
            raise GraphError(f"part {i} does not induce a connected subgraph")
        masks.append(mask)
    missing = [v for v in range(g.n) if mapping[v] == -1]
    if missing:
        raise GraphError(f"vertices {missing} are not covered by the partition")
    edges = {norm_edge(mapping[u], mapping[v]) for u, v in g.edges() if mapping[u] != mapping[v]}
    return Graph.from_edges(len(masks), sorted(edges)), mapping


def boundary(g: Graph, x: int) -> frozenset[Edge]:
    """Edges with exactly one endpoint in the bit-set ``x``."""
    out = set()
    for u in members(x):
        for w in members(g.adj[u] & ~x):
            out.add(norm_edge(u, w))
    return frozenset(out)


def edges_inside(g: Graph, x: int) -> int:
    return sum(popcount(g.adj[v] & x) for v in members(x)) // 2


def distances_from(g: Graph, source: int) -> list[int]:
    """BFS distances; -1 marks unreachable vertices."""
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in members(g.adj[u]):
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


# small named graphs used throughout the tests and the CLI


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)
