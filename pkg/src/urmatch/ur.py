"""Uniquely restricted matchings: verification, alternating paths, exact search.

A matching M is uniquely restricted when no other matching covers exactly
the vertices of M, equivalently when no cycle alternates between edges of
M and edges outside M.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .graph import Edge, Graph, GraphError, bits, members, norm_edge
from .matching import Matching, MatchingError, iter_matchings, matching_number_masked

BRUTEFORCE_MAX_VERTICES = 20
BUDGET_ENV = "URMATCH_BUDGET"


class BudgetExhausted(RuntimeError):
    """The search hit its node budget; ``partial`` holds the best lower bound found."""

    def __init__(self, partial: "URSolveResult") -> None:
        super().__init__(
            f"search budget of {partial.nodes_explored} nodes exhausted; lower bound {partial.value}"
        )
        self.partial = partial


@dataclass(frozen=True)
class URSolveResult:
    best: Matching
    value: int
    nodes_explored: int
    proof_mode: str  # "exact", "oracle" or "lower_bound"

    @property
    def exact(self) -> bool:
        return self.proof_mode != "lower_bound"


def default_budget() -> int | None:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else None


# alternating structures on a raw mate array


def _alt_path(
    adj: Sequence[int], mate: Sequence[int], alive: int, u: int, v: int, blocked: int = 0
) -> list[int] | None:
    """Simple path u .. v alternating non-matching / matching edges, both ends
    on non-matching edges, with at least one matching edge.  ``u`` and ``v``
    are treated as uncovered; vertices in ``blocked`` are never entered."""
    path = [u]
    used = blocked | 1 << u | 1 << v

    def dfs(x: int) -> bool:
        nonlocal used
        nb = adj[x] & alive
        if x != u and nb >> v & 1:
            path.append(v)
            return True
        nb &= ~used
        while nb:
            low = nb & -nb
            nb ^= low
            c = low.bit_length() - 1
            d = mate[c]
            if d < 0 or used >> d & 1:
                continue
            used |= low | 1 << d
            path.extend((c, d))
            if dfs(d):
                return True
            path.pop()
            path.pop()
            used &= ~(low | 1 << d)
        return False

    return path if dfs(u) else None


def _alt_cycle(adj: Sequence[int], mate: list[int], alive: int) -> list[int] | None:
    """An M-alternating cycle as a closed vertex sequence (first = last), or None."""
    matched = [(v, mate[v]) for v in range(len(mate)) if mate[v] > v]
    blocked = 0
    for s, t in matched:
        mate[s] = mate[t] = -1
        found = _alt_path(adj, mate, alive, t, s, blocked)
        mate[s], mate[t] = t, s
        if found is not None:
            return [s] + found
        blocked |= 1 << s | 1 << t
    return None


def _mate_of(m: Matching) -> list[int]:
    return m.mate()


# public verification API


def alternating_cycle(g: Graph, m: Matching) -> list[int] | None:
    """A witness M-alternating cycle ``[v0, v1, ..., v0]`` or None."""
    if m.host is not g and m.host != g:
        raise MatchingError("matching belongs to a different graph")
    return _alt_cycle(g.adj, _mate_of(m), g.vertex_mask)


def is_uniquely_restricted(g: Graph, m: Matching) -> bool:
    return alternating_cycle(g, m) is None


def is_uniquely_restricted_bruteforce(g: Graph, m: Matching) -> bool:
    """Definitional check: no other matching covers exactly V(M)."""
    count = 0
    for other in iter_matchings(g, m.covered):
        if 2 * len(other) == bin(m.covered).count("1"):
            count += 1
            if count > 1:
                return False
    return True


def is_valid_alternating_cycle(g: Graph, m: Matching, cycle: Sequence[int]) -> bool:
    """Independent re-check of a cycle certificate."""
    if len(cycle) < 5 or cycle[0] != cycle[-1]:
        return False
    inner = list(cycle[:-1])
    if len(set(inner)) != len(inner) or len(inner) % 2:
        return False
    flags = []
    for a, b in zip(cycle, cycle[1:]):
        if not g.has_edge(a, b):
            return False
        flags.append(norm_edge(a, b) in m.edges)
    return all(flags[i] != flags[(i + 1) % len(flags)] for i in range(len(flags)))


def alternating_path(g: Graph, m: Matching, u: int, v: int) -> list[int] | None:
    if u == v:
        raise GraphError("alternating path endpoints must differ")
    if m.covered >> u & 1 or m.covered >> v & 1:
        raise MatchingError("alternating path endpoints must be uncovered")
    return _alt_path(g.adj, _mate_of(m), g.vertex_mask, u, v)


def has_alternating_path(g: Graph, m: Matching, u: int, v: int) -> bool:
    """True iff a simple u-v path alternates non-M, M, ..., M, non-M.

    The path must contain at least one edge of M; a lone edge uv does not count.
    """
    return alternating_path(g, m, u, v) is not None


# branch and bound


class _Stop(Exception):
    pass


class _OutOfBudget(Exception):
    pass


def _search(
    g: Graph,
    alive: int,
    order: list[Edge],
    target: int | None,
    budget: int | None,
    extra: Callable[[list[int], int], bool] | None = None,
    forced: Sequence[Edge] = (),
) -> tuple[list[Edge], int, bool]:
    """Depth-first include/exclude search over ``order``.

    Returns (best edge list, nodes explored, completed).  With a target the
    search stops at the first matching of that size and prunes branches
    that cannot reach it; otherwise it maximizes.  Include-first in a fixed
    edge order visits matchings in lexicographic order of ``order``.
    """
    n = g.n
    adj = g.adj
    mate = [-1] * n
    cur: list[Edge] = []
    for a, b in forced:
        mate[a], mate[b] = b, a
        cur.append((a, b))
    best = list(cur)
    nodes = 0
    m = len(order)

    def bound(i: int) -> int:
        free = 0
        rows = [0] * n
        for a, b in order[i:]:
            if mate[a] < 0 and mate[b] < 0:
                rows[a] |= 1 << b
                rows[b] |= 1 << a
                free |= 1 << a | 1 << b
        if not free:
            return 0
        cheap = bin(free).count("1") // 2
        limit = (len(best) if target is None else target - 1) - len(cur)
        if cheap <= limit:
            return cheap
        return matching_number_masked(tuple(rows), free)

    def rec(i: int) -> None:
        nonlocal nodes, best
        nodes += 1
        if budget is not None and nodes > budget:
            raise _OutOfBudget
        if len(cur) > len(best):
            best = list(cur)
            if target is not None and len(best) >= target:
                raise _Stop
        while i < m and (mate[order[i][0]] >= 0 or mate[order[i][1]] >= 0):
            i += 1
        if i == m:
            return
        goal = len(best) if target is None else target - 1
        if len(cur) + bound(i) <= goal:
            return
        a, b = order[i]
        if _alt_path(adj, mate, alive, a, b) is None:
            mate[a], mate[b] = b, a
            if extra is None or extra(mate, alive):
                cur.append((a, b))
                rec(i + 1)
                cur.pop()
            mate[a] = mate[b] = -1
        rec(i + 1)

    if target is not None and len(cur) >= target:
        return best, 0, True
    try:
        rec(0)
    except _Stop:
        pass
    except _OutOfBudget:
        return best, nodes, False
    return best, nodes, True


def _edges_within(g: Graph, alive: int) -> list[Edge]:
    return [(u, v) for u, v in g.edges() if alive >> u & 1 and alive >> v & 1]


def _degree_order(g: Graph, edges: list[Edge]) -> list[Edge]:
    deg = g.degrees()
    return sorted(edges, key=lambda e: (-(deg[e[0]] + deg[e[1]]), e))


def _solve(
    g: Graph,
    alive: int,
    budget: int | None,
    extra: Callable[[list[int], int], bool] | None = None,
) -> URSolveResult:
    edges = _edges_within(g, alive)
    best, nodes, done = _search(g, alive, _degree_order(g, edges), None, budget, extra)
    if not done:
        partial = URSolveResult(Matching.of(g, best), len(best), nodes, "lower_bound")
        raise BudgetExhausted(partial)
    value = len(best)
    # second pass: lexicographically smallest optimal witness
    remaining = None if budget is None else max(budget - nodes, 1)
    witness, nodes2, done = _search(g, alive, sorted(edges), value, remaining, extra)
    if not done or len(witness) != value:
        partial = URSolveResult(Matching.of(g, best), value, nodes + nodes2, "lower_bound")
        raise BudgetExhausted(partial)
    return URSolveResult(Matching.of(g, witness), value, nodes + nodes2, "exact")


def nu_ur_exact(g: Graph, budget: int | None = None) -> URSolveResult:
    """Maximum uniquely restricted matching by branch and bound.

    ``budget`` caps the number of search nodes; exhausting it raises
    :class:`BudgetExhausted` carrying the best matching found so far.
    """
    return _solve(g, g.vertex_mask, budget if budget is not None else default_budget())


def nu_ur(g: Graph) -> int:
    return nu_ur_exact(g).value


def nu_ur_bruteforce(g: Graph) -> URSolveResult:
    """Enumerate every matching and keep those whose covered set is unique."""
    if g.n > BRUTEFORCE_MAX_VERTICES:
        raise GraphError(f"brute force is capped at {BRUTEFORCE_MAX_VERTICES} vertices")
    per_cover: Counter[int] = Counter()
    witness: dict[int, list[Edge]] = {}
    count = 0
    for m in iter_matchings(g):
        count += 1
        cover = bits(v for e in m for v in e)
        per_cover[cover] += 1
        witness[cover] = m
    unique = [sorted(witness[c]) for c, k in per_cover.items() if k == 1]
    best = min(unique, key=lambda es: (-len(es), es))
    return URSolveResult(Matching.of(g, best), len(best), count, "oracle")


def _mask(x: Iterable[int] | int) -> int:
    return x if isinstance(x, int) else bits(x)


def ur_matching_avoiding(
    g: Graph, x: Iterable[int] | int, required_size: int, budget: int | None = None
) -> Matching | None:
    """A uniquely restricted matching of ``g - x`` with ``required_size`` edges.

    The returned matching is expressed on ``g`` with ``x`` isolated.
    """
    xm = _mask(x)
    h = g.isolate(xm)
    alive = g.vertex_mask & ~xm
    found, _, done = _search(h, alive, sorted(_edges_within(h, alive)), required_size, budget)
    if not done:
        raise BudgetExhausted(URSolveResult(Matching.of(h, found), len(found), budget or 0, "lower_bound"))
    return Matching.of(h, found) if len(found) >= required_size else None


def ur_avoiding_with_no_alt_paths(
    g: Graph, x: Iterable[int] | int, required_size: int, budget: int | None = None
) -> Matching | None:
    """A uniquely restricted matching of ``g`` of the required size that leaves
    ``x`` uncovered and admits no alternating path between two vertices of ``x``."""
    xm = _mask(x)
    xs = members(xm)
    pairs = list(combinations(xs, 2))
    alive = g.vertex_mask

    def no_paths(mate: list[int], live: int) -> bool:
        return all(_alt_path(g.adj, mate, live, a, b) is None for a, b in pairs)

    edges = [(u, v) for u, v in g.edges() if not (xm >> u & 1 or xm >> v & 1)]
    found, _, done = _search(g, alive, sorted(edges), required_size, budget, no_paths)
    if not done:
        raise BudgetExhausted(URSolveResult(Matching.of(g, found), len(found), budget or 0, "lower_bound"))
    return Matching.of(g, found) if len(found) >= required_size else None
