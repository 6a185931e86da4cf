"""The exceptional graph families.

* the catalog G1..G9 of 2-connected blocks and the cubic graphs H1, H2;
* the tree family: trees with matching number (n-1)/3 whose A-vertices
  (Gallai-Edmonds) have degree at most 3;
* the composed family: host trees with some D-vertices replaced by
  catalog blocks, attached at distinct degree-2 block vertices.
"""

from __future__ import annotations

import enum
import hashlib
import random
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import combinations
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .canon import canonical_form, canonical_order
from .formats import from_edgelist, parse_matching
from .graph import (
    Graph,
    GraphError,
    bits,
    blocks_and_bridges,
    contract,
    degree_profile,
    girth,
    is_connected,
    is_tree,
    members,
    popcount,
)
from .matching import GEDecomposition, Matching, gallai_edmonds, matching_number
from .trees import free_tree_levels, levels_to_graph, levels_to_parents
from .ur import nu_ur, ur_matching_avoiding

BLOCK_NAMES = tuple(f"G{i}" for i in range(1, 10))
CORE_BLOCK_NAMES = BLOCK_NAMES[:4]
EXCEPTIONAL_NAMES = ("H1", "H2")
CATALOG_NAMES = BLOCK_NAMES + EXCEPTIONAL_NAMES


class Status(enum.Enum):
    HOLDS = "✓"
    FAILS = "✗"
    VACUOUS = "-"


CONDITIONS = ("i", "ii", "iii")

# (order, nu_ur, flags for conditions i, ii, iii) as published
TABLE1: dict[str, tuple[int, int, tuple[Status, Status, Status]]] = {
    "G1": (10, 3, (Status.HOLDS, Status.HOLDS, Status.VACUOUS)),
    "G2": (13, 4, (Status.HOLDS, Status.FAILS, Status.VACUOUS)),
    "G3": (16, 5, (Status.HOLDS, Status.HOLDS, Status.HOLDS)),
    "G4": (19, 6, (Status.HOLDS, Status.FAILS, Status.VACUOUS)),
    "G5": (16, 5, (Status.HOLDS, Status.VACUOUS, Status.VACUOUS)),
    "G6": (19, 6, (Status.HOLDS, Status.HOLDS, Status.VACUOUS)),
    "G7": (19, 6, (Status.HOLDS, Status.HOLDS, Status.VACUOUS)),
    "G8": (22, 7, (Status.HOLDS, Status.VACUOUS, Status.VACUOUS)),
    "G9": (25, 8, (Status.HOLDS, Status.HOLDS, Status.VACUOUS)),
}
EXCEPTIONAL_VALUES = {"H1": (14, 4), "H2": (20, 6)}


class FamilyError(GraphError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    graph: Graph
    degree2: int
    expected_nu_ur: int
    flags: dict[str, Status] = field(compare=False)
    labels: tuple[str, ...] = field(compare=False, default=())

    @property
    def degree2_vertices(self) -> list[int]:
        return members(self.degree2)


# fixture loading


def _data_file(name: str) -> str:
    return resources.files("urmatch").joinpath("data", "catalog", name).read_text(encoding="ascii")


@lru_cache(maxsize=None)
def _manifest() -> dict[str, str]:
    out = {}
    for line in _data_file("MANIFEST.sha256").splitlines():
        digest, fname = line.split()
        out[fname] = digest
    return out


def _checked(fname: str) -> str:
    text = _data_file(fname)
    expected = _manifest().get(fname)
    if expected is None:
        raise FamilyError(f"{fname} is not listed in the catalog manifest")
    if hashlib.sha256(text.encode("ascii")).hexdigest() != expected:
        raise FamilyError(f"checksum mismatch for catalog fixture {fname}")
    return text


@lru_cache(maxsize=None)
def _load(name: str) -> CatalogEntry:
    if name not in CATALOG_NAMES:
        raise FamilyError(f"unknown catalog graph {name!r}; expected one of {', '.join(CATALOG_NAMES)}")
    text = _checked(f"{name}.edgelist")
    labels: tuple[str, ...] = ()
    for line in text.splitlines():
        if line.startswith("# labels:"):
            labels = tuple(line.split(":", 1)[1].split())
    g = from_edgelist(text)
    _, _, deg2 = degree_profile(g)
    if name in TABLE1:
        n, value, flags = TABLE1[name]
        flag_map = dict(zip(CONDITIONS, flags))
    else:
        n, value = EXCEPTIONAL_VALUES[name]
        flag_map = {}
    entry = CatalogEntry(name, g, bits(deg2), value, flag_map, labels)
    _check_structure(entry, n)
    return entry


def _check_structure(entry: CatalogEntry, n: int) -> None:
    g = entry.graph
    problems = []
    if g.n != n:
        problems.append(f"order {g.n} != {n}")
    if not g.is_subcubic():
        problems.append("not subcubic")
    gg = girth(g)
    if gg is None or gg < 5:
        problems.append(f"girth {gg}")
    k = popcount(entry.degree2)
    if entry.name in EXCEPTIONAL_NAMES:
        if not g.is_cubic():
            problems.append("not cubic")
    elif k not in (2, 3, 6) or min(g.degrees()) != 2:
        problems.append(f"{k} degree-2 vertices")
    if problems:
        raise FamilyError(f"catalog fixture {entry.name} is inconsistent: {'; '.join(problems)}")


def construct(name: str, verify: bool = True) -> CatalogEntry:
    """Catalog graph by name; ``verify`` recomputes nu_ur against the table."""
    entry = _load(name)
    if verify:
        _verify_value(name)
    return entry


@lru_cache(maxsize=None)
def _verify_value(name: str) -> None:
    entry = _load(name)
    value = nu_ur(entry.graph)
    if value != entry.expected_nu_ur:
        raise FamilyError(f"{name}: recomputed nu_ur {value} != tabulated {entry.expected_nu_ur}")


def figure_matching(name: str) -> Matching:
    """The dashed matching drawn for ``name`` (G5..G9, H1, H2)."""
    entry = _load(name)
    try:
        text = _checked(f"{name}.matching")
    except FileNotFoundError:
        raise FamilyError(f"no figure matching is shipped for {name}") from None
    return Matching.of(entry.graph, parse_matching(text))


@lru_cache(maxsize=None)
def _block_forms() -> dict[bytes, str]:
    return {canonical_form(_load(name).graph): name for name in BLOCK_NAMES}


@lru_cache(maxsize=None)
def exceptional_forms() -> dict[bytes, str]:
    return {canonical_form(_load(name).graph): name for name in EXCEPTIONAL_NAMES}


# side conditions shared by the tree lemmas and the catalog table


def has_vertex_with_three_neighbors_in(g: Graph, x: int) -> bool:
    return any(popcount(g.adj[v] & x) >= 3 for v in range(g.n) if not x >> v & 1)


def has_covering_pair(g: Graph, x: int) -> bool:
    """Some w outside x has distinct neighbors u, v outside x with x inside N(u) | N(v)."""
    for w in range(g.n):
        if x >> w & 1:
            continue
        outside = members(g.adj[w] & ~x)
        for u, v in combinations(outside, 2):
            if x & ~(g.adj[u] | g.adj[v]) == 0:
                return True
    return False


def qualifies(g: Graph, x: int, condition: str) -> bool:
    size = popcount(x)
    if condition == "i":
        return size <= 2
    if condition == "ii":
        return size == 3 and not has_vertex_with_three_neighbors_in(g, x)
    if condition == "iii":
        return size == 4 and not has_vertex_with_three_neighbors_in(g, x) and not has_covering_pair(g, x)
    raise FamilyError(f"unknown condition {condition!r}")


def qualifying_sets(g: Graph, pool: Sequence[int], condition: str) -> Iterator[int]:
    sizes = {"i": (0, 1, 2), "ii": (3,), "iii": (4,)}[condition]
    for k in sizes:
        for combo in combinations(pool, k):
            x = bits(combo)
            if qualifies(g, x, condition):
                yield x


def check_B_property(entry: CatalogEntry, condition: str) -> Status:
    """Whether deleting any qualifying set of degree-2 vertices preserves nu_ur."""
    g = entry.graph
    target = nu_ur(g)
    seen = False
    for x in qualifying_sets(g, entry.degree2_vertices, condition):
        seen = True
        if ur_matching_avoiding(g, x, target) is None:
            return Status.FAILS
    return Status.HOLDS if seen else Status.VACUOUS


def failing_set(entry: CatalogEntry, condition: str) -> list[int] | None:
    """A qualifying set whose deletion lowers nu_ur, if one exists."""
    g = entry.graph
    target = nu_ur(g)
    for x in qualifying_sets(g, entry.degree2_vertices, condition):
        if ur_matching_avoiding(g, x, target) is None:
            return members(x)
    return None


# tree family


def is_in_T(t: Graph) -> GEDecomposition | None:
    if not is_tree(t) or (t.n - 1) % 3:
        return None
    if matching_number(t) != (t.n - 1) // 3:
        return None
    ge = gallai_edmonds(t)
    if any(t.degree(v) > 3 for v in members(ge.a)):
        return None
    return ge


def _tree_matching_number(parents: list[int]) -> int:
    # leaves-up greedy: a vertex is matched to its parent when both are free
    n = len(parents)
    taken = [False] * n
    size = 0
    for v in range(n - 1, 0, -1):
        p = parents[v]
        if not taken[v] and not taken[p]:
            taken[v] = taken[p] = True
            size += 1
    return size


@lru_cache(maxsize=None)
def _trees_of_order(n: int) -> tuple[Graph, ...]:
    if (n - 1) % 3:
        return ()
    out = []
    for levels in free_tree_levels(n):
        if _tree_matching_number(levels_to_parents(levels)) != (n - 1) // 3:
            continue
        t = levels_to_graph(levels)
        if is_in_T(t) is not None:
            out.append(t)
    return tuple(out)


def generate_T(max_n: int) -> Iterator[Graph]:
    """All trees of the tree family with at most ``max_n`` vertices, one per isomorphism class."""
    for n in range(1, max_n + 1, 3):
        yield from _trees_of_order(n)


# composed family


@dataclass(frozen=True)
class Replacement:
    host_vertex: int
    name: str
    assignment: Mapping[int, int]  # host-tree neighbor -> block vertex (catalog labels)
    block_labels: tuple[int, ...] = ()  # catalog vertex -> vertex of the composed graph

    def to_dict(self) -> dict:
        return {
            "host_vertex": self.host_vertex,
            "block": self.name,
            "assignment": {str(k): v for k, v in sorted(self.assignment.items())},
            "block_vertices": list(self.block_labels),
        }


@dataclass(frozen=True)
class FamilyCertificate:
    host_tree: Graph
    ge: GEDecomposition
    replacements: tuple[Replacement, ...]
    tree_labels: tuple[int, ...] = ()  # host vertex -> composed vertex, -1 when replaced

    def to_dict(self) -> dict:
        return {
            "host_tree_edges": [list(e) for e in self.host_tree.edges()],
            "host_tree_order": self.host_tree.n,
            "ge": self.ge.to_dict(),
            "replacements": [r.to_dict() for r in self.replacements],
            "tree_vertices": list(self.tree_labels),
        }


def compose(
    t: Graph,
    ge: GEDecomposition,
    plan: Iterable[tuple[int, str, Mapping[int, int]]],
) -> tuple[Graph, FamilyCertificate]:
    """Replace several D-vertices of a host tree by catalog blocks at once."""
    plan = sorted(plan, key=lambda r: r[0])
    replaced = {}
    for u, name, assignment in plan:
        if not ge.d >> u & 1:
            raise FamilyError(f"vertex {u} is not in D of the host tree")
        if u in replaced:
            raise FamilyError(f"vertex {u} is replaced twice")
        entry = _load(name)
        if name not in BLOCK_NAMES:
            raise FamilyError(f"{name} is not a replaceable block")
        nbrs = set(t.neighbors(u))
        if set(assignment) != nbrs:
            raise FamilyError(f"assignment for {u} must map exactly its neighbors {sorted(nbrs)}")
        targets = list(assignment.values())
        if len(set(targets)) != len(targets):
            raise FamilyError(f"assignment for {u} is not injective")
        if len(nbrs) > popcount(entry.degree2):
            raise FamilyError(f"vertex {u} has degree {len(nbrs)} > {popcount(entry.degree2)} degree-2 vertices of {name}")
        for b in targets:
            if not entry.degree2 >> b & 1:
                raise FamilyError(f"attachment target {b} is not a degree-2 vertex of {name}")
        replaced[u] = (entry, dict(assignment))
    tree_labels = []
    nxt = 0
    for v in range(t.n):
        if v in replaced:
            tree_labels.append(-1)
        else:
            tree_labels.append(nxt)
            nxt += 1
    edges = [(tree_labels[a], tree_labels[b]) for a, b in t.edges() if a not in replaced and b not in replaced]
    reps = []
    for u in sorted(replaced):
        entry, assignment = replaced[u]
        labels = tuple(range(nxt, nxt + entry.graph.n))
        nxt += entry.graph.n
        edges += [(labels[a], labels[b]) for a, b in entry.graph.edges()]
        for nb, b in assignment.items():
            if nb in replaced:
                raise FamilyError(f"replaced vertices {u} and {nb} are adjacent")
            edges.append((tree_labels[nb], labels[b]))
        reps.append(Replacement(u, entry.name, assignment, labels))
    g = Graph.from_edges(nxt, edges)
    return g, FamilyCertificate(t, ge, tuple(reps), tuple(tree_labels))


def replace_vertex(
    t: Graph, ge: GEDecomposition, u: int, entry: CatalogEntry, assignment: Mapping[int, int]
) -> Graph:
    g, _ = compose(t, ge, [(u, entry.name, assignment)])
    return g


def compose_random(max_n: int, seed: int, max_tries: int = 100) -> tuple[Graph, FamilyCertificate]:
    """Seeded random member of the composed family with at most ``max_n`` vertices."""
    rng = random.Random(seed)
    pool = [t for t in generate_T(min(max_n, 16))]
    for _ in range(max_tries):
        t = rng.choice(pool)
        ge = is_in_T(t)
        assert ge is not None
        room = max_n - t.n
        plan = []
        d_vertices = ge.d_set()
        rng.shuffle(d_vertices)
        for u in d_vertices:
            if rng.random() < 0.5:
                continue
            deg = t.degree(u)
            options = [
                name for name in BLOCK_NAMES
                if popcount(_load(name).degree2) >= deg and _load(name).graph.n - 1 <= room
            ]
            if not options:
                continue
            name = rng.choice(options)
            entry = _load(name)
            targets = rng.sample(entry.degree2_vertices, deg)
            plan.append((u, name, dict(zip(t.neighbors(u), targets))))
            room -= entry.graph.n - 1
        g, cert = compose(t, ge, plan)
        gg = girth(g)
        if gg is None or gg >= 5:
            return g, cert
    raise FamilyError("could not sample a composed graph with girth at least 5")


def is_in_G(g: Graph) -> FamilyCertificate | None:
    """Recognize the composed family: catalog blocks joined by bridges to a host tree."""
    if g.n == 0 or not is_connected(g):
        return None
    blocks, bridges = blocks_and_bridges(g)
    catalog: list[tuple[int, str]] = []
    forms = _block_forms()
    used = 0
    for block in blocks:
        if popcount(block) == 2:
            continue
        sub, _ = g.induced(members(block))
        name = forms.get(canonical_form(sub)) if sub.n in (10, 13, 16, 19, 22, 25) else None
        if name is None or block & used:
            return None
        used |= block
        catalog.append((block, name))
    catalog.sort(key=lambda item: members(item[0])[0])
    in_block = {}
    for i, (block, _) in enumerate(catalog):
        for v in members(block):
            in_block[v] = i
    parts: list[list[int]] = []
    order_key = []
    for v in range(g.n):
        if v not in in_block:
            parts.append([v])
            order_key.append(v)
    for block, _ in catalog:
        parts.append(members(block))
        order_key.append(members(block)[0])
    parts = [p for _, p in sorted(zip(order_key, parts))]
    host, mapping = contract(g, parts)
    ge = is_in_T(host)
    if ge is None:
        return None
    tree_labels = [-1] * host.n
    for v in range(g.n):
        if v not in in_block:
            tree_labels[mapping[v]] = v
    reps = []
    for block, name in catalog:
        hv = mapping[members(block)[0]]
        if not ge.d >> hv & 1:
            return None
        if host.adj[hv] & ~ge.a:
            return None
        entry = _load(name)
        sub, old = g.induced(members(block))
        iso = _isomorphism(entry.graph, sub)
        block_labels = tuple(old[iso[b]] for b in range(entry.graph.n))
        back = {gv: b for b, gv in enumerate(block_labels)}
        assignment = {}
        for gv in members(block):
            outside = members(g.adj[gv] & ~block)
            if not outside:
                continue
            b = back[gv]
            if len(outside) > 1 or not entry.degree2 >> b & 1:
                return None
            assignment[mapping[outside[0]]] = b
        reps.append(Replacement(hv, name, assignment, block_labels))
    reps.sort(key=lambda r: r.host_vertex)
    return FamilyCertificate(host, ge, tuple(reps), tuple(tree_labels))


def _isomorphism(src: Graph, dst: Graph) -> list[int]:
    """Map src vertex -> dst vertex for isomorphic graphs."""
    a = canonical_order(src)
    b = canonical_order(dst)
    iso = [0] * src.n
    for x, y in zip(a, b):
        iso[x] = y
    return iso


def recompose(cert: FamilyCertificate) -> Graph:
    g, _ = compose(cert.host_tree, cert.ge, [(r.host_vertex, r.name, r.assignment) for r in cert.replacements])
    return g


# contractions inside the tree family


class Contraction(NamedTuple):
    tree: Graph
    ge: GEDecomposition
    mapping: list[int]
    merged: int


def _contract_star(t: Graph, ge: GEDecomposition, centers: Sequence[int]) -> Contraction:
    part = bits(centers)
    for c in centers:
        part |= t.adj[c]
    parts = []
    for v in range(t.n):
        if part >> v & 1:
            if v == members(part)[0]:
                parts.append(members(part))
        else:
            parts.append([v])
    quotient, mapping = contract(t, parts)
    w = mapping[centers[0]]
    new_ge = is_in_T(quotient)
    if new_ge is None:
        raise FamilyError("contraction left the tree family")
    nbhd = 0
    for c in centers:
        nbhd |= t.adj[c]
    expect_d = 1 << w | bits(mapping[v] for v in members(ge.d & ~nbhd))
    expect_a = bits(mapping[v] for v in members(ge.a & ~bits(centers)))
    if new_ge.d != expect_d or new_ge.a != expect_a:
        raise FamilyError("Gallai-Edmonds sets after contraction differ from the predicted update")
    return Contraction(quotient, new_ge, mapping, w)


def contract_claw(t: Graph, ge: GEDecomposition, v: int) -> Contraction:
    """Contract the three edges at an A-vertex into a new vertex ``merged``."""
    if is_in_T(t) is None:
        raise FamilyError("input is not in the tree family")
    if not ge.a >> v & 1:
        raise FamilyError(f"vertex {v} is not in A")
    return _contract_star(t, ge, [v])


def contract_double(t: Graph, ge: GEDecomposition, v1: int, v2: int) -> Contraction:
    """Contract all edges leaving {v1, v2}, two A-vertices with one common neighbor."""
    if is_in_T(t) is None:
        raise FamilyError("input is not in the tree family")
    if not (ge.a >> v1 & 1 and ge.a >> v2 & 1) or v1 == v2:
        raise FamilyError("v1 and v2 must be distinct A-vertices")
    if popcount(t.adj[v1] & t.adj[v2]) != 1:
        raise FamilyError("v1 and v2 must share exactly one neighbor")
    return _contract_star(t, ge, [v1, v2])


def double_pairs(t: Graph, ge: GEDecomposition) -> list[tuple[int, int]]:
    return [
        (a, b) for a, b in combinations(ge.a_set(), 2) if popcount(t.adj[a] & t.adj[b]) == 1
    ]
