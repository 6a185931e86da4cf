"""graph6, edge-list and DOT serialization."""

from __future__ import annotations

from typing import Iterable

from .graph import Edge, Graph, GraphError, norm_edge

FORMATS = ("graph6", "edgelist", "dot")


class FormatError(GraphError):
    """Malformed input; ``position`` is a byte offset or ``line:column``."""

    def __init__(self, message: str, position: int | str) -> None:
        super().__init__(f"{message} (at {position})")
        self.position = position


# graph6


def _encode_n(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def to_graph6(g: Graph) -> bytes:
    out = bytearray(_encode_n(g.n))
    chunk = 0
    filled = 0
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            chunk = chunk << 1 | (row >> i & 1)
            filled += 1
            if filled == 6:
                out.append(chunk + 63)
                chunk = filled = 0
    if filled:
        out.append((chunk << (6 - filled)) + 63)
    return bytes(out)


def from_graph6(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        raise FormatError("graph6 header is not accepted", 0)
    if not data:
        raise FormatError("empty graph6 input", 0)
    for pos, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise FormatError(f"byte {byte!r} outside the graph6 range 63..126", pos)
    if data[0] != 126:
        n, start = data[0] - 63, 1
    elif len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise FormatError("truncated 8-byte vertex count", len(data))
        n, start = 0, 8
        for byte in data[2:8]:
            n = n << 6 | (byte - 63)
    else:
        if len(data) < 4:
            raise FormatError("truncated 4-byte vertex count", len(data))
        n, start = 0, 4
        for byte in data[1:4]:
            n = n << 6 | (byte - 63)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[start:]
    if len(body) != need:
        raise FormatError(f"expected {need} adjacency bytes for n={n}, found {len(body)}", start)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    if k % 6 and (body[-1] - 63) & ((1 << (6 - k % 6)) - 1):
        raise FormatError("nonzero padding bits", start + need - 1)
    return Graph.from_edges(n, edges)


# edge list


def to_edgelist(g: Graph) -> bytes:
    lines = [str(g.n)] + [f"{u} {v}" for u, v in g.edges()]
    return ("\n".join(lines) + "\n").encode("ascii")


def from_edgelist(data: bytes | str) -> Graph:
    """Parse whitespace-separated ``u v`` lines with 0-based labels.

    ``#`` starts a comment.  A first data line holding a single integer
    fixes the vertex count; otherwise it is one more than the largest label.
    """
    text = data.decode("ascii") if isinstance(data, bytes) else data
    n: int | None = None
    edges: list[Edge] = []
    seen_data = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        fields = line.split()
        if not fields:
            continue
        values = []
        for tok in fields:
            try:
                values.append(int(tok))
            except ValueError:
                col = line.index(tok) + 1
                raise FormatError(f"not an integer: {tok!r}", f"{lineno}:{col}") from None
            if values[-1] < 0:
                raise FormatError(f"negative label {tok}", f"{lineno}:{line.index(tok) + 1}")
        if len(values) == 1 and not seen_data:
            n = values[0]
        elif len(values) == 2:
            u, v = values
            if u == v:
                raise FormatError(f"self-loop at vertex {u}", f"{lineno}:1")
            edges.append(norm_edge(u, v))
        else:
            raise FormatError(f"expected 'u v', got {len(values)} fields", f"{lineno}:1")
        seen_data = True
    top = max((max(e) for e in edges), default=-1) + 1
    if n is None:
        n = top
    elif top > n:
        raise FormatError(f"label {top - 1} exceeds declared vertex count {n}", "header")
    if len(set(edges)) != len(edges):
        raise FormatError("duplicate edge", "body")
    return Graph.from_edges(n, edges)


def parse_matching(data: bytes | str) -> list[Edge]:
    """Edge list of a matching: ``u v`` lines, ``#`` comments, no header."""
    text = data.decode("ascii") if isinstance(data, bytes) else data
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        fields = raw.split("#", 1)[0].split()
        if not fields:
            continue
        if len(fields) != 2:
            raise FormatError(f"expected 'u v', got {len(fields)} fields", f"{lineno}:1")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise FormatError("not an integer", f"{lineno}:1") from None
        out.append(norm_edge(u, v))
    return out


# DOT


def to_dot(g: Graph, matching: Iterable[Edge] = (), name: str = "G") -> bytes:
    """DOT text; edges of ``matching`` are drawn dashed."""
    dashed = {norm_edge(u, v) for u, v in matching}
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in range(g.n)]
    for u, v in g.edges():
        style = " [style=dashed]" if (u, v) in dashed else ""
        lines.append(f"  {u} -- {v}{style};")
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("ascii")


def parse(fmt: str, data: bytes | str) -> Graph:
    if fmt == "graph6":
        return from_graph6(data)
    if fmt == "edgelist":
        return from_edgelist(data)
    if fmt == "dot":
        raise FormatError("DOT is an output-only format", 0)
    raise FormatError(f"unknown format {fmt!r}", 0)


def serialize(g: Graph, fmt: str, matching: Iterable[Edge] = ()) -> bytes:
    if fmt == "graph6":
        return to_graph6(g)
    if fmt == "edgelist":
        return to_edgelist(g)
    if fmt == "dot":
        return to_dot(g, matching)
    raise FormatError(f"unknown format {fmt!r}", 0)
