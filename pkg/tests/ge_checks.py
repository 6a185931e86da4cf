"""Structure checks for the Gallai-Edmonds decomposition, shared by two test modules."""

from __future__ import annotations

from urmatch.graph import Graph, members
from urmatch.matching import gallai_edmonds, is_factor_critical, maximum_matching


def _component_of(ge, v: int) -> int | None:
    for i, comp in enumerate(ge.d_components):
        if comp >> v & 1:
            return i
    return None


def problems(g: Graph) -> list[str]:
    """Empty when items (i)-(iv) all hold for ``g``."""
    out = []
    ge = gallai_edmonds(g)
    # (i): deleting an A-vertex leaves D unchanged
    for v in members(ge.a):
        h, old = g.delete([v])
        d_after = {old[i] for i in members(gallai_edmonds(h).d)}
        if d_after != set(members(ge.d)):
            out.append(f"(i) fails at a-vertex {v}")
    # (ii): structure of a maximum matching
    m = maximum_matching(g)
    mate = m.mate()
    for v in members(ge.c):
        if mate[v] < 0 or not ge.c >> mate[v] & 1:
            out.append(f"(ii) c-vertex {v} not matched inside c")
    for i, comp in enumerate(ge.d_components):
        inside = sum(1 for u, w in m.edges if comp >> u & 1 and comp >> w & 1)
        if inside != (bin(comp).count("1") - 1) // 2:
            out.append(f"(ii) d-component {i} not near-perfectly matched")
    used = set()
    for v in members(ge.a):
        k = _component_of(ge, mate[v]) if mate[v] >= 0 else None
        if k is None or k in used:
            out.append(f"(ii) a-vertex {v} not matched into a fresh d-component")
        used.add(k)
    # (iii)
    for comp in ge.d_components:
        sub, _ = g.induced(members(comp))
        if not is_factor_critical(sub):
            out.append("(iii) d-component not factor-critical")
    # (iv)
    if 2 * ge.nu != g.n + bin(ge.a).count("1") - len(ge.d_components):
        out.append("(iv) identity fails")
    if ge.nu != len(m):
        out.append("nu differs from maximum matching size")
    return out
