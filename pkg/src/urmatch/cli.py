"""Command-line front end.

Exit codes: 0 ok, 1 a checked claim is false, 2 usage error, 3 search budget
exhausted.  Output is JSON unless ``--plain`` is given.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from . import audit as audit_mod
from . import families
from .enumerate import DEFAULT_CAP
from .formats import FormatError, parse, parse_matching, serialize, to_graph6
from .graph import Graph, GraphError, degree_profile, girth
from .matching import Matching, MatchingError, gallai_edmonds
from .ur import BudgetExhausted, alternating_cycle, default_budget, nu_ur_exact

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read_bytes(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as err:
        raise UsageError(f"cannot read {path}: {err.strerror}") from None


def _load_graph(args: argparse.Namespace) -> tuple[Graph, str]:
    if getattr(args, "construct", None):
        try:
            entry = families.construct(args.construct, verify=False)
        except families.FamilyError as err:
            raise UsageError(str(err)) from None
        return entry.graph, args.construct
    if not getattr(args, "input", None):
        raise UsageError("one of --input or --construct is required")
    if not args.format:
        raise UsageError("--format is required with --input (graph6 or edgelist)")
    data = _read_bytes(args.input)
    if args.format == "graph6":
        lines = [ln for ln in data.splitlines() if ln.strip()]
        if not lines:
            raise UsageError(f"{args.input} holds no graph")
        data = lines[0]
    return parse(args.format, data), args.input


def _load_matching(g: Graph, args: argparse.Namespace) -> Matching | None:
    if getattr(args, "figure_matching", False):
        if not args.construct:
            raise UsageError("--figure-matching needs --construct")
        return families.figure_matching(args.construct)
    if getattr(args, "matching", None):
        return Matching.of(g, parse_matching(_read_bytes(args.matching)))
    return None


def _emit(args: argparse.Namespace, payload: dict[str, Any], plain: str) -> None:
    if args.plain:
        sys.stdout.write(plain if plain.endswith("\n") else plain + "\n")
    else:
        sys.stdout.write(json.dumps(payload, sort_keys=True, ensure_ascii=False) + "\n")


def _edges(m: Matching) -> list[list[int]]:
    return [list(e) for e in m.sorted_edges()]


# subcommands


def cmd_solve(args: argparse.Namespace) -> int:
    g, source = _load_graph(args)
    budget = args.budget if args.budget is not None else default_budget()
    try:
        result = nu_ur_exact(g, budget)
    except BudgetExhausted as err:
        payload = {
            "source": source,
            "status": "budget_exhausted",
            "lower_bound": err.partial.value,
            "matching": _edges(err.partial.best),
        }
        _emit(args, payload, f"budget exhausted; lower bound {err.partial.value}")
        return EXIT_BUDGET
    payload = {
        "source": source,
        "status": "exact",
        "n": g.n,
        "nu_ur": result.value,
        "matching": _edges(result.best),
        "nodes_explored": result.nodes_explored,
    }
    plain = f"nu_ur = {result.value}\n" + "".join(f"{u} {v}\n" for u, v in result.best.sorted_edges())
    _emit(args, payload, plain)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    g, source = _load_graph(args)
    m = _load_matching(g, args)
    if m is None:
        raise UsageError("--matching FILE (or --figure-matching) is required")
    cycle = alternating_cycle(g, m)
    ok = cycle is None
    payload = {
        "source": source,
        "matching": _edges(m),
        "uniquely_restricted": ok,
        "alternating_cycle": cycle,
    }
    plain = "uniquely restricted" if ok else "not uniquely restricted; alternating cycle: " + " ".join(map(str, cycle))
    _emit(args, payload, plain)
    return EXIT_OK if ok else EXIT_FALSE


def cmd_decompose(args: argparse.Namespace) -> int:
    g, source = _load_graph(args)
    ge = gallai_edmonds(g)
    payload = {"source": source, "n": g.n, **ge.to_dict()}
    plain = (
        f"D ({len(ge.d_set())}): {' '.join(map(str, ge.d_set()))}\n"
        f"A ({len(ge.a_set())}): {' '.join(map(str, ge.a_set()))}\n"
        f"C ({len(ge.c_set())}): {' '.join(map(str, ge.c_set()))}\n"
        f"nu = {ge.nu}"
    )
    _emit(args, payload, plain)
    return EXIT_OK


def cmd_construct(args: argparse.Namespace) -> int:
    try:
        entry = families.construct(args.name, verify=args.verify)
    except families.FamilyError as err:
        raise UsageError(str(err)) from None
    g = entry.graph
    if args.output_format:
        text = serialize(g, args.output_format).decode("ascii")
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return EXIT_OK
    payload = {
        "name": entry.name,
        "n": g.n,
        "m": g.m,
        "girth": girth(g),
        "degree2": entry.degree2_vertices,
        "expected_nu_ur": entry.expected_nu_ur,
        "graph6": to_graph6(g).decode("ascii"),
        "edges": [list(e) for e in g.edges()],
        "labels": list(entry.labels),
    }
    plain = f"{entry.name}: n={g.n} m={g.m} girth={girth(g)} nu_ur={entry.expected_nu_ur}\n" + to_graph6(g).decode()
    _emit(args, payload, plain)
    return EXIT_OK


def cmd_check_family(args: argparse.Namespace) -> int:
    g, source = _load_graph(args)
    ge = families.is_in_T(g)
    cert = families.is_in_G(g)
    mind, maxd, deg2 = degree_profile(g)
    payload = {
        "source": source,
        "n": g.n,
        "in_T": ge is not None,
        "T_decomposition": ge.to_dict() if ge else None,
        "in_G": cert is not None,
        "certificate": cert.to_dict() if cert else None,
        "cubic_girth5": g.is_cubic() and (girth(g) or 99) >= 5,
        "degree_range": [mind, maxd],
    }
    lines = [f"tree family: {'yes' if ge else 'no'}", f"composed family: {'yes' if cert else 'no'}"]
    if cert:
        lines.append(f"host tree order {cert.host_tree.n}; blocks: " + ", ".join(
            f"{r.name}@{r.host_vertex}" for r in cert.replacements) if cert.replacements else f"host tree order {cert.host_tree.n}; no blocks")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_audit(args: argparse.Namespace) -> int:
    try:
        report = audit_mod.run_audit(
            n_max=args.n_max,
            mode=args.mode,
            seed=args.seed,
            sample_count=args.samples,
            jobs=args.jobs,
            budget=args.budget if args.budget is not None else default_budget(),
            n_min=args.n_min,
            allow_n12=args.allow_n12,
        )
    except ValueError as err:
        raise UsageError(str(err)) from None
    if args.json:
        Path(args.json).write_text(report.to_json(), encoding="utf-8")
    if args.csv:
        Path(args.csv).write_text(report.to_csv(), encoding="utf-8")
    summary = report.summary()
    payload = {"parameters": report.parameters, "summary": summary}
    plain = "\n".join(f"{k}: {v}" for k, v in summary.items())
    _emit(args, payload, plain)
    if report.violations:
        return EXIT_FALSE
    if report.budget_failures:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_table1(args: argparse.Namespace) -> int:
    rows = audit_mod.table1_report()
    ok = all(r.matches for r in rows)
    payload = {"rows": [r.to_dict() for r in rows], "match": ok}
    _emit(args, payload, audit_mod.render_table1(rows))
    return EXIT_OK if ok else EXIT_FALSE


def cmd_render(args: argparse.Namespace) -> int:
    g, _ = _load_graph(args)
    m = _load_matching(g, args)
    edges = m.sorted_edges() if m is not None else []
    sys.stdout.write(serialize(g, "dot", edges).decode("ascii"))
    return EXIT_OK


def _add_graph_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--input", metavar="FILE", help="graph file ('-' for stdin)")
    src.add_argument("--construct", metavar="NAME", choices=families.CATALOG_NAMES, help="catalog graph")
    p.add_argument("--format", choices=("graph6", "edgelist"), help="format of --input (required with --input)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="urmatch", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--plain", action="store_true", help="human-readable output instead of JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact uniquely restricted matching number")
    _add_graph_source(p)
    p.add_argument("--budget", type=int, help="search-node budget (default from URMATCH_BUDGET)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check that a matching is uniquely restricted")
    _add_graph_source(p)
    p.add_argument("--matching", metavar="FILE", help="matching as 'u v' lines")
    p.add_argument("--figure-matching", action="store_true", help="use the shipped figure matching")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decompose", help="Gallai-Edmonds decomposition")
    _add_graph_source(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("construct", help="emit a catalog graph")
    p.add_argument("name", choices=families.CATALOG_NAMES)
    p.add_argument("--output-format", choices=("graph6", "edgelist", "dot"))
    p.add_argument("--verify", action="store_true", help="recompute nu_ur against the table")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check-family", help="membership in the tree and composed families")
    _add_graph_source(p)
    p.set_defaults(func=cmd_check_family)

    p = sub.add_parser("audit", help="verify the lower bound over enumerated or random graphs")
    p.add_argument("--n-max", type=int, default=DEFAULT_CAP)
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: logical cores)")
    p.add_argument("--budget", type=int)
    p.add_argument("--allow-n12", action="store_true", help="permit exhaustive n = 12")
    p.add_argument("--json", metavar="PATH", help="write full records as JSON")
    p.add_argument("--csv", metavar="PATH", help="write records as CSV")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("table1", help="recompute the catalog table and diff it")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("render", help="DOT output, matching edges dashed")
    _add_graph_source(p)
    p.add_argument("--matching", metavar="FILE")
    p.add_argument("--figure-matching", action="store_true")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as err:
        parser.print_usage(sys.stderr)
        print(f"urmatch: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, MatchingError, GraphError) as err:
        print(f"urmatch: error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
