"""Instance-by-instance verification of the lower bound and the catalog table."""

from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .canon import canonical_form
from .enumerate import DEFAULT_CAP, ENUMERATION_CAP, enumerate_subcubic_girth5, random_subcubic_girth5
from .families import (
    BLOCK_NAMES,
    CONDITIONS,
    TABLE1,
    Status,
    check_B_property,
    construct,
    exceptional_forms,
    is_in_G,
)
from .formats import to_graph6
from .graph import Graph, components, girth, members
from .matching import matching_number
from .ur import BudgetExhausted, nu_ur_exact


@dataclass(frozen=True)
class AuditRecord:
    graph_id: str
    n: int
    girth: int | None
    nu: int
    nu_ur: int
    kappa_G: int
    kappa_G3: int
    kappa_exceptional: int
    bound: Fraction
    slack: Fraction
    status: str  # ok | violation | budget_exceeded

    @property
    def is_equality(self) -> bool:
        return self.status == "ok" and self.slack == 0

    @property
    def explained(self) -> bool:
        """Whether some component falls in one of the excluded families."""
        return self.kappa_G + self.kappa_G3 + self.kappa_exceptional > 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["bound"] = str(self.bound)
        d["slack"] = str(self.slack)
        return d


def theorem3_bound(g: Graph, budget: int | None = None, graph_id: str | None = None) -> AuditRecord:
    """Evaluate (n - kappa_G - kappa_G3 - kappa_exc) / 3 against the exact nu_ur.

    kappa terms count components; nu_ur is summed over components.
    """
    k_g = k_g3 = k_exc = 0
    value = 0
    status = "ok"
    exc = exceptional_forms()
    for comp in components(g):
        sub, _ = g.induced(members(comp))
        if is_in_G(sub) is not None:
            k_g += 1
        gg = girth(sub)
        if sub.is_cubic() and (gg is None or gg >= 5):
            k_g3 += 1
        if sub.n in (14, 20) and canonical_form(sub) in exc:
            k_exc += 1
        try:
            value += nu_ur_exact(sub, budget).value
        except BudgetExhausted as err:
            value += err.partial.value
            status = "budget_exceeded"
    bound = Fraction(g.n - k_g - k_g3 - k_exc, 3)
    slack = value - bound
    if status == "ok" and slack < 0:
        status = "violation"
    gid = graph_id if graph_id is not None else canonical_form(g).decode("ascii")
    return AuditRecord(gid, g.n, girth(g), matching_number(g), value, k_g, k_g3, k_exc, bound, slack, status)


@dataclass
class AuditReport:
    parameters: dict
    records: list[AuditRecord]
    wall_time: float = 0.0
    counts: dict = field(default_factory=dict)

    @property
    def violations(self) -> list[AuditRecord]:
        return [r for r in self.records if r.status == "violation"]

    @property
    def budget_failures(self) -> list[AuditRecord]:
        return [r for r in self.records if r.status == "budget_exceeded"]

    @property
    def equality_cases(self) -> list[AuditRecord]:
        return [r for r in self.records if r.is_equality]

    @property
    def unexplained_equality_cases(self) -> list[AuditRecord]:
        """Slack-0 instances with no component in an excluded family.

        For these the bound is n/3 and slack 0 means nu_ur = n/3, so they
        meet the bound without any kappa term; they are not counterexamples.
        """
        return [r for r in self.equality_cases if not r.explained]

    @property
    def extremal_cases(self) -> list[AuditRecord]:
        """Instances with nu_ur <= (n - 1)/3, where some kappa term is needed."""
        return [r for r in self.records if r.status == "ok" and 3 * r.nu_ur < r.n]

    @property
    def unrecognized_extremal_cases(self) -> list[AuditRecord]:
        """Extremal instances that are neither composed-family members nor cubic."""
        return [r for r in self.extremal_cases if not (r.kappa_G or r.kappa_G3)]

    def summary(self) -> dict:
        per_n: dict[int, int] = {}
        for r in self.records:
            per_n[r.n] = per_n.get(r.n, 0) + 1
        return {
            "instances": len(self.records),
            "instances_per_n": {str(k): v for k, v in sorted(per_n.items())},
            "violations": len(self.violations),
            "budget_failures": len(self.budget_failures),
            "equality_cases": len(self.equality_cases),
            "unexplained_equality_cases": len(self.unexplained_equality_cases),
            "extremal_cases": len(self.extremal_cases),
            "unrecognized_extremal_cases": len(self.unrecognized_extremal_cases),
        }

    def to_json(self) -> str:
        payload = {
            "parameters": self.parameters,
            "summary": self.summary(),
            "equality_cases": [r.graph_id for r in self.equality_cases],
            "extremal_cases": [r.graph_id for r in self.extremal_cases],
            "records": [r.to_dict() for r in self.records],
        }
        return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        cols = list(AuditRecord.__dataclass_fields__)
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols)
        for r in self.records:
            d = r.to_dict()
            writer.writerow(["" if d[c] is None else d[c] for c in cols])
        return buf.getvalue()


def _evaluate(args: tuple[str, int | None]) -> AuditRecord:
    g6, budget = args
    from .formats import from_graph6

    return theorem3_bound(from_graph6(g6), budget, graph_id=g6)


def _instances(n_max: int, mode: str, seed: int, sample_count: int, n_min: int) -> Iterator[str]:
    if mode == "exhaustive":
        for n in range(n_min, n_max + 1):
            for g in enumerate_subcubic_girth5(n):
                yield to_graph6(g).decode("ascii")
    elif mode == "random":
        seen = set()
        for i in range(sample_count):
            g = random_subcubic_girth5(n_max, seed * 1_000_003 + i)
            key = canonical_form(g).decode("ascii")
            if key not in seen:
                seen.add(key)
                yield key
    else:
        raise ValueError(f"unknown audit mode {mode!r}")


def run_audit(
    n_max: int = DEFAULT_CAP,
    mode: str = "exhaustive",
    seed: int = 0,
    sample_count: int = 100,
    jobs: int | None = None,
    budget: int | None = None,
    n_min: int = 1,
    allow_n12: bool = False,
) -> AuditReport:
    """Evaluate the bound on every enumerated (or sampled) instance.

    Records are sorted by (n, graph id) so the report does not depend on
    the number of workers.
    """
    if mode == "exhaustive":
        cap = ENUMERATION_CAP if allow_n12 else DEFAULT_CAP
        if n_max > cap:
            raise ValueError(f"exhaustive audit is capped at n = {cap}")
    start = time.perf_counter()
    tasks = [(g6, budget) for g6 in _instances(n_max, mode, seed, sample_count, n_min)]
    jobs = jobs or os.cpu_count() or 1
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_evaluate, tasks, chunksize=8))
    else:
        records = [_evaluate(t) for t in tasks]
    records.sort(key=lambda r: (r.n, r.graph_id))
    params = {"n_min": n_min, "n_max": n_max, "mode": mode, "seed": seed, "sample_count": sample_count}
    report = AuditReport(params, records, time.perf_counter() - start)
    report.counts = report.summary()
    return report


def audit_catalog(budget: int | None = None) -> list[AuditRecord]:
    """The bound evaluated on each catalog graph and on H1, H2."""
    names = list(BLOCK_NAMES) + ["H1", "H2"]
    return [theorem3_bound(construct(name, verify=False).graph, budget, graph_id=name) for name in names]


@dataclass(frozen=True)
class Table1Row:
    name: str
    n: int
    nu_ur: int
    flags: tuple[Status, Status, Status]
    expected: tuple[int, int, tuple[Status, Status, Status]]

    @property
    def matches(self) -> bool:
        return (self.n, self.nu_ur, self.flags) == self.expected

    def cells(self) -> list[str]:
        return [self.name, str(self.n), str(self.nu_ur)] + [s.value for s in self.flags]

    def to_dict(self) -> dict:
        n, value, flags = self.expected
        return {
            "name": self.name,
            "n": self.n,
            "nu_ur": self.nu_ur,
            "flags": {c: s.value for c, s in zip(CONDITIONS, self.flags)},
            "expected": {"n": n, "nu_ur": value, "flags": {c: s.value for c, s in zip(CONDITIONS, flags)}},
            "match": self.matches,
        }


def table1_report(names: Iterable[str] = BLOCK_NAMES) -> list[Table1Row]:
    """Recompute every cell of the catalog table from the fixtures."""
    rows = []
    for name in names:
        entry = construct(name, verify=False)
        value = nu_ur_exact(entry.graph).value
        flags = tuple(check_B_property(entry, c) for c in CONDITIONS)
        rows.append(Table1Row(name, entry.graph.n, value, flags, TABLE1[name]))
    return rows


def render_table1(rows: list[Table1Row]) -> str:
    header = ["H", "n(H)", "nu_ur(H)", "(i)", "(ii)", "(iii)", "match"]
    lines = ["\t".join(header)]
    for r in rows:
        lines.append("\t".join(r.cells() + ["yes" if r.matches else "NO"]))
    return "\n".join(lines) + "\n"
