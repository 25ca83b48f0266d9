"""Full analyses, family classification, and text/JSON/CSV rendering."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .achievability import (
    Schedule,
    Slot,
    best_secure_partition,
    fractional_sis_bound,
    nonsecure_fractional_is_bound,
    schedule_from_weights,
    secure_tdma_schedule,
)
from .converse import GeneratorWitness, UpperBoundWitness, thm4_upper_bound, thm5_upper_bound
from .feasibility import FeasibilityVerdict, check_feasibility
from .topology import Topology, canonical_form, enumerate_topologies

__all__ = [
    "InvariantError",
    "AnalysisReport",
    "Classification",
    "LOWER_METHODS",
    "CSV_COLUMNS",
    "analyze",
    "classify_all",
    "report_to_dict",
    "report_from_dict",
    "render_text",
    "render_csv",
    "fmt_rational",
    "parse_rational",
    "classification_to_json",
    "render_classification_text",
]

LOWER_METHODS = ("secure_tdma", "secure_partition", "fractional_sis")

CSV_COLUMNS = (
    "k",
    "matrix",
    "feasible",
    "witness",
    "secure_tdma",
    "secure_partition",
    "fractional_sis",
    "best_lower",
    "thm4",
    "thm5",
    "combined_upper",
    "optimal",
    "nonsecure_dof",
)


class InvariantError(RuntimeError):
    """An internal consistency check between bounds failed."""


def fmt_rational(q: Fraction | None) -> str | None:
    if q is None:
        return None
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str | None) -> Fraction | None:
    if s is None:
        return None
    num, _, den = s.partition("/")
    return Fraction(int(num), int(den or 1))


@dataclass(frozen=True)
class AnalysisReport:
    topology: Topology
    canonical: Topology
    feasibility: FeasibilityVerdict
    lower: dict[str, Fraction]
    schedules: dict[str, Schedule | None]
    thm4: UpperBoundWitness
    thm5: UpperBoundWitness
    combined_upper: Fraction
    nonsecure_dof_bound: Fraction
    lp_weights: dict[frozenset[int], Fraction] | None = None
    optimal: Fraction | None = field(default=None)

    @property
    def best_lower(self) -> Fraction:
        return max(self.lower.values(), default=Fraction(0))


def analyze(t: Topology) -> AnalysisReport:
    verdict = check_feasibility(t)
    lower: dict[str, Fraction] = {}
    schedules: dict[str, Schedule | None] = {}
    weights = None
    if verdict.feasible:
        tdma = secure_tdma_schedule(t)
        lower["secure_tdma"] = Fraction(1, t.k)
        schedules["secure_tdma"] = tdma
    else:
        lower["secure_tdma"] = Fraction(0)
        schedules["secure_tdma"] = None
    part = best_secure_partition(t)
    lp = fractional_sis_bound(t)
    if verdict.feasible and part is not None and lp is not None:
        lower["secure_partition"] = part.value
        schedules["secure_partition"] = part.schedule(t.k)
        lower["fractional_sis"] = lp.value
        schedules["fractional_sis"] = schedule_from_weights(t, lp)
        weights = lp.weights
    else:
        if verdict.feasible or part is not None or lp is not None:
            raise InvariantError(f"{t}: feasibility verdict disagrees with secure-set coverage")
        lower["secure_partition"] = Fraction(0)
        lower["fractional_sis"] = Fraction(0)
        schedules["secure_partition"] = None
        schedules["fractional_sis"] = None
    b4 = thm4_upper_bound(t)
    b5 = thm5_upper_bound(t)
    combined = min(b4.value, b5.value) if verdict.feasible else Fraction(0)
    best = max(lower.values())
    if best > combined:
        raise InvariantError(f"{t}: lower bound {best} exceeds upper bound {combined}")
    return AnalysisReport(
        topology=t,
        canonical=canonical_form(t),
        feasibility=verdict,
        lower=lower,
        schedules=schedules,
        thm4=b4,
        thm5=b5,
        combined_upper=combined,
        nonsecure_dof_bound=nonsecure_fractional_is_bound(t),
        lp_weights=weights,
        optimal=combined if best == combined else None,
    )


@dataclass(frozen=True)
class Classification:
    k: int
    rows: tuple[AnalysisReport, ...]

    @property
    def zero(self) -> int:
        return sum(1 for r in self.rows if r.combined_upper == 0)

    @property
    def positive(self) -> int:
        return len(self.rows) - self.zero

    @property
    def settled(self) -> int:
        return sum(1 for r in self.rows if r.optimal is not None and r.optimal > 0)

    def summary(self) -> dict[str, int]:
        return {
            "k": self.k,
            "classes": len(self.rows),
            "zero": self.zero,
            "positive": self.positive,
            "settled": self.settled,
        }


def classify_all(k: int, workers: int = 1) -> Classification:
    """Analyze every non-isomorphic K-user topology, in canonical order."""
    tops = list(enumerate_topologies(k))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = tuple(pool.map(analyze, tops, chunksize=16))
    else:
        rows = tuple(analyze(t) for t in tops)
    return Classification(k, rows)


def _schedule_dict(s: Schedule | None) -> dict[str, Any] | None:
    if s is None:
        return None
    return {
        "k": s.k,
        "slots": [{"senders": sorted(sl.senders), "jammers": sorted(sl.jammers)} for sl in s.slots],
    }


def _schedule_from(d: dict[str, Any] | None) -> Schedule | None:
    if d is None:
        return None
    return Schedule(d["k"], tuple(Slot(frozenset(s["senders"]), frozenset(s["jammers"])) for s in d["slots"]))


def _witness_dict(w: UpperBoundWitness) -> dict[str, Any]:
    return {
        "method": w.method,
        "s1": sorted(w.s1),
        "s2": sorted(w.s2),
        "value": fmt_rational(w.value),
        "mu": w.mu,
        "denominator": w.denominator,
        "cancellations": {str(r): v for r, v in sorted(w.cancellations.items())},
        "generators": {
            str(r): {"generated": sorted(g.generated), "permutation": list(g.permutation)}
            for r, g in sorted(w.generators.items())
        },
    }


def _witness_from(d: dict[str, Any]) -> UpperBoundWitness:
    return UpperBoundWitness(
        s1=frozenset(d["s1"]),
        s2=frozenset(d["s2"]),
        value=parse_rational(d["value"]),
        mu=d["mu"],
        denominator=d["denominator"],
        method=d["method"],
        cancellations={int(r): v for r, v in d["cancellations"].items()},
        generators={
            int(r): GeneratorWitness(int(r), frozenset(g["generated"]), tuple(g["permutation"]))
            for r, g in d["generators"].items()
        },
    )


def _rows(t: Topology) -> list[str]:
    return ["".join(map(str, row)) for row in t.matrix]


def report_to_dict(r: AnalysisReport) -> dict[str, Any]:
    wt = None
    if r.lp_weights is not None:
        wt = [
            {"users": sorted(u), "weight": fmt_rational(w)}
            for u, w in sorted(r.lp_weights.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
        ]
    return {
        "k": r.topology.k,
        "topology": _rows(r.topology),
        "canonical": _rows(r.canonical),
        "feasible": r.feasibility.feasible,
        "witness": list(r.feasibility.witness) if r.feasibility.witness else None,
        "lower_bounds": {m: fmt_rational(r.lower[m]) for m in LOWER_METHODS},
        "best_lower": fmt_rational(r.best_lower),
        "schedules": {m: _schedule_dict(r.schedules[m]) for m in LOWER_METHODS},
        "lp_weights": wt,
        "upper_bounds": {
            "thm4": fmt_rational(r.thm4.value),
            "thm5": fmt_rational(r.thm5.value),
            "combined": fmt_rational(r.combined_upper),
        },
        "upper_witnesses": {"thm4": _witness_dict(r.thm4), "thm5": _witness_dict(r.thm5)},
        "optimal": fmt_rational(r.optimal),
        "nonsecure_dof_bound": fmt_rational(r.nonsecure_dof_bound),
    }


def report_from_dict(d: dict[str, Any]) -> AnalysisReport:
    def topo(rows: list[str]) -> Topology:
        return Topology.from_matrix([[int(ch) for ch in row] for row in rows])

    witness = tuple(d["witness"]) if d["witness"] else None
    weights = None
    if d["lp_weights"] is not None:
        weights = {frozenset(e["users"]): parse_rational(e["weight"]) for e in d["lp_weights"]}
    return AnalysisReport(
        topology=topo(d["topology"]),
        canonical=topo(d["canonical"]),
        feasibility=FeasibilityVerdict(d["feasible"], witness),
        lower={m: parse_rational(v) for m, v in d["lower_bounds"].items()},
        schedules={m: _schedule_from(v) for m, v in d["schedules"].items()},
        thm4=_witness_from(d["upper_witnesses"]["thm4"]),
        thm5=_witness_from(d["upper_witnesses"]["thm5"]),
        combined_upper=parse_rational(d["upper_bounds"]["combined"]),
        nonsecure_dof_bound=parse_rational(d["nonsecure_dof_bound"]),
        lp_weights=weights,
        optimal=parse_rational(d["optimal"]),
    )


def _csv_row(r: AnalysisReport) -> list[str]:
    w = r.feasibility.witness
    return [
        str(r.topology.k),
        "/".join(_rows(r.topology)),
        "yes" if r.feasibility.feasible else "no",
        f"{w[0]}-{w[1]}" if w else "",
        fmt_rational(r.lower["secure_tdma"]),
        fmt_rational(r.lower["secure_partition"]),
        fmt_rational(r.lower["fractional_sis"]),
        fmt_rational(r.best_lower),
        fmt_rational(r.thm4.value),
        fmt_rational(r.thm5.value),
        fmt_rational(r.combined_upper),
        fmt_rational(r.optimal) or "",
        fmt_rational(r.nonsecure_dof_bound),
    ]


def render_csv(reports: list[AnalysisReport] | tuple[AnalysisReport, ...]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in reports:
        writer.writerow(_csv_row(r))
    return buf.getvalue()


def _fmt_set(s) -> str:
    return "{" + ", ".join(map(str, sorted(s))) + "}"


def render_text(r: AnalysisReport) -> str:
    lines = [f"topology K={r.topology.k}: {r.topology}"]
    lines.append(f"canonical form: {r.canonical}")
    if r.feasibility.feasible:
        lines.append("feasibility: positive symmetric SDoF")
    else:
        i, j, how = r.feasibility.witness
        lines.append(f"feasibility: zero symmetric SDoF (pair {i},{j}: {how})")
    lines.append("lower bounds:")
    for m in LOWER_METHODS:
        lines.append(f"  {m:<17}{fmt_rational(r.lower[m])}")
        sched = r.schedules[m]
        if sched is not None:
            for n, sl in enumerate(sched.slots, start=1):
                lines.append(f"    slot {n}: send {_fmt_set(sl.senders)} jam {_fmt_set(sl.jammers)}")
    lines.append("upper bounds:")
    for w in (r.thm4, r.thm5):
        lines.append(
            f"  {w.method:<17}{fmt_rational(w.value)}  (S1={_fmt_set(w.s1)}, S2={_fmt_set(w.s2)}, mu={w.mu})"
        )
        for rx, g in sorted(w.generators.items()):
            if g.permutation:
                lines.append(f"    receiver {rx}: G={_fmt_set(g.generated)} order {g.permutation}")
    lines.append(f"  {'combined':<17}{fmt_rational(r.combined_upper)}")
    lines.append(f"optimal: {fmt_rational(r.optimal) if r.optimal is not None else 'open'}")
    lines.append(f"nonsecure DoF (fractional IS): {fmt_rational(r.nonsecure_dof_bound)}")
    return "\n".join(lines) + "\n"


def classification_to_json(c: Classification) -> str:
    doc = {"summary": c.summary(), "rows": [report_to_dict(r) for r in c.rows]}
    return json.dumps(doc, indent=1) + "\n"


def render_classification_text(c: Classification) -> str:
    lines = []
    for n, r in enumerate(c.rows, start=1):
        opt = fmt_rational(r.optimal) if r.optimal is not None else "open"
        lines.append(
            f"{n:>5}  {r.topology}  lower {fmt_rational(r.best_lower):>5}  "
            f"upper {fmt_rational(r.combined_upper):>5}  optimal {opt}"
        )
    s = c.summary()
    lines.append(
        f"K={s['k']}: {s['classes']} classes, {s['zero']} zero, {s['positive']} positive, {s['settled']} settled"
    )
    return "\n".join(lines) + "\n"
