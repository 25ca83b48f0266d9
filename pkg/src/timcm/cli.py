"""``timcm`` command line.

Exit status: 0 on success, 1 on bad input, 2 when an internal consistency
check fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import report as rp
from .achievability import (
    InfeasibleTopology,
    ScheduleError,
    best_secure_partition,
    fractional_sis_bound,
    parse_schedule,
    schedule_from_weights,
    secure_tdma_schedule,
    serialize_schedule,
)
from .converse import thm4_upper_bound, thm5_upper_bound
from .topology import TopologyError, parse_topology
from .verifier import brute_force_best_schedule, symmetric_rate, verify_schedule

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INTERNAL = 2

FORMATS = ("text", "json", "csv")


def _read_topology(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise TopologyError(f"cannot read {path}: {exc}") from exc
    return parse_topology(text)


def cmd_analyze(args) -> int:
    t = _read_topology(args.topology)
    r = rp.analyze(t)
    if args.format == "json":
        sys.stdout.write(json.dumps(rp.report_to_dict(r), indent=1) + "\n")
    elif args.format == "csv":
        sys.stdout.write(rp.render_csv([r]))
    else:
        sys.stdout.write(rp.render_text(r))
    return EXIT_OK


def cmd_classify(args) -> int:
    if args.k < 1:
        raise TopologyError("K must be at least 1")
    c = rp.classify_all(args.k, workers=args.workers)
    if args.format == "json":
        sys.stdout.write(rp.classification_to_json(c))
    elif args.format == "csv":
        sys.stdout.write(rp.render_csv(c.rows))
    else:
        sys.stdout.write(rp.render_classification_text(c))
    return EXIT_OK


def cmd_verify(args) -> int:
    t = _read_topology(args.topology)
    try:
        text = Path(args.schedule).read_text()
    except OSError as exc:
        raise ScheduleError(f"cannot read {args.schedule}: {exc}") from exc
    s = parse_schedule(text)
    diags = verify_schedule(t, s)
    ok = all(d.valid for d in diags)
    rate = symmetric_rate(s) if s.slots else None
    if args.format == "json":
        doc = {
            "valid": ok,
            "symmetric_rate": rp.fmt_rational(rate),
            "slots": [
                {
                    "slot": d.slot + 1,
                    "valid": d.valid,
                    "overlap": list(d.overlap),
                    "decodability": [list(v) for v in d.decodability_violations],
                    "secrecy": [list(v) for v in d.secrecy_violations],
                }
                for d in diags
            ],
        }
        sys.stdout.write(json.dumps(doc) + "\n")
    else:
        for d in diags:
            if d.valid:
                sys.stdout.write(f"slot {d.slot + 1}: ok\n")
                continue
            for u in d.overlap:
                sys.stdout.write(f"slot {d.slot + 1}: user {u} both sends and jams\n")
            for k, other in d.decodability_violations:
                sys.stdout.write(f"slot {d.slot + 1}: receiver {k} hears active transmitter {other}\n")
            for k, j in d.secrecy_violations:
                sys.stdout.write(f"slot {d.slot + 1}: message {k} exposed at receiver {j} with no jammer\n")
        sys.stdout.write(f"schedule {'valid' if ok else 'INVALID'}; symmetric rate {rp.fmt_rational(rate)}\n")
    return EXIT_OK


def cmd_oracle(args) -> int:
    t = _read_topology(args.topology)
    if args.t_max < 1:
        raise TopologyError("--t-max must be positive")
    rate, sched = brute_force_best_schedule(t, args.t_max)
    if args.format == "json":
        doc = {"rate": rp.fmt_rational(rate), "t_max": args.t_max, "schedule": json.loads(serialize_schedule(sched))}
        sys.stdout.write(json.dumps(doc) + "\n")
    else:
        sys.stdout.write(f"best symmetric rate with at most {args.t_max} slots: {rp.fmt_rational(rate)}\n")
        for n, sl in enumerate(sched.slots, start=1):
            sys.stdout.write(f"  slot {n}: send {sorted(sl.senders)} jam {sorted(sl.jammers)}\n")
    return EXIT_OK


def _bound_entry(method: str, t) -> dict:
    if method == "tdma":
        try:
            s = secure_tdma_schedule(t)
        except InfeasibleTopology:
            return {"method": method, "value": None, "schedule": None}
        return {"method": method, "value": rp.fmt_rational(symmetric_rate(s)), "schedule": json.loads(serialize_schedule(s))}
    if method == "partition":
        p = best_secure_partition(t)
        if p is None:
            return {"method": method, "value": None, "schedule": None}
        return {"method": method, "value": rp.fmt_rational(p.value), "schedule": json.loads(serialize_schedule(p.schedule(t.k)))}
    if method == "lp":
        b = fractional_sis_bound(t)
        if b is None:
            return {"method": method, "value": None, "schedule": None}
        s = schedule_from_weights(t, b)
        return {"method": method, "value": rp.fmt_rational(b.value), "schedule": json.loads(serialize_schedule(s))}
    w = thm4_upper_bound(t) if method == "thm4" else thm5_upper_bound(t)
    return {"method": method, "value": rp.fmt_rational(w.value), "witness": rp._witness_dict(w)}


def cmd_bounds(args) -> int:
    t = _read_topology(args.topology)
    methods = ["tdma", "partition", "lp", "thm4", "thm5"] if args.method == "all" else [args.method]
    entries = [_bound_entry(m, t) for m in methods]
    if args.format == "json":
        sys.stdout.write(json.dumps(entries) + "\n")
    elif args.format == "csv":
        sys.stdout.write("method,value\n")
        for e in entries:
            sys.stdout.write(f"{e['method']},{e['value'] or ''}\n")
    else:
        for e in entries:
            sys.stdout.write(f"{e['method']:<10}{e['value'] if e['value'] is not None else 'absent'}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="timcm", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="full analysis of one topology")
    a.add_argument("topology", help="topology file (matrix or JSON format), '-' for stdin")
    a.add_argument("--format", choices=FORMATS, default="text")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("classify", help="analyze every non-isomorphic K-user topology")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--format", choices=FORMATS, default="text")
    c.add_argument("--workers", type=int, default=1)
    c.set_defaults(func=cmd_classify)

    v = sub.add_parser("verify", help="check a schedule against a topology")
    v.add_argument("topology")
    v.add_argument("schedule")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="brute-force best schedule with a bounded number of slots")
    o.add_argument("topology")
    o.add_argument("--t-max", type=int, required=True)
    o.add_argument("--format", choices=("text", "json"), default="text")
    o.set_defaults(func=cmd_oracle)

    b = sub.add_parser("bounds", help="one or all bound computations")
    b.add_argument("topology")
    b.add_argument("--method", choices=("tdma", "partition", "lp", "thm4", "thm5", "all"), default="all")
    b.add_argument("--format", choices=FORMATS, default="text")
    b.set_defaults(func=cmd_bounds)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (TopologyError, ScheduleError) as exc:
        sys.stderr.write(f"timcm: error: {exc}\n")
        return EXIT_INPUT
    except (rp.InvariantError, AssertionError) as exc:
        sys.stderr.write(f"timcm: internal invariant failed: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
