"""Lower bounds with explicit sender/jammer schedules."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Iterable

from .feasibility import check_feasibility
from .lp import max_min_coverage
from .secure_sets import _independent_masks, secure_witness_masks
from .topology import Topology, from_mask

__all__ = [
    "Slot",
    "Schedule",
    "ScheduleError",
    "InfeasibleTopology",
    "PartitionBound",
    "FractionalScheduleBound",
    "secure_tdma_schedule",
    "best_secure_partition",
    "fractional_sis_bound",
    "schedule_from_weights",
    "nonsecure_fractional_is_bound",
    "parse_schedule",
    "serialize_schedule",
]


class ScheduleError(ValueError):
    pass


class InfeasibleTopology(ValueError):
    """Secure TDMA requested on a topology with zero symmetric SDoF."""


@dataclass(frozen=True)
class Slot:
    senders: frozenset[int]
    jammers: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "senders", frozenset(self.senders))
        object.__setattr__(self, "jammers", frozenset(self.jammers))
        if self.senders & self.jammers:
            raise ScheduleError(f"slot uses {sorted(self.senders & self.jammers)} as sender and jammer")


@dataclass(frozen=True)
class Schedule:
    k: int
    slots: tuple[Slot, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "slots", tuple(self.slots))

    def __len__(self) -> int:
        return len(self.slots)


@dataclass(frozen=True)
class PartitionBound:
    parts: tuple[frozenset[int], ...]
    jammers: tuple[frozenset[int], ...]
    value: Fraction

    def schedule(self, k: int) -> Schedule:
        return Schedule(k, tuple(Slot(p, c) for p, c in zip(self.parts, self.jammers)))


@dataclass(frozen=True)
class FractionalScheduleBound:
    value: Fraction
    weights: dict[frozenset[int], Fraction]
    jammers: dict[frozenset[int], frozenset[int]]


def secure_tdma_schedule(t: Topology) -> Schedule:
    """One sender per slot; each exposed receiver gets the least usable jammer."""
    if not check_feasibility(t).feasible:
        raise InfeasibleTopology("topology has zero symmetric SDoF; secure TDMA does not exist")
    slots = []
    for k in range(1, t.k + 1):
        tk = t.heard[k - 1]
        jammers = set()
        for j in sorted(t.reach(k) - {k}):
            usable = [c for c in sorted(t.heard[j - 1]) if c not in tk and c != k]
            if not usable:
                raise InfeasibleTopology(f"no jammer can cover receiver {j} for sender {k}")
            jammers.add(usable[0])
        slots.append(Slot(frozenset({k}), frozenset(jammers)))
    return Schedule(t.k, tuple(slots))


def best_secure_partition(t: Topology) -> PartitionBound | None:
    """Fewest secure independent sets partitioning all users, or ``None``."""
    sis = secure_witness_masks(t)
    jam = dict(sis)
    full = t.full_mask
    covered = 0
    for u, _ in sis:
        covered |= u
    if covered != full:
        return None
    by_low: dict[int, list[int]] = {}
    for u, _ in sis:
        low = u & -u
        by_low.setdefault(low, []).append(u)

    # parts[mask] = (count, first part) for an optimal partition of mask
    best: dict[int, tuple[int, int]] = {0: (0, 0)}

    def solve(mask: int) -> int:
        if mask in best:
            return best[mask][0]
        low = mask & -mask
        top = None
        pick = 0
        for u in by_low.get(low, ()):
            if u & ~mask:
                continue
            n = solve(mask & ~u)
            if top is None or n + 1 < top:
                top = n + 1
                pick = u
        # no secure set containing low fits inside mask: mark as unreachable
        best[mask] = (top if top is not None else t.k + 1, pick)
        return best[mask][0]

    n = solve(full)
    if n > t.k:
        return None
    parts = []
    mask = full
    while mask:
        u = best[mask][1]
        parts.append(u)
        mask &= ~u
    parts.sort(key=lambda u: (-bin(u).count("1"), tuple(sorted(from_mask(u)))))
    return PartitionBound(
        tuple(from_mask(u) for u in parts),
        tuple(from_mask(jam[u]) for u in parts),
        Fraction(1, len(parts)),
    )


def fractional_sis_bound(t: Topology, maximum_only: bool = False) -> FractionalScheduleBound | None:
    """Best weighting of secure independent sets, as an exact LP optimum.

    With ``maximum_only`` the sets are restricted to maximum-cardinality
    secure independent sets.
    """
    sis = secure_witness_masks(t)
    if maximum_only and sis:
        top = max(bin(u).count("1") for u, _ in sis)
        sis = [(u, c) for u, c in sis if bin(u).count("1") == top]
    covered = 0
    for u, _ in sis:
        covered |= u
    if covered != t.full_mask:
        return None
    masks = [u for u, _ in sis]
    value, x = max_min_coverage(masks, t.k)
    weights = {from_mask(u): w for u, w in zip(masks, x) if w}
    jammers = {from_mask(u): from_mask(c) for u, c in sis if from_mask(u) in weights}
    return FractionalScheduleBound(value, weights, jammers)


def schedule_from_weights(t: Topology, bound: FractionalScheduleBound) -> Schedule:
    """Expand weights into ``lcm(denominators)`` slots, each set in a consecutive run."""
    if not bound.weights:
        raise ScheduleError("empty weighting")
    if sum(bound.weights.values()) != 1 or any(w < 0 for w in bound.weights.values()):
        raise ScheduleError("weights must be nonnegative and sum to 1")
    period = reduce(lcm, (w.denominator for w in bound.weights.values()), 1)
    slots = []
    for users in sorted(bound.weights, key=lambda s: (-len(s), tuple(sorted(s)))):
        runs = bound.weights[users] * period
        slots.extend([Slot(users, bound.jammers.get(users, frozenset()))] * int(runs))
    return Schedule(t.k, tuple(slots))


def nonsecure_fractional_is_bound(t: Topology) -> Fraction:
    """Fractional independent-set scheduling value without secrecy constraints."""
    value, _ = max_min_coverage(_independent_masks(t), t.k)
    return value


def serialize_schedule(s: Schedule) -> str:
    doc = {
        "k": s.k,
        "slots": [{"senders": sorted(sl.senders), "jammers": sorted(sl.jammers)} for sl in s.slots],
    }
    return json.dumps(doc) + "\n"


def parse_schedule(text: str) -> Schedule:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScheduleError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "k" not in doc or "slots" not in doc:
        raise ScheduleError('schedule needs "k" and "slots"')
    k = doc["k"]
    if not isinstance(k, int) or k < 1:
        raise ScheduleError("k must be a positive integer")
    slots = []
    for i, sl in enumerate(doc["slots"]):
        try:
            senders = _index_list(sl["senders"])
            jammers = _index_list(sl.get("jammers", []))
        except (KeyError, TypeError) as exc:
            raise ScheduleError(f"slot {i}: malformed ({exc})") from exc
        slots.append(Slot(senders, jammers))
    return Schedule(k, tuple(slots))


def _index_list(values: Iterable) -> frozenset[int]:
    out = []
    for v in values:
        if not isinstance(v, int) or isinstance(v, bool):
            raise TypeError(f"index {v!r} is not an integer")
        out.append(v)
    return frozenset(out)
