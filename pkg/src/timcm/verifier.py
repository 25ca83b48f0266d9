"""Slot-level schedule checking and a brute-force best-schedule oracle."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

from .achievability import Schedule, ScheduleError, Slot
from .secure_sets import secure_witness_masks
from .topology import Topology, TopologyError, from_mask

__all__ = [
    "SlotDiagnostics",
    "verify_schedule",
    "schedule_is_valid",
    "symmetric_rate",
    "brute_force_best_schedule",
]


@dataclass(frozen=True)
class SlotDiagnostics:
    slot: int
    overlap: tuple[int, ...] = ()
    decodability_violations: tuple[tuple[int, int], ...] = field(default_factory=tuple)
    secrecy_violations: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    @property
    def valid(self) -> bool:
        return not (self.overlap or self.decodability_violations or self.secrecy_violations)


def _check_slot(t: Topology, index: int, slot: Slot) -> SlotDiagnostics:
    senders = slot.senders
    jammers = slot.jammers
    active = senders | jammers
    decod = []
    for k in sorted(senders):
        for other in sorted(t.heard[k - 1] & active - {k}):
            decod.append((k, other))
    secrecy = []
    for k in sorted(senders):
        for j in sorted(t.reach(k) - senders):
            if not t.heard[j - 1] & jammers:
                secrecy.append((k, j))
    return SlotDiagnostics(index, tuple(sorted(senders & jammers)), tuple(decod), tuple(secrecy))


def verify_schedule(t: Topology, s: Schedule) -> list[SlotDiagnostics]:
    """Diagnostics for every slot; a schedule is valid iff all are clean.

    A slot is valid when no user both sends and jams, each sender's receiver
    hears no other active transmitter, and every other receiver hearing a
    sender also hears at least one jammer.
    """
    if s.k != t.k:
        raise TopologyError(f"schedule is for K={s.k}, topology has K={t.k}")
    for sl in s.slots:
        t.check_users(sl.senders | sl.jammers)
    return [_check_slot(t, i, sl) for i, sl in enumerate(s.slots)]


def schedule_is_valid(t: Topology, s: Schedule) -> bool:
    return all(d.valid for d in verify_schedule(t, s))


def symmetric_rate(s: Schedule, k: int | None = None) -> Fraction:
    k = s.k if k is None else k
    if not s.slots:
        raise ScheduleError("empty schedule has no rate")
    uses = [0] * k
    for sl in s.slots:
        for u in sl.senders:
            uses[u - 1] += 1
    return Fraction(min(uses), len(s.slots))


def brute_force_best_schedule(t: Topology, t_max: int) -> tuple[Fraction, Schedule]:
    """Exact best symmetric rate over all valid schedules of at most ``t_max`` slots.

    Any valid slot's sender set is a secure independent set, and the stored
    minimal jammer set keeps it valid, so slots range over that list; slot
    order is irrelevant, so multisets are enumerated.
    """
    if t_max < 1:
        raise ValueError("t_max must be positive")
    sis = secure_witness_masks(t)
    best = Fraction(0)
    best_pick: tuple[int, ...] = ()
    k = t.k
    member = [[u >> i & 1 for i in range(k)] for u, _ in sis]
    for length in range(1, t_max + 1):
        for pick in combinations_with_replacement(range(len(sis)), length):
            uses = [0] * k
            for p in pick:
                row = member[p]
                for i in range(k):
                    uses[i] += row[i]
            rate = Fraction(min(uses), length)
            if rate > best:
                best = rate
                best_pick = pick
    slots = tuple(Slot(from_mask(sis[p][0]), from_mask(sis[p][1])) for p in best_pick)
    return best, Schedule(k, slots)
