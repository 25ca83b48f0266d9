"""Upper bounds on symmetric SDoF from receiver-subset cancellation counting.

Both bounds minimize a ratio over disjoint receiver sets ``(S1, S2)``:

* the plain bound lets every receiver with interference cancel one
  interferer of its choice;
* the generator bound lets a receiver peel a whole generated set ``G`` of
  interferers and cancel only the last element of a valid peeling order.

The numerator counts the multiset ``U(S2)`` (all transmitters heard at
receivers of ``S2``, with repetition) left over after the cancellations,
plus ``|S1|``. Each cancellation slot consumes at most one occurrence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from . import kernels
from .feasibility import check_feasibility
from .topology import Multiset, Topology, TopologyError, from_mask, to_mask

__all__ = [
    "MuResult",
    "GeneratorSet",
    "GeneratorWitness",
    "UpperBoundWitness",
    "mu",
    "mu_tilde",
    "thm4_upper_bound",
    "thm5_upper_bound",
    "enumerate_generators",
    "generator_permutation",
    "is_generator_permutation",
    "combined_upper_bound",
]


@dataclass(frozen=True)
class MuResult:
    value: int
    v1: dict[int, int]
    v2: dict[int, int]


@dataclass(frozen=True)
class GeneratorSet:
    generated: frozenset[int]
    lasts: frozenset[int]


@dataclass(frozen=True)
class GeneratorWitness:
    receiver: int
    generated: frozenset[int]
    permutation: tuple[int, ...]

    @property
    def last(self) -> int | None:
        return self.permutation[-1] if self.permutation else None


@dataclass(frozen=True)
class UpperBoundWitness:
    s1: frozenset[int]
    s2: frozenset[int]
    value: Fraction
    mu: int
    denominator: int
    method: str
    cancellations: dict[int, int] = field(default_factory=dict)
    generators: dict[int, GeneratorWitness] = field(default_factory=dict)


def _check_disjoint(t: Topology, s1: frozenset[int], s2: frozenset[int]) -> None:
    t.check_users(s1 | s2)
    if s1 & s2:
        raise TopologyError(f"S1 and S2 overlap on {sorted(s1 & s2)}")


def _occurrences(t: Topology, s2: Iterable[int]) -> Multiset:
    return Multiset.union_of(t.heard[m - 1] for m in s2)


def mu(t: Topology, s1: Iterable[int], s2: Iterable[int]) -> MuResult:
    """Residual size of ``U(S2)`` under optimal one-per-receiver cancellations.

    Computed as a maximum bipartite matching between cancellation slots
    (one per receiver of ``S1 | S2`` with nonempty interference, choices
    ``I_r``) and the occurrences of ``U(S2)``.
    """
    s1 = frozenset(s1)
    s2 = frozenset(s2)
    _check_disjoint(t, s1, s2)
    occ = _occurrences(t, s2)
    right = [v for v in occ.items()]  # one entry per occurrence
    by_index: dict[int, list[int]] = {}
    for pos, v in enumerate(right):
        by_index.setdefault(v, []).append(pos)
    slot_rx = [m for m in sorted(s2) if t.interferers(m)] + [r for r in sorted(s1) if t.interferers(r)]
    owner: list[int | None] = [None] * len(right)

    def augment(slot: int, seen: set[int]) -> bool:
        for v in sorted(t.interferers(slot_rx[slot])):
            for pos in by_index.get(v, ()):
                if pos in seen:
                    continue
                seen.add(pos)
                if owner[pos] is None or augment(owner[pos], seen):
                    owner[pos] = slot
                    return True
        return False

    matched = sum(1 for s in range(len(slot_rx)) if augment(s, set()))
    pick: dict[int, int] = {}
    for pos, s in enumerate(owner):
        if s is not None:
            pick[slot_rx[s]] = right[pos]
    for r in slot_rx:
        # an unmatched slot cancels nothing useful; record any legal choice
        pick.setdefault(r, min(t.interferers(r)))
    v2 = {m: pick[m] for m in sorted(s2) if m in pick}
    v1 = {r: pick[r] for r in sorted(s1) if r in pick}
    return MuResult(len(occ) - matched, v1, v2)


def mu_tilde(t: Topology, s1: Iterable[int], s2: Iterable[int], lasts: dict[int, int | None]) -> int:
    """Residual size of ``U(S2)`` when each receiver cancels its fixed ``lasts`` entry."""
    s1 = frozenset(s1)
    s2 = frozenset(s2)
    _check_disjoint(t, s1, s2)
    occ = _occurrences(t, s2)
    for r in sorted(s2) + sorted(s1):
        v = lasts.get(r)
        if v is not None:
            occ.remove(v)
    return len(occ)


def _generator_lasts(t: Topology) -> list[int]:
    """``lasts[mask]``: users that can end a valid peeling of ``mask`` (0 if none).

    A peeling of ``G`` starts with some ``p`` whose receiver hears all of
    ``G - {p}`` as interference, then peels ``G - {p}``; a singleton peels
    trivially. Independent of which receiver owns ``G``.
    """
    inter = t.interferer_masks
    lasts = [0] * (1 << t.k)
    for mask in range(1, 1 << t.k):
        if mask & (mask - 1) == 0:
            lasts[mask] = mask
            continue
        acc = 0
        m = mask
        while m:
            low = m & -m
            p = low.bit_length() - 1
            rest = mask & ~low
            if not rest & ~inter[p]:
                acc |= lasts[rest]
            m &= ~low
        lasts[mask] = acc
    return lasts


def enumerate_generators(t: Topology, k: int) -> list[GeneratorSet]:
    """All generated sets ``G`` of receiver ``k`` (``G = {}`` included) with their admissible last users."""
    t.check_users([k])
    lasts = _generator_lasts(t)
    ik = t.interferer_masks[k - 1]
    out = [GeneratorSet(frozenset(), frozenset())]
    sub = ik
    found = []
    while sub:
        if lasts[sub]:
            found.append(GeneratorSet(from_mask(sub), from_mask(lasts[sub])))
        sub = (sub - 1) & ik
    found.sort(key=lambda g: (len(g.generated), tuple(sorted(g.generated))))
    return out + found


def generator_permutation(t: Topology, generated: Iterable[int], last: int) -> tuple[int, ...]:
    """A valid peeling order of ``generated`` ending in ``last``."""
    lasts = _generator_lasts(t)
    mask = to_mask(generated)
    if not lasts[mask] >> (last - 1) & 1:
        raise TopologyError(f"{last} cannot end a peeling of {sorted(from_mask(mask))}")
    inter = t.interferer_masks
    order = []
    while mask & (mask - 1):
        for p in range(t.k):
            if not mask >> p & 1 or p == last - 1:
                continue
            rest = mask & ~(1 << p)
            if not rest & ~inter[p] and lasts[rest] >> (last - 1) & 1:
                order.append(p + 1)
                mask = rest
                break
        else:  # pragma: no cover - guarded by the lasts table
            raise AssertionError("peeling table inconsistent")
    order.append(last)
    return tuple(order)


def is_generator_permutation(t: Topology, receiver: int, perm: Iterable[int]) -> bool:
    perm = tuple(perm)
    g = set(perm)
    if len(g) != len(perm) or not g <= t.interferers(receiver):
        return False
    for i, p in enumerate(perm):
        if not g - set(perm[: i + 1]) <= t.interferers(p):
            return False
    return True


def _roles(kinds: list[int]) -> tuple[frozenset[int], frozenset[int]]:
    s1 = frozenset(r + 1 for r, kd in enumerate(kinds) if kd == 1)
    s2 = frozenset(r + 1 for r, kd in enumerate(kinds) if kd == 2)
    return s1, s2


def thm4_upper_bound(t: Topology) -> UpperBoundWitness:
    """Plain cancellation bound: minimum of ``(|S1| + mu) / (|S1| + #{r in S1|S2 : I_r != {}})``."""
    s1_opts = []
    s2_opts = []
    for r in range(1, t.k + 1):
        inter = sorted(t.interferers(r))
        if inter:
            s1_opts.append([(v - 1, 2) for v in inter])
            s2_opts.append([(v - 1, 1) for v in inter])
        else:
            s1_opts.append([(-1, 1)])
            s2_opts.append([(-1, 0)])
    res = kernels.ratio_search(t.k, list(t.heard_masks), s1_opts, s2_opts)
    num, den, kinds, _ = res
    s1, s2 = _roles(kinds)
    m = mu(t, s1, s2)
    if len(s1) + m.value != num:
        raise AssertionError(f"search residual {num - len(s1)} disagrees with matching {m.value}")
    cancellations = {**m.v2, **m.v1}
    return UpperBoundWitness(s1, s2, Fraction(num, den), m.value, den, "thm4", dict(sorted(cancellations.items())))


def thm5_upper_bound(t: Topology) -> UpperBoundWitness:
    """Generator bound: minimum of ``(|S1| + mu~) / (|S1| + sum |G_r|)`` over roles and generators."""
    lasts = _generator_lasts(t)
    # per receiver and last user: the largest generated set that can end there
    best_gen: list[dict[int, int]] = []
    for r in range(t.k):
        ik = t.interferer_masks[r]
        table: dict[int, int] = {}
        sub = ik
        while sub:
            ls = lasts[sub]
            v = 0
            while ls:
                if ls & 1:
                    cur = table.get(v)
                    if cur is None or bin(sub).count("1") > bin(cur).count("1") or (
                        bin(sub).count("1") == bin(cur).count("1") and sub < cur
                    ):
                        table[v] = sub
                ls >>= 1
                v += 1
            sub = (sub - 1) & ik
        best_gen.append(table)
    s1_opts = []
    s2_opts = []
    choice_keys: list[list[int | None]] = []
    for r in range(t.k):
        table = best_gen[r]
        if table:
            keys = sorted(table)
            choice_keys.append(keys)
            s1_opts.append([(v, 1 + bin(table[v]).count("1")) for v in keys])
            s2_opts.append([(v, bin(table[v]).count("1")) for v in keys])
        else:
            choice_keys.append([None])
            s1_opts.append([(-1, 1)])
            s2_opts.append([(-1, 0)])
    num, den, kinds, picks = kernels.ratio_search(t.k, list(t.heard_masks), s1_opts, s2_opts)
    s1, s2 = _roles(kinds)
    generators: dict[int, GeneratorWitness] = {}
    chosen_last: dict[int, int | None] = {}
    for r in sorted(s1 | s2):
        v = choice_keys[r - 1][picks[r - 1]]
        if v is None:
            generators[r] = GeneratorWitness(r, frozenset(), ())
            chosen_last[r] = None
        else:
            gmask = best_gen[r - 1][v]
            perm = generator_permutation(t, from_mask(gmask), v + 1)
            generators[r] = GeneratorWitness(r, from_mask(gmask), perm)
            chosen_last[r] = v + 1
    residual = mu_tilde(t, s1, s2, chosen_last)
    if len(s1) + residual != num:
        raise AssertionError(f"search residual {num - len(s1)} disagrees with recount {residual}")
    cancellations = {r: v for r, v in chosen_last.items() if v is not None}
    return UpperBoundWitness(s1, s2, Fraction(num, den), residual, den, "thm5", cancellations, generators)


def combined_upper_bound(t: Topology) -> Fraction:
    if not check_feasibility(t).feasible:
        return Fraction(0)
    return min(thm4_upper_bound(t).value, thm5_upper_bound(t).value)
