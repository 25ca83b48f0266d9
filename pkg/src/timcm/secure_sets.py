"""Independent sets and secure independent sets with jammer witnesses."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .topology import Topology, TopologyError, from_mask, to_mask

__all__ = [
    "SecureSetWitness",
    "is_independent_set",
    "find_jammer_set",
    "enumerate_independent_sets",
    "enumerate_secure_independent_sets",
    "maximum_independent_sets",
    "maximum_secure_independent_sets",
]


@dataclass(frozen=True)
class SecureSetWitness:
    users: frozenset[int]
    jammers: frozenset[int]


def _sort_key(s: frozenset[int]) -> tuple[int, tuple[int, ...]]:
    return (len(s), tuple(sorted(s)))


def _independent_mask(t: Topology, mask: int) -> bool:
    # U is independent iff no member's receiver hears another member
    heard = t.heard_masks
    m = mask
    i = 0
    while m:
        if m & 1 and heard[i] & mask & ~(1 << i):
            return False
        m >>= 1
        i += 1
    return True


def _reach(t: Topology, mask: int) -> int:
    out = 0
    reach = t.reach_masks
    i = 0
    while mask:
        if mask & 1:
            out |= reach[i]
        mask >>= 1
        i += 1
    return out


def is_independent_set(t: Topology, users: Iterable[int]) -> bool:
    users = frozenset(users)
    t.check_users(users)
    return _independent_mask(t, to_mask(users))


def _jammers_mask(t: Topology, mask: int) -> int | None:
    """Least-cardinality, then lexicographically least, jammer set for ``mask``."""
    exposed = _reach(t, mask) & ~mask
    if not exposed:
        return 0
    reach = t.reach_masks
    candidates = [c for c in range(t.k) if not mask >> c & 1 and not reach[c] & mask]
    cover = 0
    for c in candidates:
        cover |= reach[c]
    if exposed & ~cover:
        return None
    for size in range(1, len(candidates) + 1):
        for combo in combinations(candidates, size):
            got = 0
            for c in combo:
                got |= reach[c]
            if not exposed & ~got:
                jm = 0
                for c in combo:
                    jm |= 1 << c
                return jm
    return None  # unreachable: the full candidate set covers


def find_jammer_set(t: Topology, users: Iterable[int]) -> frozenset[int] | None:
    """Jammer set making ``users`` a secure independent set, or ``None``.

    Raises :class:`TopologyError` when ``users`` is not independent.
    """
    users = frozenset(users)
    t.check_users(users)
    mask = to_mask(users)
    if not _independent_mask(t, mask):
        raise TopologyError(f"{sorted(users)} is not an independent set")
    jm = _jammers_mask(t, mask)
    return None if jm is None else from_mask(jm)


def _independent_masks(t: Topology) -> list[int]:
    return [m for m in range(1, 1 << t.k) if _independent_mask(t, m)]


def secure_witness_masks(t: Topology) -> list[tuple[int, int]]:
    """``(users_mask, jammers_mask)`` for every nonempty SIS, in canonical order."""
    out = []
    for m in _independent_masks(t):
        jm = _jammers_mask(t, m)
        if jm is not None:
            out.append((m, jm))
    out.sort(key=lambda p: _sort_key(from_mask(p[0])))
    return out


def enumerate_independent_sets(t: Topology) -> list[frozenset[int]]:
    return sorted((from_mask(m) for m in _independent_masks(t)), key=_sort_key)


def enumerate_secure_independent_sets(t: Topology) -> list[SecureSetWitness]:
    return [SecureSetWitness(from_mask(u), from_mask(c)) for u, c in secure_witness_masks(t)]


def _maximum(sets: list[frozenset[int]]) -> list[frozenset[int]]:
    if not sets:
        return []
    top = max(len(s) for s in sets)
    return [s for s in sets if len(s) == top]


def maximum_independent_sets(t: Topology) -> list[frozenset[int]]:
    return _maximum(enumerate_independent_sets(t))


def maximum_secure_independent_sets(t: Topology) -> list[frozenset[int]]:
    return _maximum([w.users for w in enumerate_secure_independent_sets(t)])
