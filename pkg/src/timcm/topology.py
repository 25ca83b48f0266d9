"""Topology model, file formats, and isomorphism-class enumeration.

Users are 1-indexed everywhere in the public API. Internally a set of users
is an ``int`` bitmask with bit ``i - 1`` standing for user ``i``; the helpers
:func:`to_mask` and :func:`from_mask` convert between the two.

Matrix orientation follows the adjacency matrix convention: row ``j`` is
receiver ``j``, column ``i`` is transmitter ``i``, and ``B[j][i] = 1`` iff
transmitter ``i`` is heard at receiver ``j``.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from . import kernels

__all__ = [
    "TopologyError",
    "Topology",
    "Multiset",
    "to_mask",
    "from_mask",
    "parse_topology",
    "serialize_topology",
    "derived_sets",
    "canonical_form",
    "canonical_code",
    "relabel",
    "enumerate_topologies",
]


class TopologyError(ValueError):
    """Malformed topology input or a violation of the channel model."""


def to_mask(users: Iterable[int]) -> int:
    mask = 0
    for u in users:
        if u < 1:
            raise TopologyError(f"user index {u} must be at least 1")
        mask |= 1 << (u - 1)
    return mask


def from_mask(mask: int) -> frozenset[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def _sorted_members(mask: int) -> tuple[int, ...]:
    return tuple(sorted(from_mask(mask)))


@dataclass(frozen=True)
class Topology:
    """A K-user partially connected network.

    ``heard[k - 1]`` is the set of transmitters heard at receiver ``k``
    (always containing ``k`` itself).
    """

    k: int
    heard: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if self.k < 1:
            raise TopologyError("K must be at least 1")
        heard = tuple(frozenset(h) for h in self.heard)
        object.__setattr__(self, "heard", heard)
        if len(heard) != self.k:
            raise TopologyError(f"expected {self.k} receivers, got {len(heard)}")
        for rx, tx in enumerate(heard, start=1):
            for i in tx:
                if not isinstance(i, int) or not 1 <= i <= self.k:
                    raise TopologyError(f"receiver {rx}: transmitter {i!r} out of range")
            if rx not in tx:
                raise TopologyError(f"receiver {rx} does not hear its own transmitter")

    @classmethod
    def from_matrix(cls, rows: Iterable[Iterable[int]]) -> "Topology":
        rows = [list(r) for r in rows]
        k = len(rows)
        heard = []
        for j, row in enumerate(rows, start=1):
            if len(row) != k:
                raise TopologyError(f"row {j} has {len(row)} entries, expected {k}")
            if any(b not in (0, 1) for b in row):
                raise TopologyError(f"row {j} has entries other than 0/1")
            heard.append(frozenset(i for i, b in enumerate(row, start=1) if b))
        return cls(k, tuple(heard))

    @classmethod
    def from_interference(cls, k: int, interferers: dict[int, Iterable[int]]) -> "Topology":
        """Build from ``{receiver: I_receiver}``; receivers not listed hear only themselves."""
        extra = set(interferers) - set(range(1, k + 1))
        if extra:
            raise TopologyError(f"receivers {sorted(extra)} out of range 1..{k}")
        heard = []
        for rx in range(1, k + 1):
            heard.append(frozenset(interferers.get(rx, ())) | {rx})
        return cls(k, tuple(heard))

    @classmethod
    def from_masks(cls, k: int, masks: Iterable[int]) -> "Topology":
        return cls(k, tuple(from_mask(m) for m in masks))

    @cached_property
    def heard_masks(self) -> tuple[int, ...]:
        return tuple(to_mask(h) for h in self.heard)

    @cached_property
    def interferer_masks(self) -> tuple[int, ...]:
        return tuple(m & ~(1 << i) for i, m in enumerate(self.heard_masks))

    @cached_property
    def reach_masks(self) -> tuple[int, ...]:
        reach = [0] * self.k
        for j, m in enumerate(self.heard_masks):
            for i in range(self.k):
                if m >> i & 1:
                    reach[i] |= 1 << j
        return tuple(reach)

    @property
    def full_mask(self) -> int:
        return (1 << self.k) - 1

    @property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(1 if i in h else 0 for i in range(1, self.k + 1)) for h in self.heard
        )

    def interferers(self, k: int) -> frozenset[int]:
        self._check_user(k)
        return self.heard[k - 1] - {k}

    def reach(self, i: int) -> frozenset[int]:
        """Receivers that hear transmitter ``i``."""
        self._check_user(i)
        return from_mask(self.reach_masks[i - 1])

    def reach_of(self, users: Iterable[int]) -> frozenset[int]:
        mask = 0
        for u in users:
            self._check_user(u)
            mask |= self.reach_masks[u - 1]
        return from_mask(mask)

    def _check_user(self, u: int) -> None:
        if not 1 <= u <= self.k:
            raise TopologyError(f"user {u} out of range 1..{self.k}")

    def check_users(self, users: Iterable[int]) -> None:
        for u in users:
            self._check_user(u)

    def __str__(self) -> str:
        return "/".join("".join(map(str, row)) for row in self.matrix)


class Multiset:
    """Multiset of user indices; removing an absent element reports ``False``."""

    def __init__(self, items: Iterable[int] = ()) -> None:
        self._counts: Counter[int] = Counter(items)

    @classmethod
    def union_of(cls, sets: Iterable[Iterable[int]]) -> "Multiset":
        ms = cls()
        for s in sets:
            ms._counts.update(s)
        return ms

    def remove(self, item: int) -> bool:
        if self._counts[item] <= 0:
            return False
        self._counts[item] -= 1
        if not self._counts[item]:
            del self._counts[item]
        return True

    def count(self, item: int) -> int:
        return self._counts.get(item, 0)

    def copy(self) -> "Multiset":
        ms = Multiset()
        ms._counts = self._counts.copy()
        return ms

    def items(self) -> list[int]:
        return sorted(self._counts.elements())

    @property
    def counts(self) -> dict[int, int]:
        return dict(self._counts)

    def __len__(self) -> int:
        return sum(self._counts.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multiset):
            return NotImplemented
        return self._counts == other._counts

    def __repr__(self) -> str:
        return f"Multiset({self.items()})"


def parse_topology(text: str) -> Topology:
    """Read a topology in either the matrix text format or the JSON format."""
    stripped = text.strip()
    if not stripped:
        raise TopologyError("empty input")
    if stripped.startswith("{"):
        return _parse_json(stripped)
    lines = [ln.rstrip() for ln in text.strip("\n").split("\n")]
    head = lines[0].strip()
    if not head.isdigit():
        raise TopologyError(f"malformed dimension line {head!r}")
    k = int(head)
    if k == 0:
        raise TopologyError("K must be at least 1")
    body = [ln for ln in lines[1:]]
    while body and not body[-1].strip():
        body.pop()
    if len(body) != k:
        raise TopologyError(f"expected {k} matrix rows, got {len(body)}")
    rows = []
    for j, ln in enumerate(body, start=1):
        ln = ln.rstrip()
        if len(ln) != k or any(ch not in "01" for ch in ln):
            raise TopologyError(f"row {j}: expected {k} characters from {{0,1}}, got {ln!r}")
        rows.append([int(ch) for ch in ln])
    return Topology.from_matrix(rows)


def _parse_json(text: str) -> Topology:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TopologyError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "k" not in doc or "heard" not in doc:
        raise TopologyError('JSON topology needs "k" and "heard"')
    k = doc["k"]
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise TopologyError("K must be a positive integer")
    heard = doc["heard"]
    if not isinstance(heard, list) or not all(isinstance(h, list) for h in heard):
        raise TopologyError('"heard" must be a list of lists')
    for h in heard:
        for i in h:
            if not isinstance(i, int) or isinstance(i, bool):
                raise TopologyError(f"non-integer transmitter index {i!r}")
    return Topology(k, tuple(frozenset(h) for h in heard))


def serialize_topology(t: Topology, fmt: str = "matrix") -> str:
    if fmt == "matrix":
        rows = "".join("".join(map(str, row)) + "\n" for row in t.matrix)
        return f"{t.k}\n{rows}"
    if fmt == "json":
        return json.dumps({"k": t.k, "heard": [sorted(h) for h in t.heard]}) + "\n"
    raise ValueError(f"unknown topology format {fmt!r}")


def derived_sets(t: Topology, k: int) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
    """Return ``(I_k, T_k, R_k)`` for user ``k``."""
    t.check_users([k])
    return t.interferers(k), t.heard[k - 1], t.reach(k)


def relabel(t: Topology, perm: dict[int, int] | list[int]) -> Topology:
    """Apply a user relabeling ``old -> perm[old]`` to receivers and transmitters alike."""
    if isinstance(perm, list):
        mapping = {i + 1: p for i, p in enumerate(perm)}
    else:
        mapping = dict(perm)
    if sorted(mapping) != list(range(1, t.k + 1)) or sorted(mapping.values()) != list(range(1, t.k + 1)):
        raise TopologyError("relabeling must be a permutation of 1..K")
    heard: list[frozenset[int]] = [frozenset()] * t.k
    for rx, tx in enumerate(t.heard, start=1):
        heard[mapping[rx] - 1] = frozenset(mapping[i] for i in tx)
    return Topology(t.k, tuple(heard))


def canonical_code(t: Topology) -> int:
    """Row-major bit code of the lexicographically least relabeled matrix."""
    return kernels.canonical_code(t.k, list(t.heard_masks))


def _from_code(k: int, code: int) -> Topology:
    masks = []
    nbits = k * k
    for r in range(k):
        m = 0
        for c in range(k):
            if code >> (nbits - 1 - (r * k + c)) & 1:
                m |= 1 << c
        masks.append(m)
    return Topology.from_masks(k, masks)


def canonical_form(t: Topology) -> Topology:
    return _from_code(t.k, canonical_code(t))


def is_isomorphic(a: Topology, b: Topology) -> bool:
    return a.k == b.k and canonical_code(a) == canonical_code(b)


def enumerate_topologies(k: int) -> Iterator[Topology]:
    """Yield one canonical representative per isomorphism class, by ascending code."""
    if k < 1:
        raise TopologyError("K must be at least 1")
    for code in kernels.enumerate_canonical_codes(k):
        yield _from_code(k, code)
