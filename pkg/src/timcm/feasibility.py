"""Zero/positive symmetric SDoF decision with an explicit violating pair."""

from __future__ import annotations

from dataclasses import dataclass

from .topology import Topology

__all__ = ["FeasibilityVerdict", "check_feasibility", "pair_blocks"]

# direction names: which containment held for the pair (i, j)
FORWARD = "I_j-{i} <= I_i-{j}"
BACKWARD = "I_i-{j} <= I_j-{i}"


@dataclass(frozen=True)
class FeasibilityVerdict:
    feasible: bool
    witness: tuple[int, int, str] | None = None


def pair_blocks(t: Topology, i: int, j: int) -> str | None:
    """Return the containment direction if the pair ``(i, j)`` forces zero SDoF."""
    ii = t.interferers(i)
    ij = t.interferers(j)
    if i not in ij or j not in ii:
        return None
    a = ij - {i}
    b = ii - {j}
    if a <= b:
        return FORWARD
    if b <= a:
        return BACKWARD
    return None


def check_feasibility(t: Topology) -> FeasibilityVerdict:
    for i in range(1, t.k + 1):
        for j in range(i + 1, t.k + 1):
            direction = pair_blocks(t, i, j)
            if direction is not None:
                return FeasibilityVerdict(False, (i, j, direction))
    return FeasibilityVerdict(True)
