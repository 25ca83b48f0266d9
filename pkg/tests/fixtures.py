"""Named topologies shared across test modules."""

import random

from timcm import Topology

SIX_USER = Topology.from_matrix(
    [
        [1, 0, 0, 1, 0, 0],
        [1, 1, 1, 1, 0, 0],
        [1, 0, 1, 0, 0, 0],
        [0, 0, 1, 1, 1, 0],
        [0, 0, 1, 0, 1, 0],
        [0, 0, 1, 0, 0, 1],
    ]
)

FIVE_USER = Topology.from_interference(5, {1: {3, 5}, 4: {1, 2}})

# slot pattern with jammers for a five-user network
FIVE_USER_JAMMED = Topology.from_interference(5, {1: {2, 3, 4}, 2: {1, 3, 5}, 3: {5}, 4: {5}})

# receivers 1 and 2 hear each other, I_2 - {1} inside I_1 - {2}
PAIR_BLOCKED = Topology.from_interference(4, {1: {2, 3, 4}, 2: {1, 3}})

# three-user classes with known values
ONE_RX_TWO_IF = Topology.from_interference(3, {2: {1, 3}})
CHAIN_GAP = Topology.from_interference(3, {2: {1}, 3: {1, 2}})
MUTUAL_FULL = Topology.from_interference(3, {2: {1, 3}, 3: {1, 2}})


def random_topology(rng: random.Random, k: int, p: float | None = None) -> Topology:
    p = rng.uniform(0.1, 0.6) if p is None else p
    rows = [[1 if i == j or rng.random() < p else 0 for i in range(k)] for j in range(k)]
    return Topology.from_matrix(rows)


def random_feasible(rng: random.Random, k: int) -> Topology:
    from timcm import check_feasibility

    while True:
        t = random_topology(rng, k, rng.uniform(0.1, 0.45))
        if check_feasibility(t).feasible:
            return t
