"""Compiled core vs pure-Python fallback on the two hot kernels.

    python benchmarks/bench_kernels.py [--max-k 8] [--repeat 3] [--enum-k 4]

Prints one line per (kernel, K) with the best-of-``repeat`` wall time of
each backend and the speedup.
"""

from __future__ import annotations

import argparse
import random
import time

from timcm import Topology
from timcm.kernels import compiled_backend, python_backend


def _random_topology(rng: random.Random, k: int) -> Topology:
    p = rng.uniform(0.15, 0.5)
    return Topology.from_matrix([[1 if i == j or rng.random() < p else 0 for i in range(k)] for j in range(k)])


def _options(t: Topology):
    s1, s2 = [], []
    for r in range(1, t.k + 1):
        inter = sorted(t.interferers(r))
        if inter:
            s1.append([(v - 1, 2) for v in inter])
            s2.append([(v - 1, 1) for v in inter])
        else:
            s1.append([(-1, 1)])
            s2.append([(-1, 0)])
    return s1, s2


def _best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_enumeration(k: int, repeat: int):
    py = _best_of(lambda: list(python_backend.enumerate_canonical_codes(k)), repeat)
    c = _best_of(lambda: list(compiled_backend.enumerate_canonical_codes(k)), repeat)
    return py, c


def bench_search(k: int, repeat: int, samples: int, seed: int):
    rng = random.Random(seed + k)
    cases = []
    for _ in range(samples):
        t = _random_topology(rng, k)
        cases.append((t.k, list(t.heard_masks), *_options(t)))

    def run(backend):
        for args in cases:
            backend.ratio_search(*args)

    return _best_of(lambda: run(python_backend), repeat), _best_of(lambda: run(compiled_backend), repeat)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-k", type=int, default=8, help="largest K for the ratio search")
    ap.add_argument("--enum-k", type=int, default=4, help="largest K for canonical enumeration")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--samples", type=int, default=5, help="random topologies per K")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if compiled_backend is None:
        raise SystemExit("compiled extension not built; run `pip install -e . --no-build-isolation`")

    print(f"{'kernel':<22}{'K':>3}{'python s':>12}{'compiled s':>13}{'speedup':>10}")
    for k in range(2, args.enum_k + 1):
        py, c = bench_enumeration(k, args.repeat)
        print(f"{'canonical enumeration':<22}{k:>3}{py:>12.4f}{c:>13.4f}{py / c:>9.1f}x")
    for k in range(4, args.max_k + 1):
        py, c = bench_search(k, args.repeat, args.samples, args.seed)
        print(f"{'ratio search':<22}{k:>3}{py:>12.4f}{c:>13.4f}{py / c:>9.1f}x")


if __name__ == "__main__":
    main()
