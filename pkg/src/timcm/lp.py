"""Exact rational simplex for ``max c.x  s.t.  A x <= b, x >= 0`` with ``b >= 0``.

The origin is feasible under ``b >= 0``, so no phase one is needed. Bland's
rule (lowest-index entering and leaving variable) rules out cycling on the
degenerate vertices these covering LPs are full of.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class UnboundedLP(ArithmeticError):
    pass


def simplex_max(
    c: Sequence[Fraction | int],
    a: Sequence[Sequence[Fraction | int]],
    b: Sequence[Fraction | int],
) -> tuple[Fraction, list[Fraction]]:
    m = len(a)
    n = len(c)
    if any(Fraction(v) < 0 for v in b):
        raise ValueError("right-hand side must be nonnegative")
    # tableau rows: [A | I | b]; basis holds the variable index of each row
    rows = [
        [Fraction(v) for v in a[i]] + [Fraction(int(i == j)) for j in range(m)] + [Fraction(b[i])]
        for i in range(m)
    ]
    obj = [-Fraction(v) for v in c] + [Fraction(0)] * m + [Fraction(0)]
    basis = [n + i for i in range(m)]
    width = n + m

    while True:
        entering = next((j for j in range(width) if obj[j] < 0), None)
        if entering is None:
            break
        leaving = None
        best = None
        for i in range(m):
            coef = rows[i][entering]
            if coef > 0:
                ratio = rows[i][-1] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best = ratio
                    leaving = i
        if leaving is None:
            raise UnboundedLP("objective is unbounded")
        piv = rows[leaving][entering]
        prow = [v / piv for v in rows[leaving]]
        rows[leaving] = prow
        for i in range(m):
            if i != leaving and rows[i][entering]:
                f = rows[i][entering]
                rows[i] = [v - f * p for v, p in zip(rows[i], prow)]
        f = obj[entering]
        obj = [v - f * p for v, p in zip(obj, prow)]
        basis[leaving] = entering

    x = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = rows[i][-1]
    return obj[-1], x


def max_min_coverage(sets: Sequence[int], k: int) -> tuple[Fraction, list[Fraction]]:
    """Best fractional schedule over ``sets`` (user bitmasks).

    Solves ``max lam`` subject to ``sum x = 1`` and every user being covered
    by weight at least ``lam``. Returns ``(lam, x)`` with ``sum(x) == 1``.
    """
    n = len(sets)
    if n == 0:
        raise ValueError("need at least one set")
    # variables: x_0..x_{n-1}, lam. The budget row is written as <= 1; any
    # leftover weight is parked on a set afterwards, which cannot lower lam.
    a = [[1] * n + [0]]
    b = [1]
    for user in range(k):
        a.append([-1 if s >> user & 1 else 0 for s in sets] + [1])
        b.append(0)
    c = [0] * n + [1]
    value, sol = simplex_max(c, a, b)
    x = sol[:n]
    spare = 1 - sum(x)
    if spare:
        x[0] += spare
    return value, x
