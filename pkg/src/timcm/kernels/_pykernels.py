"""Pure-Python kernels. Same interface and results as ``_ckernels``."""

from __future__ import annotations

from itertools import permutations


def _code(k: int, rows: list[int], order: tuple[int, ...]) -> int:
    code = 0
    for r in range(k):
        row = rows[order[r]]
        for c in range(k):
            code = (code << 1) | (row >> order[c] & 1)
    return code


def _candidate_orders(k: int, rows: list[int]):
    """Relabelings that can reach the least code.

    The new first row reads 1 (its diagonal) and then its entries in new
    column order, so a minimizer leads with a row of least popcount and
    places that row's unheard transmitters before its heard ones.
    """
    pops = [bin(r).count("1") for r in rows]
    least = min(pops)
    for first in range(k):
        if pops[first] != least:
            continue
        row = rows[first]
        zeros = [c for c in range(k) if c != first and not row >> c & 1]
        ones = [c for c in range(k) if c != first and row >> c & 1]
        for pz in permutations(zeros):
            for po in permutations(ones):
                yield (first,) + pz + po


def canonical_code(k: int, rows: list[int]) -> int:
    return min(_code(k, rows, order) for order in _candidate_orders(k, rows))


def _is_canonical(k: int, rows: list[int], code: int) -> bool:
    for order in _candidate_orders(k, rows):
        if _code(k, rows, order) < code:
            return False
    return True


def enumerate_canonical_codes(k: int) -> list[int]:
    offdiag = [(r, c) for r in range(k) for c in range(k) if r != c]
    n = len(offdiag)
    diag = 0
    for r in range(k):
        diag |= 1 << (k * k - 1 - (r * k + r))
    out = []
    for a in range(1 << n):
        rows = [1 << r for r in range(k)]
        code = diag
        for bit, (r, c) in enumerate(offdiag):
            if a >> (n - 1 - bit) & 1:
                rows[r] |= 1 << c
                code |= 1 << (k * k - 1 - (r * k + c))
        if _is_canonical(k, rows, code):
            out.append(code)
    return out


def _lex_less(a: int, b: int) -> bool:
    """Sorted-tuple order on bitmask sets (a proper prefix sorts first)."""
    while a and b:
        la = a & -a
        lb = b & -b
        if la != lb:
            return la < lb
        a ^= la
        b ^= lb
    return b != 0


def ratio_search(k, tmasks, s1_opts, s2_opts):
    """Minimize ``(|S1| + excess) / den`` over disjoint receiver roles.

    Each receiver is out, in S1 with one of ``s1_opts[r]``, or in S2 with one
    of ``s2_opts[r]``. An option is ``(slot, den_add)``: ``slot`` is the
    0-based index its cancellation slot removes (``-1`` for no slot).
    S2 receivers add every member of ``tmasks[r]`` to the occurrence
    multiset; ``excess`` counts occurrences left after each slot cancels at
    most one matching occurrence. S1 must be nonempty.

    Returns ``(num, den, kinds, picks)`` with ``kinds[r]`` in {0, 1, 2}
    (out, S1, S2) and ``picks[r]`` the option index, or ``None``.
    """
    cnt = [0] * k
    slots = [0] * k
    tmembers = [[v for v in range(k) if tmasks[r] >> v & 1] for r in range(k)]
    suffix = [0] * (k + 1)
    for r in range(k - 1, -1, -1):
        m = 0
        for _, d in list(s1_opts[r]) + list(s2_opts[r]):
            m = max(m, d)
        suffix[r] = suffix[r + 1] + m
    kinds = [0] * k
    picks = [0] * k
    best = [None]  # (num, den, s1, s2, kinds, picks)
    st = {"a": 0, "excess": 0, "den": 0, "s1": 0, "s2": 0}

    def add_slot(v):
        if cnt[v] > slots[v]:
            st["excess"] -= 1
        slots[v] += 1

    def drop_slot(v):
        slots[v] -= 1
        if cnt[v] > slots[v]:
            st["excess"] += 1

    def rec(r):
        a = st["a"]
        excess = st["excess"]
        den = st["den"]
        b = best[0]
        if b is not None:
            lb = max(1, a + excess - (k - r))
            if lb * b[1] > b[0] * (den + suffix[r]):
                return
        if r == k:
            if not st["s1"]:
                return
            num = a + excess
            if b is None or num * b[1] < b[0] * den:
                best[0] = (num, den, st["s1"], st["s2"], kinds[:], picks[:])
            elif num * b[1] == b[0] * den:
                s1, s2 = st["s1"], st["s2"]
                if (s1 != b[2] and _lex_less(s1, b[2])) or (s1 == b[2] and _lex_less(s2, b[3])):
                    best[0] = (num, den, s1, s2, kinds[:], picks[:])
            return
        bit = 1 << r
        kinds[r] = 0
        rec(r + 1)
        kinds[r] = 1
        st["a"] += 1
        st["s1"] |= bit
        for i, (v, d) in enumerate(s1_opts[r]):
            picks[r] = i
            st["den"] += d
            if v >= 0:
                add_slot(v)
            rec(r + 1)
            if v >= 0:
                drop_slot(v)
            st["den"] -= d
        st["a"] -= 1
        st["s1"] &= ~bit
        kinds[r] = 2
        st["s2"] |= bit
        for v in tmembers[r]:
            if cnt[v] >= slots[v]:
                st["excess"] += 1
            cnt[v] += 1
        for i, (v, d) in enumerate(s2_opts[r]):
            picks[r] = i
            st["den"] += d
            if v >= 0:
                add_slot(v)
            rec(r + 1)
            if v >= 0:
                drop_slot(v)
            st["den"] -= d
        for v in tmembers[r]:
            cnt[v] -= 1
            if cnt[v] >= slots[v]:
                st["excess"] -= 1
        st["s2"] &= ~bit
        kinds[r] = 0
        picks[r] = 0

    rec(0)
    if best[0] is None:
        return None
    num, den, _, _, bk, bp = best[0]
    return num, den, bk, bp
