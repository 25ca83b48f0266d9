# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Mirrors ``_pykernels`` exactly; see there for semantics."""

from itertools import permutations

cdef enum:
    MAXK = 32
    MAXOPT = 4096
    MAXCANON = 7      # 49-bit codes fit in 64 bits
    MAXPERM = 5040 * 7

ctypedef unsigned long long u64


cdef inline int popcount(u64 x) nogil:
    cdef int n = 0
    while x:
        x &= x - 1
        n += 1
    return n


cdef class _Canon:
    cdef int k
    cdef int nperm
    cdef int perm[MAXPERM]
    cdef u64 rows[MAXCANON]
    cdef int pops[MAXCANON]

    def __init__(self, int k):
        cdef int i = 0
        self.k = k
        for order in permutations(range(k)):
            for c in order:
                self.perm[i] = c
                i += 1
        self.nperm = i // k if k else 0

    cdef int least_pop(self):
        cdef int r, m = self.k + 1
        for r in range(self.k):
            self.pops[r] = popcount(self.rows[r])
            if self.pops[r] < m:
                m = self.pops[r]
        return m

    cdef u64 min_code(self):
        cdef int p, r, c, least, nb = self.k * self.k
        cdef int* o
        cdef u64 best = <u64>(-1), code, bit, row
        cdef int pos
        cdef bint abort
        least = self.least_pop()
        for p in range(self.nperm):
            o = &self.perm[p * self.k]
            if self.pops[o[0]] != least:
                continue
            code = 0
            abort = False
            pos = nb - 1
            for r in range(self.k):
                row = self.rows[o[r]]
                for c in range(self.k):
                    bit = (row >> o[c]) & 1
                    code |= bit << pos
                    pos -= 1
                # compare the fixed high part against best
                if (code >> (pos + 1)) > (best >> (pos + 1)):
                    abort = True
                    break
            if not abort and code < best:
                best = code
        return best

    cdef bint is_min(self, u64 code):
        cdef int p, r, c, least, nb = self.k * self.k
        cdef int* o
        cdef u64 cand, want, row
        cdef int pos
        least = self.least_pop()
        for p in range(self.nperm):
            o = &self.perm[p * self.k]
            if self.pops[o[0]] != least:
                continue
            pos = nb - 1
            for r in range(self.k):
                row = self.rows[o[r]]
                for c in range(self.k):
                    cand = (row >> o[c]) & 1
                    want = (code >> pos) & 1
                    if cand != want:
                        if cand < want:
                            return False
                        pos = -100
                        break
                    pos -= 1
                if pos < -1:
                    break
        return True


def canonical_code(int k, rows):
    if k > MAXCANON:
        from ._pykernels import canonical_code as slow
        return slow(k, rows)
    cdef _Canon cn = _Canon(k)
    cdef int r
    for r in range(k):
        cn.rows[r] = rows[r]
    return cn.min_code()


def enumerate_canonical_codes(int k):
    if k > MAXCANON:
        from ._pykernels import enumerate_canonical_codes as slow
        return slow(k)
    cdef _Canon cn = _Canon(k)
    cdef int r, c, bit, n = 0
    cdef int offr[MAXCANON * MAXCANON]
    cdef int offc[MAXCANON * MAXCANON]
    cdef u64 a, code, diag = 0, total
    for r in range(k):
        diag |= (<u64>1) << (k * k - 1 - (r * k + r))
        for c in range(k):
            if r != c:
                offr[n] = r
                offc[n] = c
                n += 1
    out = []
    total = (<u64>1) << n
    a = 0
    while a < total:
        for r in range(k):
            cn.rows[r] = (<u64>1) << r
        code = diag
        for bit in range(n):
            if (a >> (n - 1 - bit)) & 1:
                r = offr[bit]
                c = offc[bit]
                cn.rows[r] |= (<u64>1) << c
                code |= (<u64>1) << (k * k - 1 - (r * k + c))
        if cn.is_min(code):
            out.append(code)
        a += 1
    return out


cdef inline bint lex_less(u64 a, u64 b) nogil:
    cdef u64 la, lb
    while a and b:
        la = a & (~a + 1)
        lb = b & (~b + 1)
        if la != lb:
            return la < lb
        a ^= la
        b ^= lb
    return b != 0


cdef class _Search:
    cdef int k
    cdef int tlist[MAXK * MAXK]
    cdef int tlen[MAXK]
    cdef int s1_lo[MAXK]
    cdef int s1_hi[MAXK]
    cdef int s2_lo[MAXK]
    cdef int s2_hi[MAXK]
    cdef int opt_slot[MAXOPT]
    cdef long long opt_den[MAXOPT]
    cdef long long suffix[MAXK + 1]
    cdef int cnt[MAXK]
    cdef int slots[MAXK]
    cdef long long a, excess, den
    cdef u64 s1, s2
    cdef int kinds[MAXK]
    cdef int picks[MAXK]
    cdef bint found
    cdef long long bnum, bden
    cdef u64 bs1, bs2
    cdef int bkinds[MAXK]
    cdef int bpicks[MAXK]

    cdef inline void add_slot(self, int v):
        if self.cnt[v] > self.slots[v]:
            self.excess -= 1
        self.slots[v] += 1

    cdef inline void drop_slot(self, int v):
        self.slots[v] -= 1
        if self.cnt[v] > self.slots[v]:
            self.excess += 1

    cdef void leaf(self):
        cdef long long num
        cdef int i
        cdef bint take = False
        if not self.s1:
            return
        num = self.a + self.excess
        if not self.found or num * self.bden < self.bnum * self.den:
            take = True
        elif num * self.bden == self.bnum * self.den:
            if self.s1 != self.bs1:
                take = lex_less(self.s1, self.bs1)
            else:
                take = lex_less(self.s2, self.bs2)
        if take:
            self.found = True
            self.bnum = num
            self.bden = self.den
            self.bs1 = self.s1
            self.bs2 = self.s2
            for i in range(self.k):
                self.bkinds[i] = self.kinds[i]
                self.bpicks[i] = self.picks[i]

    cdef void rec(self, int r):
        cdef long long lb
        cdef int i, v, j
        cdef u64 bit
        if self.found:
            lb = self.a + self.excess - (self.k - r)
            if lb < 1:
                lb = 1
            if lb * self.bden > self.bnum * (self.den + self.suffix[r]):
                return
        if r == self.k:
            self.leaf()
            return
        bit = (<u64>1) << r
        self.kinds[r] = 0
        self.picks[r] = 0
        self.rec(r + 1)

        self.kinds[r] = 1
        self.a += 1
        self.s1 |= bit
        for i in range(self.s1_lo[r], self.s1_hi[r]):
            self.picks[r] = i - self.s1_lo[r]
            self.den += self.opt_den[i]
            v = self.opt_slot[i]
            if v >= 0:
                self.add_slot(v)
            self.rec(r + 1)
            if v >= 0:
                self.drop_slot(v)
            self.den -= self.opt_den[i]
        self.a -= 1
        self.s1 &= ~bit

        self.kinds[r] = 2
        self.s2 |= bit
        for j in range(self.tlen[r]):
            v = self.tlist[r * MAXK + j]
            if self.cnt[v] >= self.slots[v]:
                self.excess += 1
            self.cnt[v] += 1
        for i in range(self.s2_lo[r], self.s2_hi[r]):
            self.picks[r] = i - self.s2_lo[r]
            self.den += self.opt_den[i]
            v = self.opt_slot[i]
            if v >= 0:
                self.add_slot(v)
            self.rec(r + 1)
            if v >= 0:
                self.drop_slot(v)
            self.den -= self.opt_den[i]
        for j in range(self.tlen[r]):
            v = self.tlist[r * MAXK + j]
            self.cnt[v] -= 1
            if self.cnt[v] >= self.slots[v]:
                self.excess -= 1
        self.s2 &= ~bit
        self.kinds[r] = 0
        self.picks[r] = 0


def ratio_search(int k, tmasks, s1_opts, s2_opts):
    if k > MAXK:
        from ._pykernels import ratio_search as slow
        return slow(k, tmasks, s1_opts, s2_opts)
    cdef _Search s = _Search()
    cdef int r, v, n = 0, idx = 0
    cdef long long m
    s.k = k
    for r in range(k):
        n = 0
        for v in range(k):
            if (tmasks[r] >> v) & 1:
                s.tlist[r * MAXK + n] = v
                n += 1
        s.tlen[r] = n
        s.cnt[r] = 0
        s.slots[r] = 0
        s.kinds[r] = 0
        s.picks[r] = 0
        s.s1_lo[r] = idx
        for slot, d in s1_opts[r]:
            if idx >= MAXOPT:
                raise ValueError("too many options for compiled search")
            s.opt_slot[idx] = slot
            s.opt_den[idx] = d
            idx += 1
        s.s1_hi[r] = idx
        s.s2_lo[r] = idx
        for slot, d in s2_opts[r]:
            if idx >= MAXOPT:
                raise ValueError("too many options for compiled search")
            s.opt_slot[idx] = slot
            s.opt_den[idx] = d
            idx += 1
        s.s2_hi[r] = idx
    s.suffix[k] = 0
    for r in range(k - 1, -1, -1):
        m = 0
        for idx in range(s.s1_lo[r], s.s2_hi[r]):
            if s.opt_den[idx] > m:
                m = s.opt_den[idx]
        s.suffix[r] = s.suffix[r + 1] + m
    s.a = 0
    s.excess = 0
    s.den = 0
    s.s1 = 0
    s.s2 = 0
    s.found = False
    s.rec(0)
    if not s.found:
        return None
    return (
        s.bnum,
        s.bden,
        [s.bkinds[r] for r in range(k)],
        [s.bpicks[r] for r in range(k)],
    )
