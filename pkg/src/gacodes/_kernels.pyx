# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled weight-enumeration and low-weight search kernels.

Words over F_2 and F_3 of length <= 64 are bitsliced into a pair of uint64
masks ``(P, M)`` marking the coordinates equal to 1 and to -1.  Other fields
go through addition tables on uint8 codes.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t, uint8_t, int32_t

cnp.import_array()

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil

ctypedef unsigned long long u64


cdef inline void _add3(u64* aP, u64* aM, u64 bP, u64 bM) noexcept nogil:
    cdef u64 zA = ~(aP[0] | aM[0])
    cdef u64 zB = ~(bP | bM)
    cdef u64 p = (aP[0] & zB) | (bP & zA) | (aM[0] & bM)
    cdef u64 m = (aM[0] & zB) | (bM & zA) | (aP[0] & bP)
    aP[0] = p
    aM[0] = m


cdef inline void _addv(int p, u64* aP, u64* aM, u64 bP, u64 bM, int c) noexcept nogil:
    # a += c * b for c in {1, 2}
    if p == 2:
        aP[0] ^= bP
    elif c == 1:
        _add3(aP, aM, bP, bM)
    else:
        _add3(aP, aM, bM, bP)


def hist_bits(const uint64_t[::1] P, const uint64_t[::1] M, int p, int n, int lo, int hi):
    """Weight histogram of the F_p-projective span of bitsliced rows, leads in ``[lo, hi)``."""
    cdef int m = P.shape[0]
    cdef cnp.ndarray[int64_t, ndim=1] out = np.zeros(n + 1, dtype=np.int64)
    cdef int64_t* hist = <int64_t*> out.data
    cdef int g[128]
    cdef int d[128]
    cdef int i, j, t, r, top = p - 1
    cdef u64 wP, wM
    if m > 128:
        raise ValueError("too many rows")
    with nogil:
        for i in range(lo, hi):
            t = m - 1 - i
            wP = P[i]
            wM = M[i]
            for j in range(t):
                g[j] = 0
                d[j] = 1
            hist[__builtin_popcountll(wP | wM)] += 1
            while True:
                j = 0
                while j < t and (g[j] + d[j] < 0 or g[j] + d[j] > top):
                    d[j] = -d[j]
                    j += 1
                if j == t:
                    break
                g[j] += d[j]
                r = i + 1 + j
                _addv(p, &wP, &wM, P[r], M[r], 1 if d[j] == 1 else 2)
                hist[__builtin_popcountll(wP | wM)] += 1
    return out


def hist_table(const uint8_t[:, ::1] rows, const uint8_t[:, ::1] neg_rows, const uint8_t[:, ::1] add,
               int p, int lo, int hi):
    """Same as :func:`hist_bits` for words stored as uint8 field codes."""
    cdef int m = rows.shape[0], n = rows.shape[1]
    cdef cnp.ndarray[int64_t, ndim=1] out = np.zeros(n + 1, dtype=np.int64)
    cdef int64_t* hist = <int64_t*> out.data
    cdef cnp.ndarray[uint8_t, ndim=1] wbuf = np.zeros(max(n, 1), dtype=np.uint8)
    cdef uint8_t* w = <uint8_t*> wbuf.data
    cdef int g[128]
    cdef int d[128]
    cdef int i, j, t, r, c, wt, top = p - 1
    cdef const uint8_t* src
    if m > 128:
        raise ValueError("too many rows")
    with nogil:
        for i in range(lo, hi):
            t = m - 1 - i
            wt = 0
            for c in range(n):
                w[c] = rows[i, c]
                if w[c]:
                    wt += 1
            for j in range(t):
                g[j] = 0
                d[j] = 1
            hist[wt] += 1
            while True:
                j = 0
                while j < t and (g[j] + d[j] < 0 or g[j] + d[j] > top):
                    d[j] = -d[j]
                    j += 1
                if j == t:
                    break
                g[j] += d[j]
                r = i + 1 + j
                src = &rows[r, 0] if d[j] == 1 else &neg_rows[r, 0]
                wt = 0
                for c in range(n):
                    w[c] = add[w[c], src[c]]
                    wt += w[c] != 0
                hist[wt] += 1
    return out


# ---------------------------------------------------------------------------
# low-weight search


cdef struct Search:
    int p
    int n
    int w
    int lo
    int hi
    int secondary
    const u64* hP
    const u64* hM
    const u64* tP
    const u64* tM
    const u64* kP
    const u64* kM
    const int32_t* kpos
    int nkeys
    int64_t ops
    int pos[128]
    int val[128]


cdef inline bint _key_lt(u64 aP, u64 aM, u64 bP, u64 bM) noexcept nogil:
    return aP < bP or (aP == bP and aM < bM)


cdef int _first_key(Search* s, u64 KP, u64 KM) noexcept nogil:
    cdef int a = 0, b = s.nkeys, mid
    while a < b:
        mid = (a + b) // 2
        if _key_lt(s.kP[mid], s.kM[mid], KP, KM):
            a = mid + 1
        else:
            b = mid
    return a


cdef inline bint _accept(Search* s, int j, int c, u64 TP, u64 TM) noexcept nogil:
    if not s.secondary:
        return True
    _addv(s.p, &TP, &TM, s.tP[j], s.tM[j], c)
    return (TP | TM) != 0


cdef bint _lookup(Search* s, int depth, int start, u64 SP, u64 SM, u64 TP, u64 TM) noexcept nogil:
    # candidates j >= start and c with S + c h_j = 0
    cdef int ia, ib, ja, jb, c
    s.ops += 1
    # c = 1 needs h_j = -S; c = 2 (p = 3) needs h_j = S
    ia = _first_key(s, SM if s.p == 3 else SP, SP if s.p == 3 else 0)
    if s.p == 2 or (SP | SM) == 0:
        while ia < s.nkeys and s.kP[ia] == (SM if s.p == 3 else SP) and s.kM[ia] == (SP if s.p == 3 else 0):
            jb = s.kpos[ia]
            if jb >= start:
                for c in range(1, s.p):
                    if _accept(s, jb, c, TP, TM):
                        s.pos[depth] = jb
                        s.val[depth] = c
                        return True
            ia += 1
        return False
    ib = _first_key(s, SP, SM)
    while True:
        while ia < s.nkeys and s.kP[ia] == SM and s.kM[ia] == SP and s.kpos[ia] < start:
            ia += 1
        while ib < s.nkeys and s.kP[ib] == SP and s.kM[ib] == SM and s.kpos[ib] < start:
            ib += 1
        ja = s.kpos[ia] if (ia < s.nkeys and s.kP[ia] == SM and s.kM[ia] == SP) else -1
        jb = s.kpos[ib] if (ib < s.nkeys and s.kP[ib] == SP and s.kM[ib] == SM) else -1
        if ja < 0 and jb < 0:
            return False
        if jb < 0 or (ja >= 0 and ja < jb):
            if _accept(s, ja, 1, TP, TM):
                s.pos[depth] = ja
                s.val[depth] = 1
                return True
            ia += 1
        else:
            if _accept(s, jb, 2, TP, TM):
                s.pos[depth] = jb
                s.val[depth] = 2
                return True
            ib += 1


cdef bint _search(Search* s, int depth, int start, u64 SP, u64 SM, u64 TP, u64 TM) noexcept nogil:
    cdef int i, c, cmax, end
    cdef u64 sP, sM, tP, tM
    if depth == s.w - 1:
        return _lookup(s, depth, start, SP, SM, TP, TM)
    end = s.n - (s.w - 1 - depth)
    if depth == 0:
        if s.lo > start:
            start = s.lo
        if s.hi < end:
            end = s.hi
    cmax = 1 if depth == 0 else s.p - 1
    for i in range(start, end):
        for c in range(1, cmax + 1):
            sP = SP
            sM = SM
            _addv(s.p, &sP, &sM, s.hP[i], s.hM[i], c)
            tP = TP
            tM = TM
            if s.secondary:
                _addv(s.p, &tP, &tM, s.tP[i], s.tM[i], c)
            s.pos[depth] = i
            s.val[depth] = c
            if _search(s, depth + 1, i + 1, sP, sM, tP, tM):
                return True
    return False


def find_bits(int p, const uint64_t[::1] hP, const uint64_t[::1] hM, const uint64_t[::1] tP,
              const uint64_t[::1] tM, bint secondary, const uint64_t[::1] kP, const uint64_t[::1] kM,
              const int32_t[::1] kpos, int w, int lo, int hi):
    """First word of weight ``w`` (search order) with zero primary syndrome.

    With ``secondary`` set the secondary syndrome must be nonzero.  Returns
    ``(found, positions, values, ops)``.
    """
    cdef Search s
    cdef bint found
    if w < 1 or w > 128:
        raise ValueError("weight out of range")
    s.p = p
    s.n = hP.shape[0]
    s.w = w
    s.lo = lo
    s.hi = hi
    s.secondary = secondary
    s.hP = <const u64*> &hP[0] if s.n else NULL
    s.hM = <const u64*> &hM[0] if s.n else NULL
    s.tP = <const u64*> &tP[0] if s.n else NULL
    s.tM = <const u64*> &tM[0] if s.n else NULL
    s.kP = <const u64*> &kP[0] if s.n else NULL
    s.kM = <const u64*> &kM[0] if s.n else NULL
    s.kpos = &kpos[0] if s.n else NULL
    s.nkeys = s.n
    s.ops = 0
    with nogil:
        if w == 1:
            found = _lookup(&s, 0, lo, 0, 0, 0, 0) if lo == 0 else False
        else:
            found = _search(&s, 0, 0, 0, 0, 0, 0)
    if not found:
        return False, None, None, int(s.ops)
    pos = np.array([s.pos[i] for i in range(w)], dtype=np.int64)
    val = np.array([s.val[i] for i in range(w)], dtype=np.int64)
    return True, pos, val, int(s.ops)
