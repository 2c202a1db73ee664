"""Pure numpy versions of the compiled kernels, with identical results and search order."""

from __future__ import annotations

import itertools
import math

import numpy as np

_BLOCK = 1 << 15


def _popcount(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.uint64)
    out = np.zeros(x.shape, dtype=np.int64)
    for shift in range(0, 64, 8):
        out += _POP8[((x >> np.uint64(shift)) & np.uint64(0xFF)).astype(np.int64)]
    return out


_POP8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)


def _add3(aP, aM, bP, bM):
    zA = ~(aP | aM)
    zB = ~(bP | bM)
    return (aP & zB) | (bP & zA) | (aM & bM), (aM & zB) | (bM & zA) | (aP & bP)


def _addv(p, aP, aM, bP, bM, c):
    """``a + c b`` for bitsliced words; ``c`` may be an array of 1s and 2s."""
    if p == 2:
        return aP ^ bP, aM
    c = np.asarray(c)
    xP = np.where(c == 1, bP, bM)
    xM = np.where(c == 1, bM, bP)
    return _add3(aP, aM, xP, xM)


def _digit_words(p: int, t: int, start: int, stop: int) -> np.ndarray:
    """Base-``p`` digit vectors of ``start..stop-1``, least significant first."""
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((len(idx), t), dtype=np.int64)
    for j in range(t):
        out[:, j] = idx % p
        idx //= p
    return out


def hist_bits(P, M, p: int, n: int, lo: int, hi: int) -> np.ndarray:
    P = np.asarray(P, dtype=np.uint64)
    M = np.asarray(M, dtype=np.uint64)
    m = len(P)
    hist = np.zeros(n + 1, dtype=np.int64)
    for i in range(lo, hi):
        t = m - 1 - i
        total = p**t
        for s in range(0, total, _BLOCK):
            D = _digit_words(p, t, s, min(total, s + _BLOCK))
            wP = np.full(len(D), P[i], dtype=np.uint64)
            wM = np.full(len(D), M[i], dtype=np.uint64)
            for j in range(t):
                for c in range(1, p):
                    sel = D[:, j] == c
                    if np.any(sel):
                        a, b = _addv(p, wP[sel], wM[sel], P[i + 1 + j], M[i + 1 + j], c)
                        wP[sel], wM[sel] = a, b
            hist += np.bincount(_popcount(wP | wM), minlength=n + 1)
    return hist


def hist_table(rows, neg_rows, add, p: int, lo: int, hi: int) -> np.ndarray:
    rows = np.asarray(rows, dtype=np.int64)
    add = np.asarray(add, dtype=np.int64)
    m, n = rows.shape
    hist = np.zeros(n + 1, dtype=np.int64)
    # c * row for c in F_p via repeated addition
    mult = [np.zeros_like(rows)]
    for _ in range(1, p):
        mult.append(add[mult[-1], rows])
    mult = np.stack(mult)
    for i in range(lo, hi):
        t = m - 1 - i
        total = p**t
        for s in range(0, total, _BLOCK):
            D = _digit_words(p, t, s, min(total, s + _BLOCK))
            W = np.broadcast_to(rows[i], (len(D), n)).copy()
            for j in range(t):
                W = add[W, mult[D[:, j], i + 1 + j]]
            hist += np.bincount(np.count_nonzero(W, axis=1), minlength=n + 1)
    return hist


# ---------------------------------------------------------------------------
# low-weight search


def _prefix_blocks(n: int, w: int, p: int, lo: int, hi: int):
    """Yield ``(positions, values)`` arrays of search prefixes in search order.

    A prefix fixes ``w - 1`` coordinates; the first value is always 1 and the
    order is lexicographic on ``(i1, i2, c2, i3, c3, ...)``.
    """
    L = w - 1

    def count(depth, start):
        rest = L - depth
        return math.comb(max(n - 1 - start + 1, 0), rest) * (p - 1) ** rest

    def materialise(fixed_pos, fixed_val, start):
        depth = len(fixed_pos)
        rest = L - depth
        last = n - 1  # the final coordinate of the word lies after the prefix
        combos = np.array(list(itertools.combinations(range(start, last), rest)), dtype=np.int64).reshape(-1, rest)
        if depth == 0 and rest:
            combos = combos[(combos[:, 0] >= lo) & (combos[:, 0] < hi)]
        vals = np.array(list(itertools.product(range(1, p), repeat=rest)), dtype=np.int64).reshape(-1, rest)
        if depth == 0 and rest:
            vals = vals[vals[:, 0] == 1]
        C = np.repeat(combos, len(vals), axis=0)
        V = np.tile(vals, (len(combos), 1))
        keys = []
        for t in range(rest - 1, -1, -1):
            keys += [V[:, t], C[:, t]]
        order = np.lexsort(keys) if keys else np.arange(len(C))
        C, V = C[order], V[order]
        pos = np.concatenate([np.tile(np.array(fixed_pos, dtype=np.int64), (len(C), 1)), C], axis=1)
        val = np.concatenate([np.tile(np.array(fixed_val, dtype=np.int64), (len(C), 1)), V], axis=1)
        return pos, val

    def walk(fixed_pos, fixed_val, start):
        depth = len(fixed_pos)
        if depth == L or count(depth, start) <= _BLOCK:
            pos, val = materialise(fixed_pos, fixed_val, start)
            if len(pos):
                yield pos, val
            return
        end = n - (L - depth)
        rng = range(max(start, lo), min(end, hi)) if depth == 0 else range(start, end)
        cs = (1,) if depth == 0 else range(1, p)
        for i in rng:
            for c in cs:
                yield from walk(fixed_pos + [i], fixed_val + [c], i + 1)

    if L == 0:
        if lo == 0:
            yield np.zeros((1, 0), dtype=np.int64), np.zeros((1, 0), dtype=np.int64)
        return
    yield from walk([], [], 0)


def find_bits(p, hP, hM, tP, tM, secondary, kP, kM, kpos, w, lo, hi):
    """numpy counterpart of the compiled search (the sorted key index is unused here)."""
    hP = np.asarray(hP, dtype=np.uint64)
    hM = np.asarray(hM, dtype=np.uint64)
    tP = np.asarray(tP, dtype=np.uint64)
    tM = np.asarray(tM, dtype=np.uint64)
    n = len(hP)
    ops = 0
    cs = list(range(1, p))
    for pos, val in _prefix_blocks(n, w, p, lo, hi):
        B = len(pos)
        SP = np.zeros(B, dtype=np.uint64)
        SM = np.zeros(B, dtype=np.uint64)
        TP = np.zeros(B, dtype=np.uint64)
        TM = np.zeros(B, dtype=np.uint64)
        for t in range(pos.shape[1]):
            SP, SM = _addv(p, SP, SM, hP[pos[:, t]], hM[pos[:, t]], val[:, t])
            if secondary:
                TP, TM = _addv(p, TP, TM, tP[pos[:, t]], tM[pos[:, t]], val[:, t])
        start = pos[:, -1] + 1 if pos.shape[1] else np.zeros(B, dtype=np.int64)
        j = np.arange(n)
        hit = np.zeros((B, n, len(cs)), dtype=bool)
        for ci, c in enumerate(cs):
            xP, xM = _addv(p, SP[:, None], SM[:, None], hP[None, :], hM[None, :], c)
            ok = ((xP | xM) == 0) & (j[None, :] >= start[:, None])
            if secondary:
                yP, yM = _addv(p, TP[:, None], TM[:, None], tP[None, :], tM[None, :], c)
                ok &= (yP | yM) != 0
            hit[:, :, ci] = ok
        flat = hit.reshape(B, -1)
        anyhit = flat.any(axis=1)
        if anyhit.any():
            b = int(np.argmax(anyhit))
            jc = int(np.argmax(flat[b]))
            ops += b + 1
            jj, ci = divmod(jc, len(cs))
            return True, np.append(pos[b], jj), np.append(val[b], cs[ci]), ops
        ops += B
    return False, None, None, ops


def find_table(H, T, add, mul, q: int, w: int, lo: int, hi: int):
    """Search over an arbitrary F_q (codes ``0..q-1``) with addition and multiplication tables.

    ``H`` is ``(n, r1)``, ``T`` is ``(n, r2)`` or None.  Same order and result
    conventions as :func:`find_bits`, with values running over all nonzero codes.
    """
    H = np.asarray(H, dtype=np.int64)
    add = np.asarray(add, dtype=np.int64)
    mul = np.asarray(mul, dtype=np.int64)
    n = H.shape[0]
    cs = np.arange(1, q)
    # c * column for every c
    HC = mul[cs[:, None, None], H[None, :, :]]  # (q-1, n, r1)
    TC = mul[cs[:, None, None], np.asarray(T, dtype=np.int64)[None, :, :]] if T is not None else None
    ops = 0
    for pos, val in _prefix_blocks(n, w, q, lo, hi):
        B = len(pos)
        S = np.zeros((B, H.shape[1]), dtype=np.int64)
        U = np.zeros((B, TC.shape[2]), dtype=np.int64) if TC is not None else None
        for t in range(pos.shape[1]):
            S = add[S, HC[val[:, t] - 1, pos[:, t]]]
            if U is not None:
                U = add[U, TC[val[:, t] - 1, pos[:, t]]]
        start = pos[:, -1] + 1 if pos.shape[1] else np.zeros(B, dtype=np.int64)
        j = np.arange(n)
        X = add[S[:, None, None, :], HC.transpose(1, 0, 2)[None]]  # (B, n, q-1, r1)
        ok = ~np.any(X != 0, axis=3) & (j[None, :, None] >= start[:, None, None])
        if U is not None:
            Y = add[U[:, None, None, :], TC.transpose(1, 0, 2)[None]]
            ok &= np.any(Y != 0, axis=3)
        flat = ok.reshape(B, -1)
        anyhit = flat.any(axis=1)
        if anyhit.any():
            b = int(np.argmax(anyhit))
            jc = int(np.argmax(flat[b]))
            ops += b + 1
            jj, ci = divmod(jc, q - 1)
            return True, np.append(pos[b], jj), np.append(val[b], int(cs[ci])), ops
        ops += B
    return False, None, None, ops
