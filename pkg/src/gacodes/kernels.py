"""Hot loops of the distance computations, with backend selection.

The compiled extension ``_kernels`` is used when it imports; otherwise the
numpy module ``_kernels_py`` takes over.  Both give identical results,
including the witness returned by a search.  ``GACODES_KERNELS=numpy`` forces
the fallback.
"""

from __future__ import annotations

import contextlib
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _kernels_py
from .gf import GF

try:  # pragma: no cover - depends on the build
    from . import _kernels as _native
except ImportError:  # pragma: no cover
    _native = None

__all__ = [
    "BACKEND",
    "native_available",
    "use_backend",
    "pack_bits",
    "weight_histogram",
    "find_word",
    "search_prefix_count",
]

native_available = _native is not None
_impl = _native if (native_available and os.environ.get("GACODES_KERNELS", "") != "numpy") else _kernels_py
BACKEND = "cython" if _impl is _native else "numpy"


@contextlib.contextmanager
def use_backend(name: str):
    """Temporarily switch between ``"cython"`` and ``"numpy"``."""
    global _impl, BACKEND
    if name == "cython" and not native_available:
        raise RuntimeError("the compiled kernels are not built")
    old = (_impl, BACKEND)
    _impl, BACKEND = (_native, "cython") if name == "cython" else (_kernels_py, "numpy")
    try:
        yield
    finally:
        _impl, BACKEND = old


def _bits_ok(F: GF, *lengths: int) -> bool:
    return F.k == 1 and F.p in (2, 3) and all(L <= 64 for L in lengths)


def pack_bits(F: GF, A) -> tuple[np.ndarray, np.ndarray]:
    """Pack the rows of a matrix over F_2 or F_3 into ``(P, M)`` uint64 masks."""
    A = np.asarray(A, dtype=np.int64)
    if A.ndim == 1:
        A = A[None, :]
    if A.shape[1] > 64:
        raise ValueError("rows longer than 64 cannot be packed")
    weights = np.left_shift(np.uint64(1), np.arange(A.shape[1], dtype=np.uint64))
    P = ((A == 1).astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)
    M = ((A == F.p - 1).astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64) if F.p == 3 else np.zeros(len(A), np.uint64)
    return np.ascontiguousarray(P, dtype=np.uint64), np.ascontiguousarray(M, dtype=np.uint64)


def _tables(F: GF):
    els = np.arange(F.order, dtype=np.int64)
    add = np.asarray(F.add(els[:, None], els[None, :]), dtype=np.uint8)
    mul = np.asarray(F.mul(els[:, None], els[None, :]), dtype=np.uint8)
    return add, mul


def _prime_span_rows(F: GF, G: np.ndarray) -> np.ndarray:
    """Rows spanning the code over F_p: ``basis_j * g_i``."""
    if F.k == 1:
        return np.asarray(G, dtype=np.int64)
    basis = [F.from_coeffs([int(i == j) for i in range(F.k)]) for j in range(F.k)]
    return np.concatenate([np.asarray(F.mul(b, G), dtype=np.int64) for b in basis])


def _split(lo: int, hi: int, cost, threads: int) -> list[tuple[int, int]]:
    """Cut ``[lo, hi)`` into at most ``threads`` contiguous ranges of similar cost."""
    if threads <= 1 or hi - lo <= 1:
        return [(lo, hi)]
    total = sum(cost(i) for i in range(lo, hi))
    out, acc, start = [], 0, lo
    for i in range(lo, hi):
        acc += cost(i)
        if acc >= total * (len(out) + 1) / threads and len(out) < threads - 1:
            out.append((start, i + 1))
            start = i + 1
    if start < hi:
        out.append((start, hi))
    return out


def _map(fn, ranges, threads):
    if threads <= 1 or len(ranges) == 1:
        return [fn(*r) for r in ranges]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(lambda r: fn(*r), ranges))


def weight_histogram(F: GF, G, threads: int = 1) -> list[int]:
    """Number of codewords of each weight ``0..n`` in the row space of ``G``.

    ``G`` must have linearly independent rows.
    """
    G = np.asarray(G)
    n = G.shape[1]
    if G.shape[0] == 0:
        return [1] + [0] * n
    if F.order > 256:
        return _hist_generic(F, G)
    rows = _prime_span_rows(F, G)
    m, p = len(rows), F.p
    if m > 128:
        raise ValueError("too many rows to enumerate")
    cost = lambda i: p ** (m - 1 - i)  # noqa: E731
    ranges = _split(0, m, cost, threads)
    if _bits_ok(F, n):
        P, M = pack_bits(F, rows)
        parts = _map(lambda lo, hi: _impl.hist_bits(P, M, p, n, lo, hi), ranges, threads)
    else:
        add, _ = _tables(F)
        r8 = np.ascontiguousarray(rows, dtype=np.uint8)
        neg = np.ascontiguousarray(np.asarray(F.neg(rows), dtype=np.uint8))
        parts = _map(lambda lo, hi: _impl.hist_table(r8, neg, add, p, lo, hi), ranges, threads)
    proj = np.sum(parts, axis=0)
    hist = [int(c) * (p - 1) for c in proj]
    hist[0] += 1
    return hist


def _hist_generic(F: GF, G) -> list[int]:
    from . import linalg

    k, n = G.shape
    hist = [0] * (n + 1)
    total = F.order**k
    block = 4096
    for s in range(0, total, block):
        idx = np.arange(s, min(total, s + block), dtype=object)
        msgs = F.zeros((len(idx), k))
        for j in range(k):
            msgs[:, j] = idx % F.order
            idx = idx // F.order
        W = linalg.matmul(F, msgs, G)
        for c in np.count_nonzero(W != 0, axis=1):
            hist[int(c)] += 1
    return hist


def search_prefix_count(n: int, w: int, q: int) -> int:
    """Number of syndrome lookups made by an exhaustive search at weight ``w``."""
    from math import comb

    if w <= 1:
        return 1
    return comb(n, w - 1) * (q - 1) ** (w - 2)


def find_word(F: GF, H, w: int, secondary=None, threads: int = 1):
    """Search for a word of weight exactly ``w`` with ``H e = 0``.

    With ``secondary`` given, the word must also satisfy ``secondary e != 0``.
    The first value is normalised to 1.  Returns ``(word or None, ops)``; the
    word is the first one in a fixed search order, independent of the backend
    and of ``threads``.
    """
    H = np.asarray(H)
    n = H.shape[1]
    if w < 1 or w > n:
        return None, 0
    r1 = H.shape[0]
    T = None if secondary is None else np.asarray(secondary)
    r2 = 0 if T is None else T.shape[0]
    cost = lambda i: (n - i) ** max(w - 2, 0)  # noqa: E731
    ranges = [(0, n)] if w == 1 else _split(0, n, cost, threads)
    if _bits_ok(F, r1, r2):
        hP, hM = pack_bits(F, H.T) if r1 else (np.zeros(n, np.uint64), np.zeros(n, np.uint64))
        if T is not None and r2:
            tP, tM = pack_bits(F, T.T)
        else:
            tP = tM = np.zeros(n, np.uint64)
        order = np.lexsort((np.arange(n), hM, hP))
        kP = np.ascontiguousarray(hP[order])
        kM = np.ascontiguousarray(hM[order])
        kpos = np.ascontiguousarray(order.astype(np.int32))
        sec = T is not None

        def run(lo, hi):
            return _impl.find_bits(F.p, hP, hM, tP, tM, sec, kP, kM, kpos, w, lo, hi)

    else:
        if F.order > 256:
            raise ValueError("low-weight search supports fields of order at most 256")
        add, mul = _tables(F)
        Hc = np.asarray(H, dtype=np.int64).T
        Tc = None if T is None else np.asarray(T, dtype=np.int64).T.reshape(n, r2)

        def run(lo, hi):
            return _kernels_py.find_table(Hc, Tc, add, mul, F.order, w, lo, hi)

    results = _map(run, ranges, threads)
    ops = 0
    for found, pos, val, o in results:
        ops += o
        if found:
            word = F.zeros(n)
            word[pos] = val
            return word, ops
    return None, ops
