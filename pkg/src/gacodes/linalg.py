"""Dense linear algebra over finite fields.

Matrices are numpy arrays of field codes (``int64``, or ``object`` for fields
too large for machine integers).  Prime fields take a fast path based on
integer matrix products reduced mod ``p``.
"""

from __future__ import annotations

import numpy as np

from .gf import GF

__all__ = ["matmul", "rref", "rank", "nullspace", "inverse", "solve", "in_rowspace", "row_space_equal"]


def _prime_fast(F: GF, inner: int) -> bool:
    return F.mode == "prime" and inner * (F.p - 1) ** 2 < (1 << 62)


def matmul(F: GF, A, B) -> np.ndarray:
    """Matrix product over ``F`` (1-D operands behave as in ``numpy.matmul``)."""
    A = np.asarray(A)
    B = np.asarray(B)
    inner = A.shape[-1]
    if _prime_fast(F, inner) and A.dtype != object and B.dtype != object:
        return (A.astype(np.int64) @ B.astype(np.int64)) % F.p
    squeeze_a = A.ndim == 1
    squeeze_b = B.ndim == 1
    A2 = A[None, :] if squeeze_a else A
    B2 = B[:, None] if squeeze_b else B
    out = F.zeros((A2.shape[0], B2.shape[1]))
    for j in range(inner):
        col = A2[:, j : j + 1]
        if not np.any(col != 0):
            continue
        out = F.add(out, F.mul(col, B2[j : j + 1, :]))
    if squeeze_a:
        out = out[0]
    if squeeze_b:
        out = out[..., 0] if not squeeze_a else out[0]
    return out


def rref(F: GF, A, return_pivots: bool = False):
    """Reduced row-echelon form; zero rows are dropped."""
    A = np.array(A, dtype=F.dtype, copy=True)
    if A.ndim != 2:
        raise ValueError("rref expects a 2-D matrix")
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    prime = F.mode == "prime" and A.dtype != object
    p = F.p
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c] != 0)[0]
        if len(nz) == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        if prime:
            A[r] = A[r] * pow(int(A[r, c]), p - 2, p) % p
            col = A[:, c].copy()
            col[r] = 0
            nzr = np.nonzero(col)[0]
            if len(nzr):
                A[nzr] = (A[nzr] - np.outer(col[nzr], A[r])) % p
        else:
            A[r] = F.mul(A[r], F.inv(int(A[r, c])))
            col = A[:, c].copy()
            col[r] = 0
            nzr = np.nonzero(col != 0)[0]
            if len(nzr):
                A[nzr] = F.sub(A[nzr], F.mul(col[nzr][:, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    R = A[:r]
    if return_pivots:
        return R, pivots
    return R


def rank(F: GF, A) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return rref(F, A).shape[0]


def nullspace(F: GF, A, ncols: int | None = None) -> np.ndarray:
    """Basis (as rows) of ``{x : A x = 0}``."""
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] == 0:
        n = A.shape[1] if A.ndim == 2 else ncols
        return np.eye(n, dtype=np.int64).astype(F.dtype)
    R, piv = rref(F, A, return_pivots=True)
    n = A.shape[1]
    free = [c for c in range(n) if c not in set(piv)]
    N = F.zeros((len(free), n))
    for i, f in enumerate(free):
        N[i, f] = 1
        for r, pc in enumerate(piv):
            N[i, pc] = F.neg(int(R[r, f]))
    return N


def inverse(F: GF, A) -> np.ndarray:
    A = np.asarray(A, dtype=F.dtype)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("inverse expects a square matrix")
    eye = np.eye(n, dtype=np.int64).astype(F.dtype)
    R, piv = rref(F, np.concatenate([A, eye], axis=1), return_pivots=True)
    if len(piv) < n or piv[n - 1] != n - 1:
        raise ValueError("matrix is singular")
    return R[:, n:]


def solve(F: GF, A, b) -> np.ndarray:
    """One solution ``x`` of ``A x = b``; raises ``ValueError`` when inconsistent."""
    A = np.asarray(A, dtype=F.dtype)
    b = np.asarray(b, dtype=F.dtype).reshape(-1, 1)
    R, piv = rref(F, np.concatenate([A, b], axis=1), return_pivots=True)
    n = A.shape[1]
    if piv and piv[-1] == n:
        raise ValueError("inconsistent system")
    x = F.zeros(n)
    for r, c in enumerate(piv):
        x[c] = R[r, n]
    return x


def in_rowspace(F: GF, G, v) -> bool:
    G = np.asarray(G)
    v = np.asarray(v).reshape(1, -1)
    if G.size == 0:
        return not np.any(v != 0)
    return rank(F, np.concatenate([G, v.astype(G.dtype)], axis=0)) == rank(F, G)


def row_space_equal(F: GF, A, B) -> bool:
    A = rref(F, A) if np.asarray(A).size else np.zeros((0, np.asarray(B).shape[-1]), dtype=F.dtype)
    B = rref(F, B) if np.asarray(B).size else np.zeros((0, A.shape[-1]), dtype=F.dtype)
    return A.shape == B.shape and bool(np.all(A == B))
