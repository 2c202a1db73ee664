"""Decomposition of a group algebra from its regular representation.

This works for any group table and is independent of the factorisation-based
formulas: the primitive central idempotents are found inside the fixed
algebra of ``z -> z^q`` on the centre, and each block shape is read off from
the dimensions of ``Z e`` and ``A e``.  Meant for small groups only.
"""

from __future__ import annotations

import math

import numpy as np

from . import linalg
from .gf import GF, field_from_order
from .groups import GroupSpec, group_table
from .wa import Decomposition

__all__ = ["decompose_regular", "central_idempotents"]


def _conv(F: GF, mt: np.ndarray, u: np.ndarray, v: np.ndarray, ldiv: np.ndarray | None = None) -> np.ndarray:
    if ldiv is not None and F.mode == "prime":
        return (u.astype(np.int64) @ v.astype(np.int64)[ldiv]) % F.p
    out = F.zeros(len(u))
    for h in np.nonzero(u)[0]:
        idx = mt[h]
        out[idx] = F.add(out[idx], F.mul(int(u[h]), v))
    return out


def _conjugacy_classes(spec: GroupSpec) -> list[list[int]]:
    t = group_table(spec)
    N = len(t)
    seen = np.zeros(N, dtype=bool)
    classes = []
    for g in range(N):
        if seen[g]:
            continue
        cls = sorted({int(t.mul[t.mul[h, g], t.inv[h]]) for h in range(N)})
        seen[cls] = True
        classes.append(cls)
    return classes


def central_idempotents(q, spec: GroupSpec) -> list[np.ndarray]:
    """Primitive central idempotents of ``F_q[G]`` as coefficient vectors."""
    F = field_from_order(q)
    if spec.order % F.p == 0:
        raise ValueError("the group algebra is not semisimple")
    t = group_table(spec)
    N = len(t)
    mt = t.mul
    classes = _conjugacy_classes(spec)
    Z = F.zeros((len(classes), N))
    for i, c in enumerate(classes):
        Z[i, c] = 1
    # Frobenius z -> z^q on the centre, in class-sum coordinates
    Q = F.order
    reps = [c[0] for c in classes]

    def power(u, e):
        result = F.zeros(N)
        result[t.identity] = 1
        base = u
        while e:
            if e & 1:
                result = _conv(F, mt, result, base, t.ldiv)
            e >>= 1
            if e:
                base = _conv(F, mt, base, base, t.ldiv)
        return result

    phi = F.zeros((len(classes), len(classes)))
    for i in range(len(classes)):
        img = power(Z[i], Q)
        phi[:, i] = img[reps]
    eye = np.eye(len(classes), dtype=np.int64).astype(F.dtype)
    fixed = linalg.nullspace(F, F.sub(phi, eye))
    fixed_vecs = [linalg.matmul(F, f, Z) for f in fixed]
    one = F.zeros(N)
    one[t.identity] = 1
    idems = [one]
    values = list(range(F.order))
    for b in fixed_vecs:
        refined = []
        for e in idems:
            be = _conv(F, mt, b, e, t.ldiv)
            for v in values:
                # Lagrange projector onto the v-eigenpart of b inside e
                proj = e
                for w in values:
                    if w == v:
                        continue
                    factor = F.mul(F.sub(be, F.mul(w, e)), F.inv(F.sub(v, w)))
                    proj = _conv(F, mt, proj, factor, t.ldiv)
                if np.any(proj != 0):
                    refined.append(proj)
        idems = refined
    return idems


def decompose_regular(q, spec: GroupSpec) -> Decomposition:
    F = field_from_order(q)
    t = group_table(spec)
    N = len(t)
    classes = _conjugacy_classes(spec)
    out = []
    for e in central_idempotents(F, spec):
        Ze = []
        for c in classes:
            z = F.zeros(N)
            z[c] = 1
            Ze.append(_conv(F, t.mul, z, e, t.ldiv))
        r = linalg.rank(F, np.array(Ze))
        rows = F.zeros((N, N))
        for g in range(N):
            rows[g, t.mul[g]] = e  # g * e
        dim = linalg.rank(F, rows)
        n = math.isqrt(dim // r)
        if n * n * r != dim:
            raise AssertionError("inconsistent block dimensions")
        out.append((n, r))
    return Decomposition.from_summands(F, N, out)
