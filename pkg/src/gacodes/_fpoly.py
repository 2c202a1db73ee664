"""Dense univariate polynomials over a :class:`~gacodes.gf.GF`, as int lists.

Coefficients are field codes, lowest degree first, without trailing zeros
(the zero polynomial is ``[]``).
"""

from __future__ import annotations

import random

import numpy as np

__all__ = [
    "trim",
    "add",
    "sub",
    "neg",
    "scale",
    "mul",
    "divmod_",
    "mod",
    "monic",
    "gcd",
    "powmod",
    "evaluate",
    "roots",
]


def trim(a: list[int]) -> list[int]:
    a = [int(x) for x in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def add(F, a, b):
    n = max(len(a), len(b))
    out = [F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]
    return trim(out)


def neg(F, a):
    return [F.neg(x) for x in a]


def sub(F, a, b):
    return add(F, a, neg(F, b))


def scale(F, c, a):
    if c == 0:
        return []
    return trim([F.mul(c, x) for x in a])


def mul(F, a, b):
    if not a or not b:
        return []
    if F.dtype is object or len(a) * len(b) < 16:
        return _mul_scalar(F, a, b)
    # field addition is digit-wise mod p, so sum the digit vectors along anti-diagonals
    D = F.digits(F.mul(np.array(a, dtype=np.int64)[:, None], np.array(b, dtype=np.int64)[None, :]))
    acc = np.zeros((len(a) + len(b) - 1, F.k), dtype=np.int64)
    for i in range(len(a)):
        acc[i : i + len(b)] += D[i]
    return trim(np.atleast_1d(F.from_digits(acc % F.p)).tolist())


def _mul_scalar(F, a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(out)


def divmod_(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    inv = 1 if b[-1] == 1 else F.inv(b[-1])
    q = [0] * max(len(a) - db, 0)
    if F.dtype is object or db < 4:
        a = list(a)
        for i in range(len(a) - 1, db - 1, -1):
            c = F.mul(a[i], inv)
            if c == 0:
                continue
            q[i - db] = c
            for j in range(db + 1):
                if b[j]:
                    a[i - db + j] = F.sub(a[i - db + j], F.mul(c, b[j]))
        return trim(q), trim(a[:db])
    A = F.digits(np.array(a, dtype=np.int64)).reshape(len(a), F.k)
    negb = np.asarray(F.neg(np.array(b, dtype=np.int64)), dtype=np.int64)
    for i in range(len(a) - 1, db - 1, -1):
        lead = F.from_digits(A[i])
        if lead == 0:
            continue
        c = F.mul(lead, inv)
        q[i - db] = c
        A[i - db : i + 1] = (A[i - db : i + 1] + F.digits(F.mul(c, negb)).reshape(db + 1, F.k)) % F.p
    return trim(q), trim(np.atleast_1d(F.from_digits(A[:db])).tolist())


def mod(F, a, b):
    return divmod_(F, a, b)[1]


def monic(F, a):
    if not a:
        return []
    return scale(F, F.inv(a[-1]), a)


def gcd(F, a, b):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def powmod(F, a, e: int, m):
    result = [1]
    base = mod(F, a, m)
    while e:
        if e & 1:
            result = mod(F, mul(F, result, base), m)
        e >>= 1
        if e:
            base = mod(F, mul(F, base, base), m)
    return result


def evaluate(F, a, x):
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def roots(F, f, seed: int = 0x5EED) -> list[int]:
    """All roots of ``f`` lying in ``F`` (without multiplicity)."""
    f = monic(F, trim(f))
    if len(f) <= 1:
        return []
    out = []
    if f[0] == 0:
        out.append(0)
        while f and f[0] == 0:
            f = f[1:]
    # split part: gcd with x^Q - x (here x^(Q-1) - 1 since 0 is removed)
    xq = powmod(F, [0, 1], F.order - 1, f)
    g = gcd(F, f, sub(F, xq, [1]))
    rng = random.Random(seed)
    out.extend(_split_linear(F, g, rng))
    return out


def _split_linear(F, g, rng) -> list[int]:
    if len(g) <= 1:
        return []
    if len(g) == 2:
        return [F.neg(g[0])]
    if F.order <= 64 and len(g) > 3:
        return [a for a in range(F.order) if evaluate(F, g, a) == 0]
    while True:
        delta = rng.randrange(F.order)
        if F.p == 2:
            t = mod(F, [0, delta or 1], g)
            acc = t
            for _ in range(F.k - 1):
                t = mod(F, mul(F, t, t), g)
                acc = add(F, acc, t)
            h = gcd(F, g, acc)
        else:
            t = powmod(F, [delta, 1], (F.order - 1) // 2, g)
            h = gcd(F, g, sub(F, t, [1]))
        if 1 < len(h) < len(g):
            rest = divmod_(F, g, h)[0]
            return _split_linear(F, h, rng) + _split_linear(F, monic(F, rest), rng)
