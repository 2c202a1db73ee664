"""Finite fields F_{p^k} with canonical presentations.

An element of F_{p^k} is stored as a plain ``int``: its coordinate vector
``(c_0, ..., c_{k-1})`` with respect to the power basis of a root ``theta`` of
the defining polynomial is packed as ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}``.
Arithmetic methods accept either ints or numpy integer arrays.

Three arithmetic backends are used behind one interface:

* prime fields use residues directly;
* small extension fields (order up to ``TABLE_LIMIT``) use exp/log/Zech tables;
* larger extension fields fall back to digit-vector polynomial arithmetic.
"""

from __future__ import annotations

import functools
import itertools
import math
import random
from dataclasses import dataclass

import numpy as np

TABLE_LIMIT = 1 << 20

__all__ = [
    "GF",
    "FieldElement",
    "Embedding",
    "Extension",
    "TensorSplit",
    "make_field",
    "field_from_order",
    "embed",
    "embedding",
    "extension",
    "tensor_split",
    "is_prime",
    "factor_int",
    "prime_power",
    "multiplicative_order",
]


# ---------------------------------------------------------------------------
# integer helpers


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for s in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % s == 0:
            return n == s
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@functools.lru_cache(maxsize=4096)
def factor_int(n: int) -> dict[int, int]:
    """Prime factorisation as ``{prime: exponent}``."""
    if n < 1:
        raise ValueError("factor_int expects a positive integer")
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f, step = 7, 4
    while f * f <= n and f < 1_000_000:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += step
        step = 6 - step
    if n > 1:
        if f * f > n or is_prime(n):
            out[n] = out.get(n, 0) + 1
        else:
            import sympy

            for pr, e in sympy.factorint(n).items():
                out[int(pr)] = out.get(int(pr), 0) + e
    return dict(sorted(out.items()))


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``q = p**k``; raise if ``q`` is not a prime power."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    fac = factor_int(q)
    if len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    ((p, k),) = fac.items()
    return p, k


def multiplicative_order(a: int, n: int) -> int:
    """Order of ``a`` in the unit group mod ``n`` (1 for ``n == 1``)."""
    if n == 1:
        return 1
    a %= n
    if math.gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    lam = _carmichael(n)
    order = lam
    for pr in factor_int(lam):
        while order % pr == 0 and pow(a, order // pr, n) == 1:
            order //= pr
    return order


def _carmichael(n: int) -> int:
    lam = 1
    for pr, e in factor_int(n).items():
        if pr == 2 and e >= 3:
            v = 2 ** (e - 2)
        else:
            v = (pr - 1) * pr ** (e - 1)
        lam = lam * v // math.gcd(lam, v)
    return lam


# ---------------------------------------------------------------------------
# polynomials over F_p as coefficient lists (low degree first)


def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv = pow(m[-1], p - 2, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _fp_trim(a[:dm])


def _fp_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _fp_trim(out)


def _fp_powmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _fp_mod(a, m, p)
    while e:
        if e & 1:
            result = _fp_mod(_fp_mul(result, base, p), m, p)
        e >>= 1
        if e:
            base = _fp_mod(_fp_mul(base, base, p), m, p)
    return result


def _fp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _fp_trim(list(a)), _fp_trim(list(b))
    while b:
        a, b = b, _fp_mod(a, b, p)
    return a


def _fp_is_irreducible(f: list[int], p: int) -> bool:
    """Monic ``f`` over F_p is irreducible iff ``gcd(f, x^(p^i) - x) = 1`` for ``i <= deg f / 2``.

    Checking ``i = 1, 2, ...`` in turn rejects most reducible polynomials early.
    """
    k = len(f) - 1
    if k == 1:
        return True
    if f[0] == 0:
        return False
    x = [0, 1]
    cur = x
    for _ in range(k // 2):
        cur = _fp_powmod(cur, p, f, p)
        if len(_fp_gcd(f, _sub_lists(cur, x, p), p)) != 1:
            return False
    return True


def _sub_lists(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _fp_trim(out)


@functools.lru_cache(maxsize=None)
def _canonical_poly(p: int, k: int) -> tuple[int, ...]:
    if k == 1:
        return (0, 1)
    # product() yields tuples in lexicographic order with c_0 most significant
    for c0 in range(1, p):
        for rest in itertools.product(range(p), repeat=k - 1):
            f = [c0, *rest, 1]
            if _fp_is_irreducible(f, p):
                return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# ---------------------------------------------------------------------------
# field descriptor


class GF:
    """The finite field F_{p^k}. Obtain instances through :func:`make_field`."""

    def __init__(self, p: int, k: int, poly: tuple[int, ...]):
        self.p = p
        self.k = k
        self.poly = poly
        self.order = p**k
        if k == 1:
            self.mode = "prime"
        elif self.order <= TABLE_LIMIT:
            self.mode = "table"
        else:
            self.mode = "big"
        self.dtype = np.int64 if self.order < (1 << 62) else object
        self._pw = [p**i for i in range(k)]
        # reduction of theta^j (j < 2k-1) to the power basis, as a k x (2k-1) matrix
        red = np.zeros((k, max(2 * k - 1, 1)), dtype=np.int64)
        cur = [1] + [0] * (k - 1)
        for j in range(2 * k - 1):
            red[:, j] = cur
            lead = cur[-1]
            cur = [0] + cur[:-1]
            if lead:
                cur = [(c - lead * f) % p for c, f in zip(cur, poly[:k])]
        self._red = red
        self._tab = None

    # -- identity and serialisation -------------------------------------------
    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __str__(self) -> str:
        return f"F_{self.order}"

    def __reduce__(self):
        return (make_field, (self.p, self.k))

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "poly": list(self.poly)}

    @staticmethod
    def from_json(obj: dict) -> "GF":
        F = make_field(int(obj["p"]), int(obj["k"]))
        if "poly" in obj and tuple(obj["poly"]) != F.poly:
            raise ValueError("defining polynomial does not match the canonical one")
        return F

    # -- basics ------------------------------------------------------------------
    zero = 0
    one = 1

    @property
    def gen(self) -> int:
        """Root of the defining polynomial (``0`` for prime fields)."""
        return self.p if self.k > 1 else 0

    def __len__(self) -> int:
        return self.order

    def elements(self) -> range:
        return range(self.order)

    def __call__(self, value) -> "FieldElement":
        """Wrap an int code or a coefficient sequence as a :class:`FieldElement`."""
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, (list, tuple, np.ndarray)):
            return FieldElement(self, self.from_coeffs(value))
        return FieldElement(self, self.scalar(value) if self.k == 1 else self._check(int(value)))

    def _check(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise ValueError(f"{a} is not an element code of {self!r}")
        return a

    def scalar(self, c: int) -> int:
        """Image of the integer ``c`` in the prime subfield."""
        return int(c) % self.p

    def coeffs(self, a: int) -> tuple[int, ...]:
        a = int(a)
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    lexkey = coeffs

    def from_coeffs(self, c) -> int:
        c = [int(x) % self.p for x in c]
        if len(c) > self.k:
            if any(c[self.k:]):
                raise ValueError("too many coefficients")
            c = c[: self.k]
        return sum(x * w for x, w in zip(c, self._pw))

    def digits(self, a) -> np.ndarray:
        """Coordinate vectors; shape ``a.shape + (k,)``."""
        if np.isscalar(a) or isinstance(a, int):
            return np.array(self.coeffs(a), dtype=np.int64)
        a = np.asarray(a)
        if a.dtype == object:
            return np.array([self.coeffs(x) for x in a.ravel()], dtype=np.int64).reshape(a.shape + (self.k,))
        out = np.empty(a.shape + (self.k,), dtype=np.int64)
        cur = a.astype(np.int64)
        for i in range(self.k):
            cur, out[..., i] = np.divmod(cur, self.p)
        return out

    def from_digits(self, d):
        d = np.asarray(d, dtype=np.int64) % self.p
        if d.ndim == 1:
            return sum(int(x) * w for x, w in zip(d, self._pw))
        if self.dtype is object:
            flat = d.reshape(-1, self.k)
            vals = np.empty(len(flat), dtype=object)
            for i, row in enumerate(flat):
                vals[i] = sum(int(x) * w for x, w in zip(row, self._pw))
            return vals.reshape(d.shape[:-1])
        return d @ np.array(self._pw, dtype=np.int64)

    def array(self, values) -> np.ndarray:
        return np.asarray(values, dtype=self.dtype)

    def zeros(self, shape) -> np.ndarray:
        z = np.zeros(shape, dtype=self.dtype)
        if self.dtype is object:
            z[...] = 0
        return z

    def random(self, rng, size=None):
        if size is None:
            return int(rng.integers(0, self.order)) if self.dtype is not object else rng.randrange(self.order)
        if self.dtype is object:
            r = random.Random(int(rng.integers(1 << 62)))
            out = np.empty(size, dtype=object)
            for idx in np.ndindex(out.shape):
                out[idx] = r.randrange(self.order)
            return out
        return rng.integers(0, self.order, size=size, dtype=np.int64)

    # -- tables ------------------------------------------------------------------
    @property
    def tables(self):
        if self._tab is None:
            self._tab = _build_tables(self)
        return self._tab

    # -- arithmetic ----------------------------------------------------------------
    def add(self, a, b):
        if _both_int(a, b):
            if self.mode == "prime":
                return (a + b) % self.p
            if self.p == 2:
                return int(a) ^ int(b)
            if self.mode == "table":
                return int(self._table_add(np.int64(a), np.int64(b)))
            return self._digit_add(a, b)
        if self.mode == "prime":
            return (np.asarray(a) + np.asarray(b)) % self.p
        if self.p == 2 and self.dtype is not object:
            return np.bitwise_xor(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        if self.mode == "table":
            return self._table_add(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        if self.dtype is not object:
            a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
            return self.from_digits(self.digits(a) + self.digits(b))
        return self._vec(self._digit_add)(a, b)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        if self.p == 2:
            return a
        if self.mode == "prime":
            return (-a) % self.p if isinstance(a, (int, np.integer)) else (-np.asarray(a)) % self.p
        if isinstance(a, (int, np.integer)):
            return self.from_digits((-self.digits(int(a))) % self.p)
        if self.mode == "table":
            t = self.tables
            a = np.asarray(a, dtype=np.int64)
            res = t.exp[t.log[a] + t.half]
            return np.where(a == 0, 0, res)
        return self._vec(lambda x: self.neg(int(x)))(a)

    def mul(self, a, b):
        if self.mode == "prime":
            if _both_int(a, b):
                return a * b % self.p
            return (np.asarray(a) * np.asarray(b)) % self.p
        if self.mode == "table":
            t = self.tables
            if _both_int(a, b):
                if a == 0 or b == 0:
                    return 0
                return int(t.exp[t.log[a] + t.log[b]])
            a = np.asarray(a, dtype=np.int64)
            b = np.asarray(b, dtype=np.int64)
            res = t.exp[t.log[a] + t.log[b]]
            return np.where((a == 0) | (b == 0), 0, res)
        if _both_int(a, b):
            return self._big_mul(int(a), int(b))
        if self.dtype is not object:
            return self._big_mul_array(a, b)
        return self._vec(self._big_mul)(a, b)

    def inv(self, a):
        if isinstance(a, (int, np.integer)):
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            if self.mode == "prime":
                return pow(int(a), self.p - 2, self.p)
            if self.mode == "table":
                t = self.tables
                return int(t.exp[(self.order - 1 - t.log[a]) % (self.order - 1)])
            return self.pow(int(a), self.order - 2)
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        if self.mode == "table" or (self.mode == "prime" and self.p <= TABLE_LIMIT):
            t = self.tables
            return t.exp[(self.order - 1 - t.log[a.astype(np.int64)]) % (self.order - 1)]
        return self._vec(lambda x: self.inv(int(x)))(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if not isinstance(a, (int, np.integer)):
            return self._vec(lambda x: self.pow(int(x), e))(a)
        a = int(a)
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 if e == 0 else 0
        e %= self.order - 1
        if self.mode == "prime":
            return pow(a, e, self.p)
        if self.mode == "table":
            t = self.tables
            return int(t.exp[t.log[a] * e % (self.order - 1)])
        return _digit_pow(self, a, e)

    def frobenius(self, a, j: int = 1):
        """Apply ``x -> x^(p^j)``."""
        j %= self.k
        if j == 0:
            return a
        return self.pow(a, self.p**j)

    def sum(self, values):
        acc = 0
        for v in values:
            acc = self.add(acc, v)
        return acc

    # -- backend internals -----------------------------------------------------
    def _vec(self, fn):
        def apply(*args):
            arrs = np.broadcast_arrays(*[np.asarray(x, dtype=object) for x in args])
            out = np.empty(arrs[0].shape, dtype=object)
            for idx in np.ndindex(out.shape):
                out[idx] = fn(*[int(x[idx]) for x in arrs])
            return out.astype(self.dtype) if self.dtype is not object else out

        return apply

    def _digit_add(self, a, b):
        da, db = self.coeffs(a), self.coeffs(b)
        return sum(((x + y) % self.p) * w for x, y, w in zip(da, db, self._pw))

    def _table_add(self, a, b):
        t = self.tables
        la, lb = t.log[a], t.log[b]
        n = (lb - la) % (self.order - 1)
        z = t.zech[n]
        res = np.where(z < 0, 0, t.exp[la + np.where(z < 0, 0, z)])
        res = np.where(a == 0, b, np.where(b == 0, a, res))
        return res

    def _big_mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        prod = np.convolve(self.digits(a), self.digits(b))
        return self.from_digits(self._red[:, : len(prod)] @ prod % self.p)

    def _big_mul_array(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        da, db = self.digits(a), self.digits(b)
        k = self.k
        prod = np.zeros(a.shape + (2 * k - 1,), dtype=np.int64)
        for i in range(k):  # schoolbook product of the digit vectors
            prod[..., i : i + k] += da[..., i : i + 1] * db
        prod %= self.p
        return self.from_digits(prod @ self._red.T % self.p)

    # -- structure ----------------------------------------------------------------
    def element_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        order = self.order - 1
        for pr in factor_int(order):
            while order % pr == 0 and self.pow(a, order // pr) == 1:
                order //= pr
        return order

    @functools.lru_cache(maxsize=None)
    def element_of_order(self, d: int) -> int:
        """Deterministic element of multiplicative order ``d`` (``d`` divides ``order - 1``)."""
        if (self.order - 1) % d:
            raise ValueError(f"no element of order {d} in {self!r}")
        if d == 1:
            return 1
        cof = (self.order - 1) // d
        primes = list(factor_int(d))
        c = 2 if self.k == 1 else self.p
        while True:
            x = self.pow(c, cof)
            if x != 0 and all(self.pow(x, d // r) != 1 for r in primes):
                return x
            c += 1

    @functools.lru_cache(maxsize=None)
    def primitive_element(self) -> int:
        """Primitive element with the lexicographically smallest coordinate vector."""
        if self.order == 2:
            return 1
        order = self.order - 1
        primes = list(factor_int(order))
        for a in sorted(range(1, self.order), key=self.coeffs):
            if all(self.pow(a, order // r) != 1 for r in primes):
                return a
        raise AssertionError  # pragma: no cover

    def roots(self, coeffs: list[int]) -> list[int]:
        """All roots in this field of the polynomial with the given coefficients."""
        from . import _fpoly

        return _fpoly.roots(self, list(coeffs))


def _both_int(a, b) -> bool:
    return isinstance(a, (int, np.integer)) and isinstance(b, (int, np.integer))


@dataclass
class _Tables:
    exp: np.ndarray
    log: np.ndarray
    zech: np.ndarray
    half: int


def _build_tables(F: GF) -> _Tables:
    Q = F.order
    if Q == 2:
        exp = np.array([1, 1], dtype=np.int64)
        log = np.array([0, 0], dtype=np.int64)
        return _Tables(exp, log, np.array([-1], dtype=np.int64), 0)
    primes = list(factor_int(Q - 1))
    if F.k == 1:
        g = next(a for a in range(2, Q) if all(pow(a, (Q - 1) // r, Q) != 1 for r in primes))
        exp = np.empty(Q - 1, dtype=np.int64)
        cur = 1
        for i in range(Q - 1):
            exp[i] = cur
            cur = cur * g % Q
    else:
        g = next(c for c in range(F.p, Q) if all(_digit_pow(F, c, (Q - 1) // r) != 1 for r in primes))
        # digits of g^0 .. g^(m-1), doubled each round with the matrix of x -> g^m x
        D = np.zeros((1, F.k), dtype=np.int64)
        D[0, 0] = 1
        gm = g
        while len(D) < Q - 1:
            M = np.array([F.digits(F._big_mul(gm, F.p**j)) for j in range(F.k)], dtype=np.int64)
            D = np.concatenate([D, D @ M % F.p])
            gm = F._big_mul(gm, gm)
        exp = F.from_digits(D[: Q - 1]).astype(np.int64)
    log = np.zeros(Q, dtype=np.int64)
    log[exp] = np.arange(Q - 1)
    exp2 = np.concatenate([exp, exp])
    # Zech logarithms: theta-power n plus one
    inc = np.where(exp % F.p == F.p - 1, exp - (F.p - 1), exp + 1)
    zech = np.where(inc == 0, -1, log[inc])
    half = (Q - 1) // 2 if F.p != 2 else 0
    return _Tables(exp2, log, zech, half)


def _digit_pow(F: GF, a: int, e: int) -> int:
    result = 1
    while e:
        if e & 1:
            result = F._big_mul(result, a)
        e >>= 1
        if e:
            a = F._big_mul(a, a)
    return result


def make_field(p: int, k: int = 1) -> GF:
    """Canonical descriptor of F_{p^k}; identical inputs give the identical object."""
    return _make_field(int(p), int(k))


@functools.lru_cache(maxsize=None)
def _make_field(p: int, k: int) -> GF:
    if k < 1:
        raise ValueError("extension degree must be at least 1")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return GF(p, k, _canonical_poly(p, k))


def field_from_order(q) -> GF:
    """Accept a field, an order ``p^k`` or a ``(p, k)`` pair."""
    if isinstance(q, GF):
        return q
    if isinstance(q, tuple):
        return make_field(*q)
    p, k = prime_power(int(q))
    return make_field(p, k)


# ---------------------------------------------------------------------------
# element wrapper


class FieldElement:
    """An element of a :class:`GF` with operator overloads."""

    __slots__ = ("field", "value")

    def __init__(self, field: GF, value: int):
        self.field = field
        self.value = int(value)

    def _other(self, b) -> int:
        if isinstance(b, FieldElement):
            if b.field is not self.field:
                raise ValueError("field mismatch")
            return b.value
        if isinstance(b, (int, np.integer)):
            return self.field.scalar(b)
        return NotImplemented

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def __add__(self, b):
        return FieldElement(self.field, self.field.add(self.value, self._other(b)))

    __radd__ = __add__

    def __sub__(self, b):
        return FieldElement(self.field, self.field.sub(self.value, self._other(b)))

    def __rsub__(self, b):
        return FieldElement(self.field, self.field.sub(self._other(b), self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, b):
        return FieldElement(self.field, self.field.mul(self.value, self._other(b)))

    __rmul__ = __mul__

    def __truediv__(self, b):
        return FieldElement(self.field, self.field.div(self.value, self._other(b)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inv(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def frobenius(self, j: int = 1) -> "FieldElement":
        return FieldElement(self.field, self.field.frobenius(self.value, j))

    def __eq__(self, b):
        if isinstance(b, FieldElement):
            return self.field is b.field and self.value == b.value
        if isinstance(b, (int, np.integer)):
            return self.value == self.field.scalar(b)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        if self.field.k == 1:
            return f"{self.value} in {self.field}"
        return f"{list(self.coeffs)} in {self.field}"


# ---------------------------------------------------------------------------
# embeddings


def _fp_inverse(M: np.ndarray, p: int) -> np.ndarray:
    n = M.shape[0]
    A = np.concatenate([M % p, np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r, c]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        A[[c, piv]] = A[[piv, c]]
        A[c] = A[c] * pow(int(A[c, c]), p - 2, p) % p
        col = A[:, c].copy()
        col[c] = 0
        A = (A - np.outer(col, A[c])) % p
    return A[:, n:]


class Embedding:
    """Ring embedding of ``src`` into ``dst`` as an F_p-linear digit map."""

    def __init__(self, src: GF, dst: GF, image_of_gen: int):
        self.src = src
        self.dst = dst
        self.image_of_gen = image_of_gen
        cols = []
        cur = 1
        for _ in range(src.k):
            cols.append(dst.digits(cur))
            cur = dst.mul(cur, image_of_gen)
        self.matrix = np.array(cols, dtype=np.int64).T  # dst.k x src.k

    def __call__(self, a):
        d = self.src.digits(a)
        return self.dst.from_digits(d @ self.matrix.T % self.src.p)

    @functools.cached_property
    def _left_inverse(self):
        p = self.src.p
        # pick src.k independent rows of the matrix
        rows, A = [], np.zeros((0, self.src.k), dtype=np.int64)
        for i in range(self.dst.k):
            B = np.vstack([A, self.matrix[i]])
            if _fp_rank(B, p) > len(rows):
                rows.append(i)
                A = B
            if len(rows) == self.src.k:
                break
        return rows, _fp_inverse(A, p)

    def preimage(self, b):
        """Inverse on the image; raises ``ValueError`` for elements outside it."""
        rows, inv = self._left_inverse
        d = self.dst.digits(b)
        x = d[..., rows] @ inv.T % self.src.p
        if not np.array_equal(x @ self.matrix.T % self.src.p, d):
            raise ValueError("element is not in the image of the embedding")
        return self.src.from_digits(x)


def _fp_rank(M: np.ndarray, p: int) -> int:
    A = np.array(M, dtype=np.int64) % p
    rank = 0
    rows, cols = A.shape
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if A[r, c]), None)
        if piv is None:
            continue
        A[[rank, piv]] = A[[piv, rank]]
        A[rank] = A[rank] * pow(int(A[rank, c]), p - 2, p) % p
        col = A[:, c].copy()
        col[rank] = 0
        A = (A - np.outer(col, A[rank])) % p
        rank += 1
    return rank


@functools.lru_cache(maxsize=None)
def embedding(src: GF, dst: GF) -> Embedding:
    """Canonical embedding of ``src`` into ``dst``.

    The image of ``src.gen`` is the lexicographically smallest root of the
    defining polynomial of ``src`` among those compatible with the embeddings of
    all intermediate subfields, so that composing canonical embeddings along a
    tower agrees with the direct one.
    """
    if src.p != dst.p:
        raise ValueError("fields of different characteristic")
    if dst.k % src.k:
        raise ValueError(f"{src!r} does not embed in {dst!r}")
    if src.k == 1:
        return Embedding(src, dst, 0)
    if src is dst:
        return Embedding(src, dst, src.gen)
    candidates = sorted(dst.roots(list(src.poly)), key=dst.coeffs)
    checks = []
    for d in range(2, src.k):
        if src.k % d == 0:
            sub = make_field(src.p, d)
            lower = embedding(sub, src)
            direct = embedding(sub, dst)
            checks.append((src.coeffs(lower.image_of_gen), direct.image_of_gen))
    for rho in candidates:
        ok = True
        for poly_in_gen, target in checks:
            # evaluate the polynomial expression of the sub-generator at rho
            val, pw = 0, 1
            for c in poly_in_gen:
                if c:
                    val = dst.add(val, dst.mul(c, pw))
                pw = dst.mul(pw, rho)
            if val != target:
                ok = False
                break
        if ok:
            return Embedding(src, dst, rho)
    raise AssertionError("no compatible root found")  # pragma: no cover


def embed(a, target: GF):
    """Embed a :class:`FieldElement` into a larger field."""
    if isinstance(a, FieldElement):
        return FieldElement(target, embedding(a.field, target)(a.value))
    raise TypeError("embed expects a FieldElement; use embedding(src, dst) for raw codes")


class Extension:
    """Coordinates of ``big`` over a subfield ``base`` in the basis ``gen^i``."""

    def __init__(self, big: GF, base: GF):
        if big.k % base.k:
            raise ValueError(f"{base!r} is not a subfield of {big!r}")
        self.big = big
        self.base = base
        self.degree = big.k // base.k
        self.iota = embedding(base, big)
        p = big.p
        if base.k == 1:
            self._to = None
        else:
            cols = []
            theta_pow = 1
            for _ in range(self.degree):
                for j in range(base.k):
                    cols.append(big.digits(big.mul(self.iota(base.p**j), theta_pow)))
                theta_pow = big.mul(theta_pow, big.gen)
            M = np.array(cols, dtype=np.int64).T
            self._from = M
            self._to = _fp_inverse(M, p)

    def coords(self, a) -> np.ndarray:
        """Coordinates as an array of base-field codes, shape ``a.shape + (degree,)``."""
        d = self.big.digits(a)
        if self._to is None:
            return d
        x = d @ self._to.T % self.big.p
        x = x.reshape(x.shape[:-1] + (self.degree, self.base.k))
        return self.base.from_digits(x)

    def from_coords(self, c):
        c = np.asarray(c, dtype=np.int64)
        if self._to is None:
            return self.big.from_digits(c)
        d = self.base.digits(c).reshape(c.shape[:-1] + (self.degree * self.base.k,))
        return self.big.from_digits(d @ self._from.T % self.big.p)

    def basis(self) -> list[int]:
        return [self.big.pow(self.big.gen, i) if self.degree > 1 else 1 for i in range(self.degree)]


@functools.lru_cache(maxsize=None)
def extension(big: GF, base: GF) -> Extension:
    return Extension(big, base)


# ---------------------------------------------------------------------------
# tensor products of fields


class TensorSplit:
    """F_{q^n} (x) F_{q^m} as a direct sum of ``gcd(n, m)`` copies of F_{q^lcm}.

    Source coordinates are indexed by ``(i, j)`` (``i`` major) for
    ``alpha^i (x) beta^j`` with ``alpha, beta`` the canonical generators; target
    coordinates are the F_q-coordinates of the ``d`` components, concatenated.
    """

    def __init__(self, n: int, m: int, q: GF):
        self.q = q
        self.n, self.m = n, m
        self.d = math.gcd(n, m)
        self.ell = n * m // self.d
        p, k = q.p, q.k
        self.left = make_field(p, k * n)
        self.right = make_field(p, k * m)
        self.big = make_field(p, k * self.ell)
        self.iota_left = embedding(self.left, self.big)
        self.iota_right = embedding(self.right, self.big)
        self.big_ext = extension(self.big, q)
        Q = q.order
        alpha = self.iota_left(self.left.gen) if n > 1 else 1
        beta = self.iota_right(self.right.gen) if m > 1 else 1
        self.alpha = alpha
        self.omegas = [self.big.pow(beta, Q**c) for c in range(self.d)]
        nm = n * m
        mat = np.zeros((nm, nm), dtype=np.int64)
        for i in range(n):
            ai = self.big.pow(alpha, i)
            for j in range(m):
                col = [self.big.mul(ai, self.big.pow(w, j)) for w in self.omegas]
                mat[:, i * m + j] = self.big_ext.coords(np.array(col, dtype=self.big.dtype)).reshape(-1)
        self.matrix = mat
        from . import linalg

        self.inverse = linalg.inverse(q, mat)
        # structure constants of the source product
        self._left_ext = extension(self.left, q)
        self._right_ext = extension(self.right, q)
        self._left_pows = self._power_coords(self.left, self._left_ext, n)
        self._right_pows = self._power_coords(self.right, self._right_ext, m)

    @staticmethod
    def _power_coords(F: GF, ext: Extension, deg: int) -> np.ndarray:
        g = F.gen if deg > 1 else 1
        vals = np.array([F.pow(g, e) for e in range(2 * deg - 1)], dtype=F.dtype)
        return ext.coords(vals)  # (2deg-1, deg)

    def apply(self, u):
        """Forward map on source coordinate vectors (last axis of length ``n*m``)."""
        from . import linalg

        return linalg.matmul(self.q, np.asarray(u), self.matrix.T)

    def apply_inverse(self, v):
        from . import linalg

        return linalg.matmul(self.q, np.asarray(v), self.inverse.T)

    def source_mul(self, u, v):
        """Product in the tensor ring, on source coordinate vectors."""
        from . import linalg

        q, n, m = self.q, self.n, self.m
        U = np.asarray(u).reshape(n, m)
        V = np.asarray(v).reshape(n, m)
        W = q.zeros((2 * n - 1, 2 * m - 1))
        for i in range(n):
            for j in range(m):
                if U[i, j] != 0:
                    W[i : i + n, j : j + m] = q.add(W[i : i + n, j : j + m], q.mul(U[i, j], V))
        out = linalg.matmul(q, linalg.matmul(q, self._left_pows.T, W), self._right_pows)
        return out.reshape(-1)

    def target_mul(self, a, b):
        """Componentwise product on target coordinate vectors."""
        ext = self.big_ext
        A = ext.from_coords(np.asarray(a).reshape(self.d, self.ell))
        B = ext.from_coords(np.asarray(b).reshape(self.d, self.ell))
        return ext.coords(self.big.mul(A, B)).reshape(-1)


@functools.lru_cache(maxsize=None)
def tensor_split(n: int, m: int, q: GF) -> TensorSplit:
    if n < 1 or m < 1:
        raise ValueError("degrees must be positive")
    return TensorSplit(n, m, field_from_order(q))
