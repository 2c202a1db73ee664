"""Polynomials over F_q and the canonical factorisations of x^n - 1 and x^n + 1."""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

from . import _fpoly
from .gf import GF, embedding, field_from_order, make_field, multiplicative_order

__all__ = [
    "Poly",
    "Factor",
    "FactorList",
    "reciprocal",
    "factor_cyclotomic",
    "factor_shapes",
    "trace_polynomial",
    "SELF",
    "FIRST",
    "SECOND",
]

SELF = "self_reciprocal"
FIRST = "pair_first"
SECOND = "pair_second"


class Poly:
    """Univariate polynomial over a finite field, coefficients low degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: GF, coeffs):
        self.field = field
        self.coeffs = tuple(_fpoly.trim(coeffs))

    @classmethod
    def from_ints(cls, field: GF, ints) -> "Poly":
        """Build from integers reduced into the prime subfield."""
        return cls(field, [field.scalar(c) for c in ints])

    @classmethod
    def x(cls, field: GF) -> "Poly":
        return cls(field, [0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def _check(self, other: "Poly"):
        if not isinstance(other, Poly):
            return NotImplemented
        if other.field is not self.field:
            raise ValueError("field mismatch")
        return other

    def __add__(self, other):
        other = self._check(other)
        return Poly(self.field, _fpoly.add(self.field, list(self.coeffs), list(other.coeffs)))

    def __sub__(self, other):
        other = self._check(other)
        return Poly(self.field, _fpoly.sub(self.field, list(self.coeffs), list(other.coeffs)))

    def __neg__(self):
        return Poly(self.field, _fpoly.neg(self.field, list(self.coeffs)))

    def __mul__(self, other):
        other = self._check(other)
        return Poly(self.field, _fpoly.mul(self.field, list(self.coeffs), list(other.coeffs)))

    def __divmod__(self, other):
        other = self._check(other)
        q, r = _fpoly.divmod_(self.field, list(self.coeffs), list(other.coeffs))
        return Poly(self.field, q), Poly(self.field, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def gcd(self, other: "Poly") -> "Poly":
        other = self._check(other)
        return Poly(self.field, _fpoly.gcd(self.field, list(self.coeffs), list(other.coeffs)))

    def monic(self) -> "Poly":
        return Poly(self.field, _fpoly.monic(self.field, list(self.coeffs)))

    def __call__(self, x: int) -> int:
        return _fpoly.evaluate(self.field, list(self.coeffs), x)

    eval = __call__

    def lexkey(self) -> tuple:
        return (self.degree, tuple(self.field.coeffs(c) for c in self.coeffs))

    def is_irreducible(self) -> bool:
        """Test via ``gcd(f, x^(q^i) - x) = 1`` for all ``i <= deg/2``."""
        F = self.field
        f = list(self.monic().coeffs)
        d = len(f) - 1
        if d < 1:
            return False
        if d == 1:
            return True
        xp = [0, 1]
        cur = xp
        for _ in range(d // 2):
            cur = _fpoly.powmod(F, cur, F.order, f)
            if len(_fpoly.gcd(F, f, _fpoly.sub(F, cur, xp))) > 1:
                return False
        return True

    def to_json(self) -> list:
        return [list(self.field.coeffs(c)) for c in self.coeffs]

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        F = self.field
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if F.k == 1:
                v = c if c <= F.p // 2 else c - F.p
                sign = "-" if v < 0 else "+"
                mag = abs(v)
                cs = "" if (mag == 1 and i) else str(mag)
            else:
                sign, cs = "+", "" if (c == 1 and i) else f"[{','.join(map(str, F.coeffs(c)))}]"
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append((sign, cs + mono))
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, t in terms[1:]:
            out += f" {sign} {t}"
        return out


def reciprocal(f: Poly) -> Poly:
    """Monic reciprocal ``x^deg f(1/x)`` (requires ``f(0) != 0``)."""
    if not f:
        raise ValueError("reciprocal of the zero polynomial")
    if f.coeffs[0] == 0:
        raise ValueError("reciprocal needs a nonzero constant term")
    return Poly(f.field, list(reversed(f.coeffs))).monic()


@dataclass(frozen=True)
class Factor:
    poly: Poly
    kind: str
    partner: int | None
    root_order: int  # multiplicative order of the roots
    root_field: GF = field(repr=False)  # F_{q^deg}
    roots: tuple[int, ...] = field(repr=False)  # all roots inside root_field

    @property
    def degree(self) -> int:
        return self.poly.degree

    @property
    def self_reciprocal(self) -> bool:
        return self.kind == SELF

    @functools.cached_property
    def root(self) -> int:
        """Root with the lexicographically smallest coordinate vector."""
        return min(self.roots, key=self.root_field.coeffs)


@dataclass(frozen=True)
class FactorList:
    q: GF
    n: int
    sign: int  # -1 for x^n - 1, +1 for x^n + 1
    factors: tuple[Factor, ...]

    @property
    def modulus(self) -> Poly:
        c = [0] * (self.n + 1)
        c[0] = self.q.scalar(self.sign)
        c[-1] = 1
        return Poly(self.q, c)

    @property
    def num_self_reciprocal(self) -> int:
        return sum(f.kind == SELF for f in self.factors)

    @property
    def num_pairs(self) -> int:
        return sum(f.kind == FIRST for f in self.factors)

    def __len__(self):
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __getitem__(self, i):
        return self.factors[i]

    def product(self) -> Poly:
        out = Poly(self.q, [1])
        for f in self.factors:
            out = out * f.poly
        return out


def _cosets(Q: int, N: int, residues) -> list[list[int]]:
    seen = set()
    out = []
    for i in residues:
        if i in seen:
            continue
        c = []
        j = i
        while j not in c:
            c.append(j)
            j = j * Q % N
        seen.update(c)
        out.append(c)
    return out


def _check_semisimple(q: GF, n: int, sign: int):
    N = n if sign < 0 else 2 * n
    if n < 1:
        raise ValueError("n must be positive")
    if N % q.p == 0:
        raise ValueError(f"characteristic {q.p} divides {N}; the algebra is not semisimple")


def factor_shapes(q, n: int, sign: int = -1) -> list[tuple[int, str]]:
    """Degrees and kinds of the factors, in canonical order, without splitting fields.

    Pairs are reported once, as ``(degree, "pair")``.
    """
    q = field_from_order(q)
    _check_semisimple(q, n, sign)
    Q = q.order
    N = n if sign < 0 else 2 * n
    residues = range(N) if sign < 0 else range(1, N, 2)
    lin, selfs, pairs = [], [], []
    seen = set()
    for c in _cosets(Q, N, residues):
        if c[0] in seen:
            continue
        neg = {(-i) % N for i in c}
        seen.update(c)
        if neg == set(c):
            if len(c) == 1:
                lin.append((0 if c[0] == 0 else 1, (1, SELF)))
            else:
                selfs.append((len(c), SELF))
        else:
            seen.update(neg)
            pairs.append((len(c), "pair"))
    lin.sort()
    return [x for _, x in lin] + sorted(selfs) + sorted(pairs)


@functools.lru_cache(maxsize=None)
def factor_cyclotomic(q, n: int, sign: int = -1) -> FactorList:
    """Factor ``x^n - 1`` (``sign=-1``) or ``x^n + 1`` (``sign=+1``) over F_q."""
    q = field_from_order(q)
    if sign not in (-1, 1):
        raise ValueError("sign must be -1 or +1")
    _check_semisimple(q, n, sign)
    Q = q.order
    N = n if sign < 0 else 2 * n
    residues = range(N) if sign < 0 else range(1, N, 2)
    raw = []  # (poly, root_order, field, roots, coset)
    for c in _cosets(Q, N, residues):
        d = N // math.gcd(c[0], N)
        t = multiplicative_order(Q, d)
        E = make_field(q.p, q.k * t)
        zeta = E.element_of_order(d)
        roots = [E.pow(zeta, i // (N // d)) for i in c]
        coeffs = [1]
        for r in roots:
            coeffs = _fpoly.mul(E, coeffs, [E.neg(r), 1])
        if E is q:
            down = coeffs
        else:
            emb = embedding(q, E)
            down = [int(emb.preimage(x)) for x in coeffs]
        raw.append((Poly(q, down), d, E, tuple(roots), frozenset(c)))
    by_coset = {r[4]: r for r in raw}
    lin, selfs, pairs = [], [], []
    done = set()
    for poly, d, E, roots, c in raw:
        if c in done:
            continue
        neg = frozenset((-i) % N for i in c)
        done.add(c)
        if neg == c:
            entry = (poly, d, E, roots)
            if poly.degree == 1:
                lin.append(entry)
            else:
                selfs.append(entry)
        else:
            done.add(neg)
            other = by_coset[neg]
            a = (poly, d, E, roots)
            b = (other[0], other[1], other[2], other[3])
            if b[0].lexkey() < a[0].lexkey():
                a, b = b, a
            pairs.append((a, b))
    lin.sort(key=lambda e: e[1])  # x - 1 (root order 1) before x + 1
    selfs.sort(key=lambda e: e[0].lexkey())
    pairs.sort(key=lambda ab: ab[0][0].lexkey())
    factors: list[Factor] = []
    for poly, d, E, roots in lin + selfs:
        factors.append(Factor(poly, SELF, None, d, E, roots))
    for a, b in pairs:
        i = len(factors)
        factors.append(Factor(a[0], FIRST, i + 1, a[1], a[2], a[3]))
        factors.append(Factor(b[0], SECOND, i, b[1], b[2], b[3]))
    return FactorList(q, n, sign, tuple(factors))


def trace_polynomial(f: Poly) -> Poly:
    """``h`` of degree ``e`` with ``f(x) = x^e h(x + 1/x)`` for self-reciprocal ``f``."""
    F = f.field
    c = list(f.coeffs)
    if len(c) % 2 == 0 or reciprocal(f) != f.monic():
        raise ValueError("expected a self-reciprocal polynomial of even degree")
    e = (len(c) - 1) // 2
    # D_i(t) = x^i + x^-i in terms of t = x + 1/x
    D = [[F.scalar(2)], [0, 1]]
    for i in range(2, e + 1):
        D.append(_fpoly.sub(F, _fpoly.mul(F, [0, 1], D[-1]), D[-2]))
    h = [c[e]]
    for i in range(1, e + 1):
        h = _fpoly.add(F, h, _fpoly.scale(F, c[e + i], D[i]))
    return Poly(F, h)
