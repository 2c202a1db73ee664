"""Wedderburn-Artin block descriptions of semisimple group algebras.

A :class:`Decomposition` records ``F_q[G]`` as a direct sum of matrix rings
``M_n(F_{q^r})`` with multiplicities.  Blocks are kept sorted by ``(n, r)``
with equal shapes merged, so structurally equal algebras compare equal.
"""

from __future__ import annotations

import functools
import math
from collections import Counter
from dataclasses import dataclass

from .gf import GF, factor_int, field_from_order, multiplicative_order
from .groups import Cyclic, Dihedral, GroupSpec, Product, Quaternion
from .polyfact import SELF, factor_shapes

__all__ = [
    "Block",
    "Decomposition",
    "DxC",
    "DxD",
    "DxQ",
    "decompose_cyclic",
    "decompose_abelian",
    "decompose_dihedral",
    "decompose_quaternion",
    "tensor_decompositions",
    "decompose_group",
    "gcd_lcm_halved",
    "corollary_decompose",
    "dihedral_quaternion_iso",
]


@dataclass(frozen=True, order=True)
class Block:
    mult: int
    n: int
    r: int

    def __post_init__(self):
        if min(self.mult, self.n, self.r) < 1:
            raise ValueError("block parameters must be positive")


@dataclass(frozen=True)
class Decomposition:
    q: GF
    group_order: int
    blocks: tuple[Block, ...]

    @classmethod
    def from_summands(cls, q, group_order: int, summands) -> "Decomposition":
        """Canonicalise an iterable of ``(n, r)`` or ``(mult, n, r)`` tuples."""
        q = field_from_order(q)
        counts: Counter = Counter()
        for s in summands:
            if len(s) == 2:
                counts[(s[0], s[1])] += 1
            else:
                counts[(s[1], s[2])] += s[0]
        blocks = tuple(Block(m, n, r) for (n, r), m in sorted(counts.items()) if m)
        return cls(q, group_order, blocks)

    @property
    def dimension(self) -> int:
        return sum(b.mult * b.n * b.n * b.r for b in self.blocks)

    def summands(self) -> list[tuple[int, int]]:
        """Blocks expanded to individual ``(n, r)`` summands, in canonical order."""
        return [(b.n, b.r) for b in self.blocks for _ in range(b.mult)]

    @property
    def num_summands(self) -> int:
        return sum(b.mult for b in self.blocks)

    def to_json(self) -> dict:
        return {
            "q": self.q.to_json(),
            "order": self.group_order,
            "blocks": [{"mult": b.mult, "n": b.n, "r": b.r} for b in self.blocks],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Decomposition":
        q = GF.from_json(obj["q"])
        return cls.from_summands(q, int(obj["order"]), [(b["mult"], b["n"], b["r"]) for b in obj["blocks"]])

    def __str__(self):
        Q = self.q.order
        parts = []
        for b in self.blocks:
            fld = f"F_{Q}" if b.r == 1 else f"F_{Q}^{b.r}"
            term = fld if b.n == 1 else f"M_{b.n}({fld})"
            parts.append(term if b.mult == 1 else f"{b.mult}{term}")
        return " ⊕ ".join(parts)


def _decomp(q: GF, order: int, summands) -> Decomposition:
    dec = Decomposition.from_summands(q, order, summands)
    if dec.dimension != order:
        raise AssertionError(f"dimension audit failed: {dec.dimension} != {order}")
    return dec


def _require_semisimple(q: GF, order: int):
    if order % q.p == 0:
        raise ValueError(f"characteristic {q.p} divides the group order {order}")


def decompose_cyclic(q, n: int) -> Decomposition:
    q = field_from_order(q)
    _require_semisimple(q, n)
    out = []
    for deg, kind in factor_shapes(q, n, -1):
        out.extend([(1, deg)] * (1 if kind == SELF else 2))
    return _decomp(q, n, out)


def _mobius(n: int) -> int:
    fac = factor_int(n)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def decompose_abelian(q, orders) -> Decomposition:
    """Abelian group ``C_{a_1} x ... x C_{a_k}`` via element-order counting."""
    q = field_from_order(q)
    orders = [int(a) for a in orders] or [1]
    N = math.prod(orders)
    _require_semisimple(q, N)

    def dividing(d):  # elements whose order divides d
        return math.prod(math.gcd(d, a) for a in orders)

    out = []
    for d in _divisors(N):
        count = sum(_mobius(d // e) * dividing(e) for e in _divisors(d))
        if count:
            t = multiplicative_order(q.order, d)
            out.append((count // t, 1, t))
    return _decomp(q, N, out)


def _dihedral_summands(Q: int, n: int) -> list[tuple[int, int]]:
    out = []
    for deg, kind in factor_shapes(Q, n, -1):
        if deg == 1 and kind == SELF:
            out += [(1, 1), (1, 1)]
        elif kind == SELF:
            out.append((2, deg // 2))
        else:
            out.append((2, deg))
    return out


def decompose_dihedral(q, n: int) -> Decomposition:
    q = field_from_order(q)
    _require_semisimple(q, 2 * n)
    return _decomp(q, 2 * n, _dihedral_summands(q.order, n))


def _quaternion_extra(Q: int, m: int) -> list[tuple[int, int]]:
    """Summands contributed by the factors of ``x^m + 1``."""
    out = []
    for deg, kind in factor_shapes(Q, m, 1):
        if deg == 1 and kind == SELF:
            # x -> -1 and y^2 = -1: split iff -1 is a square in F_q
            out += [(1, 1), (1, 1)] if Q % 4 == 1 else [(1, 2)]
        elif kind == SELF:
            out.append((2, deg // 2))
        else:
            out.append((2, deg))
    return out


def decompose_quaternion(q, n: int, allow_degenerate: bool = False) -> Decomposition:
    """Generalised quaternion group of order ``4n``.

    ``n = 1`` (where the group is cyclic of order 4) is only accepted with
    ``allow_degenerate=True``; the result is then checked against the
    regular-representation oracle.
    """
    q = field_from_order(q)
    _require_semisimple(q, 4 * n)
    if n == 1 and not allow_degenerate:
        raise ValueError("Q1 is degenerate; pass allow_degenerate=True to route it through the oracle check")
    out = _dihedral_summands(q.order, n) + _quaternion_extra(q.order, n)
    dec = _decomp(q, 4 * n, out)
    if n == 1:
        from .oracle import decompose_regular

        check = decompose_regular(q, Quaternion(1))
        if check != dec:
            raise AssertionError(f"oracle disagrees for Q1: {check} vs {dec}")
    return dec


def tensor_decompositions(a: Decomposition, b: Decomposition) -> Decomposition:
    """Decomposition of ``F_q[G x H]`` from those of ``F_q[G]`` and ``F_q[H]``."""
    if a.q is not b.q:
        raise ValueError("base fields differ")
    out = []
    for x in a.blocks:
        for y in b.blocks:
            g = math.gcd(x.r, y.r)
            out.append((g * x.mult * y.mult, x.n * y.n, x.r * y.r // g))
    return _decomp(a.q, a.group_order * b.group_order, out)


def decompose_group(q, spec: GroupSpec, allow_degenerate: bool = False) -> Decomposition:
    q = field_from_order(q)
    _require_semisimple(q, spec.order)
    return _decompose_cached(q, spec, allow_degenerate)


@functools.lru_cache(maxsize=1024)
def _decompose_cached(q: GF, spec: GroupSpec, allow_degenerate: bool) -> Decomposition:
    if isinstance(spec, Cyclic):
        return decompose_cyclic(q, spec.n)
    if isinstance(spec, Dihedral):
        return decompose_dihedral(q, spec.n)
    if isinstance(spec, Quaternion):
        return decompose_quaternion(q, spec.n, allow_degenerate)
    if isinstance(spec, Product):
        parts = [decompose_group(q, f, allow_degenerate) for f in spec.factors()]
        out = parts[0]
        for p in parts[1:]:
            out = tensor_decompositions(out, p)
        return out
    raise TypeError(f"unsupported group spec {spec!r}")


def gcd_lcm_halved(m: int, n: int, both_even: bool = False) -> tuple[int, int]:
    """``(gcd(m/2, n), lcm(m/2, n))`` computed from ``gcd(m, n)`` and ``lcm(m, n)``.

    With ``both_even`` the pair for ``(m/2, n/2)`` is returned instead.
    """
    if m % 2:
        raise ValueError("m must be even")
    g = math.gcd(m, n)
    l = m * n // g
    if both_even:
        if n % 2:
            raise ValueError("n must be even")
        return g // 2, l // 2
    if m % (2 * g) == 0:
        return g, l // 2
    return g // 2, l


# -- closed-form product decompositions ---------------------------------------------


@dataclass(frozen=True)
class DxC:
    n: int
    a: int


@dataclass(frozen=True)
class DxD:
    n: int
    m: int


@dataclass(frozen=True)
class DxQ:
    n: int
    m: int


def _dihedral_rows(Q: int, n: int) -> list[tuple[str, int]]:
    """Indexed factors ``f_i`` of ``x^n - 1``: one row per linear/self-reciprocal factor or pair."""
    rows = []
    for deg, kind in factor_shapes(Q, n, -1):
        if deg == 1 and kind == SELF:
            rows.append(("lin", 1))
        elif kind == SELF:
            rows.append(("self", deg))
        else:
            rows.append(("pair", deg))
    return rows


def _dc_row(kind: str, fdeg: int, pdeg: int) -> tuple[int, int, int]:
    """One ``(mult, n, r)`` entry of the dihedral-by-cyclic table."""
    a = math.gcd(fdeg, pdeg)
    ell = fdeg * pdeg // a
    if kind == "lin":
        return (2 * a, 1, pdeg)
    if kind == "self":
        if fdeg % (2 * a) == 0:
            return (a, 2, ell // 2)
        return (a // 2, 2, ell)
    return (a, 2, ell)


def _dd_row(ki: str, di: int, kj: str, dj: int) -> tuple[int, int, int]:
    """One ``(mult, n, r)`` entry of the dihedral-by-dihedral table (first matching row)."""
    a = math.gcd(di, dj)
    ell = di * dj // a
    if ki == "lin" and kj == "lin":
        return (4 * a, 1, 1)
    # multiplicity table
    if (ki == "lin" and kj != "lin") or (ki != "lin" and kj == "lin"):
        d = 2 * a
    elif ki == "self" and kj == "self":
        d = a // 2
    elif ki == "self" and kj == "pair" and di % (2 * a):
        d = a // 2
    elif ki == "pair" and kj == "self" and dj % (2 * a):
        d = a // 2
    else:
        d = a
    # block table
    if (ki == "self" and kj == "lin") or (ki == "lin" and kj == "self"):
        return (d, 2, ell // 2)
    if (ki == "pair" and kj == "lin") or (ki == "lin" and kj == "pair"):
        return (d, 2, ell)
    if ki == "self" and kj == "self":
        return (d, 4, ell // 2)
    if ki == "self" and kj == "pair" and di % (2 * a) == 0:
        return (d, 4, ell // 2)
    if ki == "pair" and kj == "self" and dj % (2 * a) == 0:
        return (d, 4, ell // 2)
    return (d, 4, ell)


def corollary_decompose(q, case) -> Decomposition:
    """Closed-form decomposition of ``F_q[D_n x C_a]``, ``F_q[D_n x D_m]`` or ``F_q[D_n x Q_m]``.

    This evaluates the case tables directly and serves as an independent check
    of the generic tensor path.  For ``D_n x Q_m`` with ``m`` odd and
    ``q = 3 (mod 4)``, the factor ``x + 1`` of ``x^m + 1`` contributes a field
    ``F_{q^2}`` rather than two copies of ``F_q``; those rows are evaluated as
    dihedral-by-cyclic rows of degree 2.
    """
    q = field_from_order(q)
    Q = q.order
    out = []
    if isinstance(case, DxC):
        order = 2 * case.n * case.a
        _require_semisimple(q, order)
        cyc = [deg for deg, kind in factor_shapes(Q, case.a, -1) for _ in range(1 if kind == SELF else 2)]
        for kind, fdeg in _dihedral_rows(Q, case.n):
            for pdeg in cyc:
                out.append(_dc_row(kind, fdeg, pdeg))
    elif isinstance(case, (DxD, DxQ)):
        order = 2 * case.n * (2 * case.m if isinstance(case, DxD) else 4 * case.m)
        _require_semisimple(q, order)
        rows_n = _dihedral_rows(Q, case.n)
        for ki, di in rows_n:
            for kj, dj in _dihedral_rows(Q, case.m):
                out.append(_dd_row(ki, di, kj, dj))
        if isinstance(case, DxQ):
            for deg, kind in factor_shapes(Q, case.m, 1):
                kj = "lin" if (deg == 1 and kind == SELF) else ("self" if kind == SELF else "pair")
                for ki, di in rows_n:
                    if kj == "lin" and Q % 4 == 3:
                        out.append(_dc_row(ki, di, 2))
                    else:
                        out.append(_dd_row(ki, di, kj, deg))
    else:
        raise TypeError(f"unknown corollary case {case!r}")
    return _decomp(q, order, out)


def dihedral_quaternion_iso(q, t: int) -> bool:
    """Whether ``F_q[D_{2t}]`` and ``F_q[Q_t]`` are isomorphic (semisimple case)."""
    Q = q.order if isinstance(q, GF) else int(q)
    return t % 2 == 0 or Q % 4 == 1
