"""Group codes: blockwise ideals, concrete linear codes, counting and dihedral duals."""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass

import numpy as np

from . import linalg
from .gf import GF, field_from_order, make_field
from .wa import Decomposition

__all__ = [
    "rref",
    "LinearCode",
    "IdealSpec",
    "CodeParams",
    "code_dimension",
    "gaussian_binomial",
    "ideal_count",
    "count_group_codes",
    "code_from_ideal",
    "dual_code",
    "ideal_from_element",
    "dihedral_dual_ideal",
    "encode_entry",
    "decode_entry",
]


def rref(F, A) -> np.ndarray:
    """Reduced row-echelon form with zero rows removed."""
    F = field_from_order(F)
    A = np.asarray(A)
    if A.size == 0:
        return np.zeros((0,) + A.shape[1:], dtype=F.dtype)
    return linalg.rref(F, A)


# ---------------------------------------------------------------------------
# entries in JSON


def encode_entry(F: GF, a: int):
    """JSON form of a field element: the integer for prime fields, else its F_p digits."""
    return int(a) if F.k == 1 else [int(c) for c in F.coeffs(int(a))]


_POW_RE = re.compile(r"^\s*([+-]?)\s*(?:(\d+)\s*\*?\s*)?(?:([a-z])\s*(?:\^\s*(-?\d+))?)?\s*$")


def decode_entry(F: GF, v) -> int:
    """Inverse of :func:`encode_entry`; integers always denote prime-subfield scalars.

    Strings like ``"-a^3"`` are also accepted; ``a`` stands for the primitive
    element with the lexicographically smallest coordinates.
    """
    if isinstance(v, bool):
        raise ValueError("booleans are not field elements")
    if isinstance(v, int):
        return F.scalar(v)
    if isinstance(v, (list, tuple)):
        if len(v) > F.k:
            raise ValueError(f"too many coordinates for {F}")
        return F.from_coeffs([int(c) % F.p for c in v] + [0] * (F.k - len(v)))
    if isinstance(v, str):
        m = _POW_RE.match(v)
        if not m or not (m.group(2) or m.group(3)):
            raise ValueError(f"cannot parse field element {v!r}")
        sign, coef, sym, exp = m.groups()
        val = F.scalar(int(coef)) if coef else 1
        if sym:
            val = F.mul(val, F.pow(F.primitive_element(), int(exp) if exp else 1))
        return F.neg(val) if sign == "-" else val
    raise ValueError(f"cannot interpret {v!r} as a field element")


# ---------------------------------------------------------------------------
# linear codes


class LinearCode:
    """Linear code over F_q with a full-rank generator matrix in RREF."""

    def __init__(self, q, generator, length: int | None = None):
        self.field = field_from_order(q)
        G = np.asarray(generator, dtype=self.field.dtype)
        if G.ndim == 1:
            G = G.reshape(0 if G.size == 0 else 1, -1)
        if G.size == 0:
            if length is None and G.ndim == 2:
                length = G.shape[1]
            if length is None:
                raise ValueError("the length of an empty code must be given")
            G = np.zeros((0, length), dtype=self.field.dtype)
        else:
            G = linalg.rref(self.field, G)
        self.generator = G

    @classmethod
    def from_rows(cls, q, rows) -> "LinearCode":
        rows = np.asarray(rows)
        return cls(q, rows, length=rows.shape[-1])

    @classmethod
    def full(cls, q, n: int) -> "LinearCode":
        F = field_from_order(q)
        return cls(F, np.eye(n, dtype=np.int64).astype(F.dtype))

    @classmethod
    def zero(cls, q, n: int) -> "LinearCode":
        return cls(q, np.zeros((0, n), dtype=np.int64), length=n)

    @property
    def n(self) -> int:
        return self.generator.shape[1]

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    @property
    def q(self) -> int:
        return self.field.order

    def dual(self) -> "LinearCode":
        return dual_code(self)

    def parity_check(self) -> np.ndarray:
        return dual_code(self).generator

    def contains(self, v) -> bool:
        v = np.asarray(v)
        if self.k == 0:
            return not np.any(v != 0)
        return linalg.in_rowspace(self.field, self.generator, v)

    def contains_code(self, other: "LinearCode") -> bool:
        self._same(other)
        if other.k == 0:
            return True
        return linalg.rank(self.field, np.concatenate([self.generator, other.generator])) == self.k

    def _same(self, other: "LinearCode"):
        if other.field is not self.field or other.n != self.n:
            raise ValueError("codes differ in field or length")

    def encode(self, msg) -> np.ndarray:
        return linalg.matmul(self.field, np.asarray(msg, dtype=self.field.dtype), self.generator)

    def __eq__(self, other):
        if not isinstance(other, LinearCode):
            return NotImplemented
        return (
            self.field is other.field
            and self.generator.shape == other.generator.shape
            and bool(np.all(self.generator == other.generator))
        )

    def __hash__(self):
        return hash((id(self.field), self.generator.shape, self.generator.tobytes() if self.field.dtype is not object else None))

    def __repr__(self):
        return f"LinearCode([{self.n}, {self.k}]_{self.q})"

    def to_json(self) -> dict:
        F = self.field
        return {
            "q": F.to_json(),
            "n": self.n,
            "k": self.k,
            "generator": [[encode_entry(F, a) for a in row] for row in self.generator],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "LinearCode":
        F = GF.from_json(obj["q"]) if isinstance(obj["q"], dict) else field_from_order(obj["q"])
        rows = [[decode_entry(F, a) for a in row] for row in obj["generator"]]
        n = int(obj["n"])
        return cls(F, np.array(rows, dtype=F.dtype).reshape(len(rows), n), length=n)


def dual_code(c: LinearCode) -> LinearCode:
    """Euclidean dual ``{v : v . c = 0 for all c in C}``."""
    F = c.field
    if c.k == 0:
        return LinearCode.full(F, c.n)
    N = linalg.nullspace(F, c.generator)
    return LinearCode(F, N, length=c.n)


@dataclass(frozen=True)
class CodeParams:
    """``[n, k, d]`` with ``d`` possibly a bound; ``d_status`` is ``exact``, ``upper_bound`` or ``unknown``."""

    n: int
    k: int
    d: int | None = None
    d_status: str = "unknown"
    method: str | None = None

    def __post_init__(self):
        if not 0 <= self.k <= self.n:
            raise ValueError("need 0 <= k <= n")
        if self.d_status == "exact" and self.k >= 1 and not 1 <= self.d <= self.n - self.k + 1:
            raise ValueError("exact distance violates the Singleton bound")

    def __str__(self):
        d = "?" if self.d is None else (str(self.d) if self.d_status == "exact" else f"<={self.d}")
        return f"[{self.n}, {self.k}, {d}]"

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "d": {"value": self.d, "status": self.d_status, "method": self.method}}


# ---------------------------------------------------------------------------
# ideals


class IdealSpec:
    """Left ideal of ``(+) M_{n_i}(F_{q^{r_i}})`` given by one RREF generator per summand.

    Each generator is stored as an ``n_i x n_i`` matrix whose nonzero rows are in
    reduced row-echelon form, followed by zero rows.
    """

    def __init__(self, decomposition: Decomposition, gens):
        self.decomposition = decomposition
        q = decomposition.q
        shapes = decomposition.summands()
        gens = list(gens)
        if len(gens) != len(shapes):
            raise ValueError(f"expected {len(shapes)} block generators, got {len(gens)}")
        self.fields = [make_field(q.p, q.k * r) for _, r in shapes]
        self.gens = []
        for (n, _), E, B in zip(shapes, self.fields, gens):
            B = np.asarray(B, dtype=E.dtype).reshape(-1, n) if np.size(B) else np.zeros((0, n), dtype=E.dtype)
            R = rref(E, B)
            full = E.zeros((n, n))
            full[: R.shape[0]] = R
            self.gens.append(full)

    @classmethod
    def zero(cls, dec: Decomposition) -> "IdealSpec":
        return cls(dec, [np.zeros((n, n), dtype=np.int64) for n, _ in dec.summands()])

    @classmethod
    def full(cls, dec: Decomposition) -> "IdealSpec":
        return cls(dec, [np.eye(n, dtype=np.int64) for n, _ in dec.summands()])

    def ranks(self) -> list[int]:
        return [int(np.count_nonzero(np.any(g != 0, axis=1))) for g in self.gens]

    def __eq__(self, other):
        if not isinstance(other, IdealSpec):
            return NotImplemented
        return self.decomposition == other.decomposition and all(np.array_equal(a, b) for a, b in zip(self.gens, other.gens))

    def __repr__(self):
        return f"IdealSpec(ranks={self.ranks()})"

    def to_json(self) -> dict:
        return {
            "decomposition": self.decomposition.to_json(),
            "blocks": [{"gen": [[encode_entry(E, a) for a in row] for row in g]} for E, g in zip(self.fields, self.gens)],
        }

    @classmethod
    def from_json(cls, obj: dict, decomposition: Decomposition | None = None) -> "IdealSpec":
        dec = decomposition if decomposition is not None else Decomposition.from_json(obj["decomposition"])
        q = dec.q
        gens = []
        blocks = obj["blocks"]
        shapes = dec.summands()
        if len(blocks) != len(shapes):
            raise ValueError(f"expected {len(shapes)} blocks, got {len(blocks)}")
        for b, (n, r) in zip(blocks, shapes):
            E = make_field(q.p, q.k * r)
            rows = b["gen"] if isinstance(b, dict) else b
            if isinstance(rows, str):
                rows = {"0": [], "zero": [], "1": np.eye(n, dtype=int).tolist(), "full": np.eye(n, dtype=int).tolist()}[rows]
            gens.append(np.array([[decode_entry(E, a) for a in row] for row in rows], dtype=E.dtype).reshape(-1, n))
        return cls(dec, gens)


def code_dimension(ideal: IdealSpec) -> int:
    """``sum_i n_i r_i rank(B_i)``."""
    return sum(n * r * rk for (n, r), rk in zip(ideal.decomposition.summands(), ideal.ranks()))


# ---------------------------------------------------------------------------
# counting


def gaussian_binomial(q: int, n: int, k: int) -> int:
    """Number of ``k``-dimensional subspaces of ``F_q^n``."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    num, den = 1, 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@functools.lru_cache(maxsize=None)
def ideal_count(q: int, n: int) -> int:
    """Number of left ideals of ``M_n(F_q)``, i.e. of subspaces of ``F_q^n``."""
    if n < 1:
        raise ValueError("n must be positive")
    return sum(gaussian_binomial(q, n, k) for k in range(n + 1))


def count_group_codes(dec: Decomposition) -> int:
    Q = dec.q.order
    out = 1
    for b in dec.blocks:
        out *= ideal_count(Q**b.r, b.n) ** b.mult
    return out


# ---------------------------------------------------------------------------
# ideal -> code


def _ideal_spanning_vectors(iso, ideal: IdealSpec) -> np.ndarray:
    q = iso.q
    lay = iso.layout
    vecs = []
    for i, (g, (n, r)) in enumerate(zip(ideal.gens, lay.shapes)):
        E = lay.fields[i]
        R = g[np.any(g != 0, axis=1)]
        rho = R.shape[0]
        if rho == 0:
            continue
        basis = np.array(lay.exts[i].basis(), dtype=E.dtype)  # r scalars spanning E over F_q
        mats = E.zeros((n, rho, r, n, n))
        for u in range(n):
            mats[u, :, :, u, :] = E.mul(basis[None, :, None], R[:, None, :])
        flat = lay.flatten_block(i, mats).reshape(-1, n * n * r)
        full = q.zeros((flat.shape[0], lay.dim))
        full[:, lay.offsets[i] : lay.offsets[i] + n * n * r] = flat
        vecs.append(full)
    if not vecs:
        return q.zeros((0, lay.dim))
    return np.concatenate(vecs)


def code_from_ideal(iso, ideal: IdealSpec) -> LinearCode:
    """Pull a blockwise ideal back through ``psi`` to a code of length ``|G|``."""
    if ideal.decomposition != iso.decomposition:
        raise ValueError("ideal and isomorphism have different decompositions")
    V = _ideal_spanning_vectors(iso, ideal)
    if V.shape[0] == 0:
        return LinearCode.zero(iso.q, iso.dim)
    rows = linalg.matmul(iso.q, V, np.ascontiguousarray(iso.inverse.T))
    return LinearCode.from_rows(iso.q, rows)


def ideal_from_element(iso, u) -> IdealSpec:
    """Blockwise principal left ideal generated by ``psi(u)``."""
    mats = iso.layout.unflatten(iso.apply(u))
    return IdealSpec(iso.decomposition, mats)


# ---------------------------------------------------------------------------
# dihedral duals


def _dual_form(E: GF, label) -> np.ndarray:
    """Inverse (up to a scalar) of the Gram matrix of the involution on a 2x2 block."""
    if label[0] == "self":
        a = label[2]
        return E.array([[2 % E.p, E.neg(a)], [E.neg(a), 2 % E.p]])
    return E.array([[0, 1], [1, 0]])


def dihedral_dual_ideal(q, n: int, ideal: IdealSpec) -> IdealSpec:
    """Ideal of the dual code of the ``F_q[D_n]`` code given by ``ideal``.

    One-dimensional summands swap zero and full.  On a 2x2 summand with
    generator ``M`` the dual is spanned by the rows ``k^T P`` for ``k`` in the
    kernel of ``M``, where ``P`` is ``[[2, -a], [-a, 2]]`` on self-reciprocal
    summands (``a = alpha + 1/alpha``) and the swap matrix on pair summands.
    Writing the results in RREF gives, for instance, ``[[1, 0], [0, 0]] ->
    [[a, -2]]`` on self-reciprocal summands and ``[[1, l], [0, 0]] ->
    [[1, -l]]`` on pair summands.
    """
    from .galg import build_iso
    from .groups import Dihedral

    iso = build_iso(q, Dihedral(n))
    if ideal.decomposition != iso.decomposition:
        raise ValueError(f"ideal is not over the decomposition of F_q[D_{n}]")
    out = []
    for s, E, g in zip(iso.summands, ideal.fields, ideal.gens):
        if s.n == 1:
            out.append(E.array([[0 if np.any(g != 0) else 1]]))
            continue
        K = linalg.nullspace(E, g)
        out.append(linalg.matmul(E, K, _dual_form(E, s.label)) if K.shape[0] else E.zeros((0, 2)))
    return IdealSpec(ideal.decomposition, out)
