"""Group algebras F_q[G] and explicit Wedderburn-Artin isomorphisms.

An :class:`AlgebraElement` is a coefficient vector indexed by the canonical
element order of its group.  :func:`build_iso` realises
``psi : F_q[G] -> (+) M_n(F_{q^r})`` for cyclic and dihedral groups and their
direct products, as a dense invertible matrix over F_q acting on flattened
block coordinates.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .gf import GF, embedding, extension, field_from_order, make_field
from .groups import Cyclic, Dihedral, GroupSpec, group_table
from .polyfact import FIRST, SECOND, SELF, factor_cyclotomic, trace_polynomial
from .wa import Decomposition

__all__ = [
    "AlgebraElement",
    "algebra_mul",
    "Summand",
    "BlockLayout",
    "AlgebraIso",
    "build_iso",
    "apply_iso",
    "inverse_iso",
    "left_ideal_from_element",
    "dihedral_block_data",
]


# ---------------------------------------------------------------------------
# algebra elements


class AlgebraElement:
    """Element of ``F_q[G]`` as a coefficient vector in canonical element order."""

    __slots__ = ("spec", "field", "coeffs")

    def __init__(self, spec: GroupSpec, q, coeffs=None):
        self.spec = spec
        self.field = field_from_order(q)
        N = spec.order
        if coeffs is None:
            coeffs = self.field.zeros(N)
        coeffs = np.asarray(coeffs, dtype=self.field.dtype)
        if coeffs.shape != (N,):
            raise ValueError(f"expected {N} coefficients, got shape {coeffs.shape}")
        self.coeffs = coeffs

    @classmethod
    def identity(cls, spec: GroupSpec, q) -> "AlgebraElement":
        e = cls(spec, q)
        e.coeffs[group_table(spec).identity] = 1
        return e

    @classmethod
    def basis(cls, spec: GroupSpec, q, g) -> "AlgebraElement":
        t = group_table(spec)
        e = cls(spec, q)
        e.coeffs[t.index[spec.normalize(g)] if isinstance(g, tuple) else int(g)] = 1
        return e

    @classmethod
    def random(cls, spec: GroupSpec, q, rng) -> "AlgebraElement":
        F = field_from_order(q)
        return cls(spec, F, F.random(rng, spec.order))

    def _same(self, other: "AlgebraElement"):
        if not isinstance(other, AlgebraElement):
            raise TypeError("expected an AlgebraElement")
        if other.spec != self.spec or other.field is not self.field:
            raise ValueError("elements of different group algebras")

    def __add__(self, other):
        self._same(other)
        return AlgebraElement(self.spec, self.field, self.field.add(self.coeffs, other.coeffs))

    def __sub__(self, other):
        self._same(other)
        return AlgebraElement(self.spec, self.field, self.field.sub(self.coeffs, other.coeffs))

    def __neg__(self):
        return AlgebraElement(self.spec, self.field, self.field.neg(self.coeffs))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return algebra_mul(self, other)
        c = self.field.scalar(other) if self.field.k == 1 else int(other)
        return AlgebraElement(self.spec, self.field, self.field.mul(c, self.coeffs))

    def __rmul__(self, c):
        return self.__mul__(c)

    def __pow__(self, e: int):
        out = AlgebraElement.identity(self.spec, self.field)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.spec == other.spec and self.field is other.field and bool(np.all(self.coeffs == other.coeffs))

    def __hash__(self):
        return hash((self.spec, id(self.field), tuple(int(c) for c in self.coeffs)))

    def is_zero(self) -> bool:
        return not np.any(self.coeffs != 0)

    def support(self) -> list[tuple]:
        t = group_table(self.spec)
        return [t.elements[i] for i in np.nonzero(self.coeffs)[0]]

    def to_json(self) -> dict:
        F = self.field
        vals = [int(c) if F.k == 1 else list(F.coeffs(int(c))) for c in self.coeffs]
        return {"group": str(self.spec), "q": F.to_json(), "coeffs": vals}

    def __repr__(self):
        from .parse import format_element

        return f"AlgebraElement({format_element(self)})"


def algebra_mul(u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    """Convolution product: ``(uv)_g = sum_h u_h v_{h^-1 g}``."""
    u._same(v)
    F = u.field
    t = group_table(u.spec)
    if F.mode == "prime" and F.dtype is not object and len(t) * (F.p - 1) ** 2 < (1 << 62):
        out = (u.coeffs.astype(np.int64) @ v.coeffs.astype(np.int64)[t.ldiv]) % F.p
        return AlgebraElement(u.spec, F, out)
    out = F.zeros(len(t))
    for h in np.nonzero(u.coeffs != 0)[0]:
        idx = t.mul[h]
        out[idx] = F.add(out[idx], F.mul(int(u.coeffs[h]), v.coeffs))
    return AlgebraElement(u.spec, F, out)


def left_ideal_from_element(u: AlgebraElement):
    """Row space of ``{g u : g in G}`` as a :class:`~gacodes.codes.LinearCode`."""
    from .codes import LinearCode

    t = group_table(u.spec)
    N = len(t)
    rows = u.field.zeros((N, N))
    for g in range(N):
        rows[g, t.mul[g]] = u.coeffs
    return LinearCode.from_rows(u.field, rows)


# ---------------------------------------------------------------------------
# block layout


@dataclass
class Summand:
    """One summand ``M_n(F_{q^r})`` together with the images of all group elements."""

    n: int
    r: int
    field: GF
    images: np.ndarray  # (|G|, n, n) codes over ``field``
    label: tuple = ()

    @property
    def size(self) -> int:
        return self.n * self.n * self.r


class BlockLayout:
    """Flattened coordinates of ``(+) M_{n_i}(F_{q^{r_i}})`` over F_q.

    Blocks follow one another; inside a block the matrix entries are taken
    row-major and each entry contributes its ``r`` coordinates over F_q.
    """

    def __init__(self, q: GF, shapes: list[tuple[int, int]]):
        self.q = q
        self.shapes = list(shapes)
        self.fields = [make_field(q.p, q.k * r) for _, r in shapes]
        self.exts = [extension(E, q) for E in self.fields]
        self.offsets = []
        off = 0
        for n, r in shapes:
            self.offsets.append(off)
            off += n * n * r
        self.dim = off
        # maximal runs of consecutive blocks with one shape: (first block, count)
        self.runs = []
        for i, sh in enumerate(self.shapes):
            if self.runs and self.shapes[self.runs[-1][0]] == sh:
                self.runs[-1][1] += 1
            else:
                self.runs.append([i, 1])

    def __len__(self):
        return len(self.shapes)

    def flatten_block(self, i: int, mats) -> np.ndarray:
        """Flatten one block; ``mats`` may carry leading batch axes."""
        n, r = self.shapes[i]
        mats = np.asarray(mats, dtype=self.fields[i].dtype)
        c = self.exts[i].coords(mats)  # (..., n, n, r)
        return c.reshape(mats.shape[:-2] + (n * n * r,))

    def unflatten_block(self, i: int, vec) -> np.ndarray:
        n, r = self.shapes[i]
        o = self.offsets[i]
        v = np.asarray(vec)[..., o : o + n * n * r]
        v = v.reshape(v.shape[:-1] + (n, n, r))
        return self.exts[i].from_coords(v)

    def flatten(self, mats: list) -> np.ndarray:
        return np.concatenate([self.flatten_block(i, m) for i, m in enumerate(mats)], axis=-1)

    def unflatten(self, vec) -> list[np.ndarray]:
        return [self.unflatten_block(i, vec) for i in range(len(self.shapes))]

    def identity(self) -> np.ndarray:
        mats = []
        for (n, _), E in zip(self.shapes, self.fields):
            mats.append(np.eye(n, dtype=np.int64).astype(E.dtype))
        return self.flatten(mats)

    def mul(self, v, w) -> np.ndarray:
        v, w = np.asarray(v), np.asarray(w)
        out = self.q.zeros(self.dim)
        for first, count in self.runs:  # one batched product per run of equal blocks
            n, r = self.shapes[first]
            ext = self.exts[first]
            lo = self.offsets[first]
            hi = lo + count * n * n * r
            A = ext.from_coords(v[lo:hi].reshape(count, n, n, r))
            B = ext.from_coords(w[lo:hi].reshape(count, n, n, r))
            out[lo:hi] = ext.coords(_batched_matmul(self.fields[first], A, B)).reshape(-1)
        return out

    def left_mult_matrix(self, v) -> np.ndarray:
        """F_q-matrix of ``w -> v w`` in flattened coordinates."""
        cols = []
        for j in range(self.dim):
            e = np.zeros(self.dim, dtype=np.int64)
            e[j] = 1
            cols.append(self.mul(v, e))
        return np.array(cols).T


# ---------------------------------------------------------------------------
# per-factor representations


def _frob_q(E: GF, Q: int, a, k: int):
    return E.pow(a, Q**k) if k else a


def _mat_powers(E: GF, X: np.ndarray, count: int) -> np.ndarray:
    n = X.shape[0]
    out = E.zeros((count, n, n))
    cur = np.eye(n, dtype=np.int64).astype(E.dtype)
    for i in range(count):
        out[i] = cur
        cur = linalg.matmul(E, cur, X)
    return out


@functools.lru_cache(maxsize=None)
def dihedral_block_data(q: GF, n: int) -> list[tuple]:
    """Per-factor data for ``F_q[D_n]`` in factor order.

    Entries are ``("lin", sign)`` for ``x -/+ 1`` (``sign`` is the image of ``x``),
    ``("self", E, a)`` for a self-reciprocal factor with ``a = alpha + 1/alpha``
    in ``E = F_{q^e}``, and ``("pair", E, alpha)`` for a reciprocal pair with
    ``alpha`` a root of its first member.
    """
    fl = factor_cyclotomic(q, n, -1)
    out = []
    for f in fl:
        if f.kind == SECOND:
            continue
        if f.degree == 1 and f.kind == SELF:
            out.append(("lin", 1 if f.root_order == 1 else q.neg(1)))
        elif f.kind == FIRST:
            out.append(("pair", f.root_field, f.root))
        else:
            h = trace_polynomial(f.poly)
            E = make_field(q.p, q.k * h.degree)
            emb = embedding(q, E)
            coeffs = [emb(c) for c in h.coeffs]
            a = min(E.roots(coeffs), key=E.coeffs)
            out.append(("self", E, a))
    return out


def _cyclic_summands(q: GF, n: int) -> list[Summand]:
    out = []
    for idx, f in enumerate(factor_cyclotomic(q, n, -1)):
        E, alpha = f.root_field, f.root
        imgs = E.zeros((n, 1, 1))
        cur = 1
        for i in range(n):
            imgs[i, 0, 0] = cur
            cur = E.mul(cur, alpha)
        out.append(Summand(1, f.degree, E, imgs, ("cyclic", idx)))
    return out


def _dihedral_summands(q: GF, n: int) -> list[Summand]:
    order = [(i, j) for i in range(n) for j in range(2)]
    out = []
    for idx, data in enumerate(dihedral_block_data(q, n)):
        if data[0] == "lin":
            sx = data[1]
            for sy in (sx, q.neg(sx)):  # y -> x's sign first
                imgs = q.zeros((2 * n, 1, 1))
                for t, (i, j) in enumerate(order):
                    v = q.pow(sx, i)
                    imgs[t, 0, 0] = q.mul(v, sy) if j else v
                out.append(Summand(1, 1, q, imgs, ("lin", idx, sx, sy)))
            continue
        kind, E, val = data
        if kind == "self":
            a = val
            X = E.array([[0, 1], [E.neg(1), a]])
            Y = E.array([[1, 0], [a, E.neg(1)]])
            r = E.k // q.k
        else:
            X = E.array([[val, 0], [0, E.inv(val)]])
            Y = E.array([[0, 1], [1, 0]])
            r = E.k // q.k
        xp = _mat_powers(E, X, n)
        imgs = E.zeros((2 * n, 2, 2))
        for t, (i, j) in enumerate(order):
            imgs[t] = linalg.matmul(E, xp[i], Y) if j else xp[i]
        out.append(Summand(2, r, E, imgs, (kind, idx, val)))
    return out


def _factor_summands(q: GF, spec: GroupSpec) -> list[Summand]:
    if isinstance(spec, Cyclic):
        return _cyclic_summands(q, spec.n)
    if isinstance(spec, Dihedral):
        return _dihedral_summands(q, spec.n)
    raise ValueError(f"no explicit isomorphism for {spec}")


def _kron(E: GF, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Batched Kronecker product of ``(N, a, a)`` and ``(M, b, b)`` -> ``(N, M, ab, ab)``."""
    N, a, _ = A.shape
    M, b, _ = B.shape
    P = E.mul(A[:, None, :, None, :, None], B[None, :, None, :, None, :])
    return P.reshape(N, M, a * b, a * b)


def _combine(q: GF, left: list[Summand], right: list[Summand]) -> list[Summand]:
    Q = q.order
    out = []
    for sa in left:
        for sb in right:
            g = math.gcd(sa.r, sb.r)
            ell = sa.r * sb.r // g
            L = make_field(q.p, q.k * ell)
            ia = embedding(sa.field, L)
            ib = embedding(sb.field, L)
            A = ia(sa.images) if sa.field is not L else sa.images
            B0 = ib(sb.images) if sb.field is not L else sb.images
            A = np.asarray(A, dtype=L.dtype)
            B0 = np.asarray(B0, dtype=L.dtype)
            for k in range(g):
                B = _frob_q(L, Q, B0, k) if k else B0
                imgs = _kron(L, A, B)
                imgs = imgs.reshape((-1,) + imgs.shape[2:])
                out.append(Summand(sa.n * sb.n, ell, L, imgs, ("product", sa.label, sb.label, k)))
    return out


# ---------------------------------------------------------------------------
# the isomorphism


class AlgebraIso:
    """Explicit isomorphism of ``F_q[G]`` onto its block decomposition."""

    def __init__(self, q: GF, spec: GroupSpec, summands: list[Summand]):
        self.q = q
        self.spec = spec
        self.summands = summands
        self.layout = BlockLayout(q, [(s.n, s.r) for s in summands])
        self.decomposition = Decomposition.from_summands(q, spec.order, [(s.n, s.r) for s in summands])
        N = spec.order
        M = np.concatenate([self.layout.flatten_block(i, s.images) for i, s in enumerate(summands)], axis=1)
        self.matrix = np.ascontiguousarray(M.T).astype(q.dtype)  # column g = psi(g)
        if self.matrix.shape != (N, N):
            raise AssertionError("block dimensions do not add up to the group order")
        self.inverse = linalg.inverse(q, self.matrix)

    @property
    def dim(self) -> int:
        return self.spec.order

    def apply(self, u) -> np.ndarray:
        c = u.coeffs if isinstance(u, AlgebraElement) else np.asarray(u)
        return linalg.matmul(self.q, self.matrix, c)

    def apply_inverse(self, v) -> AlgebraElement:
        return AlgebraElement(self.spec, self.q, linalg.matmul(self.q, self.inverse, np.asarray(v)))

    def image(self, g) -> list[np.ndarray]:
        """Block matrices of a group element (given as coordinates or index)."""
        t = group_table(self.spec)
        i = t.index[self.spec.normalize(g)] if isinstance(g, tuple) else int(g)
        return [s.images[i] for s in self.summands]

    # -- verification ------------------------------------------------------------
    def verify(self, rng=None, random_pairs: int = 100) -> None:
        """Check relations, bijectivity and multiplicativity; raise ``AssertionError`` on failure."""
        t = group_table(self.spec)
        q = self.q
        if linalg.rank(q, self.matrix) != self.dim:
            raise AssertionError("psi is not bijective")
        for s in self.summands:
            E = s.field
            eye = np.eye(s.n, dtype=np.int64).astype(E.dtype)
            if not np.array_equal(s.images[t.identity], eye):
                raise AssertionError("psi(1) is not the identity")
        self._verify_relations()
        # multiplicativity on all basis pairs
        for s in self.summands:
            E = s.field
            prod = _batched_matmul(E, s.images[:, None], s.images[None, :])
            if not np.array_equal(prod, s.images[t.mul]):
                raise AssertionError("psi is not multiplicative on basis pairs")
        if self.dim > 32 and random_pairs:
            rng = rng if rng is not None else np.random.default_rng(0)
            for _ in range(random_pairs):
                u = AlgebraElement.random(self.spec, q, rng)
                v = AlgebraElement.random(self.spec, q, rng)
                lhs = self.apply(u * v)
                rhs = self.layout.mul(self.apply(u), self.apply(v))
                if not np.array_equal(lhs, rhs):
                    raise AssertionError("psi is not multiplicative on a random pair")

    def _verify_relations(self):
        factors = self.spec.factors()
        ident = self.spec.identity
        t = group_table(self.spec)
        for pos, f in enumerate(factors):

            def lift(c, pos=pos):
                if len(factors) == 1:
                    return c
                out = list(ident)
                out[pos] = c
                return tuple(out)

            gens = f.generators()
            checks = []
            if isinstance(f, Cyclic):
                checks.append([(gens["z"], f.n)])
            else:
                x, y = gens["x"], gens["y"]
                checks += [[(x, f.n)], [(y, 2)], [(y, 1), (x, 1), (y, 1), (x, 1)]]
            for word in checks:
                for s in self.summands:
                    E = s.field
                    acc = np.eye(s.n, dtype=np.int64).astype(E.dtype)
                    for g, e in word:
                        img = s.images[t.index[lift(g)]]
                        for _ in range(e):
                            acc = linalg.matmul(E, acc, img)
                    if not np.array_equal(acc, np.eye(s.n, dtype=np.int64).astype(E.dtype)):
                        raise AssertionError(f"relation fails for factor {f}")


def _batched_matmul(E: GF, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    A, B = np.broadcast_arrays(A, B)
    n = A.shape[-1]
    out = E.zeros(A.shape)
    for k in range(n):
        out = E.add(out, E.mul(A[..., :, k : k + 1], B[..., k : k + 1, :]))
    return out


@functools.lru_cache(maxsize=128)
def _build_iso_cached(q: GF, spec: GroupSpec, verify: bool) -> AlgebraIso:
    parts = spec.factors()
    summands = _factor_summands(q, parts[0])
    for f in parts[1:]:
        summands = _combine(q, summands, _factor_summands(q, f))
    summands = sorted(summands, key=lambda s: (s.n, s.r))  # stable: natural order within shapes
    iso = AlgebraIso(q, spec, summands)
    if verify:
        iso.verify()
    return iso


def build_iso(q, spec: GroupSpec, verify: bool = True) -> AlgebraIso:
    """Explicit isomorphism for cyclic/dihedral groups and products of them."""
    q = field_from_order(q)
    if spec.order % q.p == 0:
        raise ValueError(f"characteristic {q.p} divides the group order")
    for f in spec.factors():
        if not isinstance(f, (Cyclic, Dihedral)):
            raise ValueError(f"no explicit isomorphism is available for {f}")
    return _build_iso_cached(q, spec, verify)


def apply_iso(iso: AlgebraIso, u: AlgebraElement) -> np.ndarray:
    if u.spec != iso.spec or u.field is not iso.q:
        raise ValueError("element does not belong to the isomorphism's algebra")
    return iso.apply(u)


def inverse_iso(iso: AlgebraIso, v) -> AlgebraElement:
    v = np.asarray(v)
    if v.shape != (iso.dim,):
        raise ValueError(f"expected a vector of length {iso.dim}")
    return iso.apply_inverse(v)
