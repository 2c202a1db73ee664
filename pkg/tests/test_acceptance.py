"""Acceptance suite: ten end-to-end checks, each with a wall-clock limit.

A line per criterion is printed in the terminal summary (see ``conftest.py``).
"""

import itertools
import math
import time

import numpy as np
import pytest

from gacodes.codes import (
    IdealSpec,
    code_from_ideal,
    count_group_codes,
    dihedral_dual_ideal,
    dual_code,
    ideal_count,
)
from gacodes.distance import min_distance, verify_distance
from gacodes.galg import build_iso, left_ideal_from_element
from gacodes.gf import extension, field_from_order, make_field, tensor_split
from gacodes.groups import Cyclic, Dihedral, Product, Quaternion
from gacodes.kernels import find_word
from gacodes.parse import parse_element, parse_group
from gacodes.quantum import css_build, css_check
from gacodes.repro import css_example_ideals
from gacodes.wa import DxC, DxD, DxQ, corollary_decompose, decompose_group

FLAGSHIP = (
    "x+z-z^2+x^2+xy-xz+xz^2-x^3+yz^2-x^2y+z^3-x^2z^2-xyz^2+xz^3+x^3z"
    "-x^2yz^2+xyz^3+x^3yz-x^3z^3"
)


class Timer:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.t = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.1f} s, limit {self.limit} s"


def _blocks(dec):
    return sorted((b.mult, b.n, b.r) for b in dec.blocks)


# ---------------------------------------------------------------------------


DECOMPOSITIONS = {
    "C5": [(1, 1, 1), (1, 1, 4)],
    "D4": [(4, 1, 1), (1, 2, 1)],
    "D4xC5": [(4, 1, 1), (4, 1, 4), (1, 2, 1), (1, 2, 4)],
    "D4xD4": [(16, 1, 1), (8, 2, 1), (1, 4, 1)],
    "D4xC4": [(8, 1, 1), (4, 1, 2), (2, 2, 1), (1, 2, 2)],
}


@pytest.mark.criterion(1, "decompositions of five F_3 group algebras")
def test_c01_decompositions():
    with Timer(1.0):
        for g, want in DECOMPOSITIONS.items():
            assert _blocks(decompose_group(3, parse_group(g))) == sorted(want), g


COUNTS = {"C5": 4, "D4": 96, "D4xC5": 131072, "D4xD4": 23335966605312}


@pytest.mark.criterion(2, "numbers of group codes over F_3")
@pytest.mark.xfail(
    strict=True,
    reason="the D4xC5 target 131072 differs from 2^4 * 2^4 * 6 * 84 = 129024; the other three counts match",
)
def test_c02_counts():
    with Timer(1.0):
        got = {g: count_group_codes(decompose_group(3, parse_group(g))) for g in COUNTS}
    assert got == COUNTS


def _random_spec(rng):
    parts = []
    for _ in range(int(rng.integers(1, 4))):
        kind = rng.integers(0, 3)
        if kind == 0:
            parts.append(Cyclic(int(rng.integers(1, 40))))
        elif kind == 1:
            parts.append(Dihedral(int(rng.integers(1, 25))))
        else:
            parts.append(Quaternion(int(rng.integers(2, 15))))
    return parts[0] if len(parts) == 1 else Product(tuple(parts))


QS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27]


@pytest.mark.criterion(3, "dimension audit and closed-form products")
def test_c03_dimension_audit_and_corollaries():
    with Timer(30.0):
        rng = np.random.default_rng(2024)
        done = 0
        while done < 200:
            q = int(rng.choice(QS))
            spec = _random_spec(rng)
            if spec.order > 500 or spec.order % field_from_order(q).p == 0:
                continue
            dec = decompose_group(q, spec)
            assert sum(b.mult * b.n**2 * b.r for b in dec.blocks) == spec.order, (q, spec)
            done += 1
        checked = 0
        for q in QS:
            p = field_from_order(q).p
            for n in range(1, 201):
                for m in range(1, 201):
                    for case, spec in [
                        (DxC(n, m), lambda: Product((Dihedral(n), Cyclic(m)))),
                        (DxD(n, m), lambda: Product((Dihedral(n), Dihedral(m)))),
                        (DxQ(n, m), lambda: Product((Dihedral(n), Quaternion(m)))),
                    ]:
                        order = {DxC: 2, DxD: 4, DxQ: 8}[type(case)] * n * m
                        if order > 400 or order % p == 0 or (isinstance(case, DxQ) and m < 2):
                            continue
                        assert corollary_decompose(q, case) == decompose_group(q, spec()), (q, case)
                        checked += 1
        assert checked > 10000


def _source_structure(t):
    """Structure constants of F_{q^n} (x) F_{q^m} built from the two factor fields."""
    q, n, m = t.q, t.n, t.m
    L, R = make_field(q.p, q.k * n), make_field(q.p, q.k * m)
    eL, eR = extension(L, q), extension(R, q)
    a = L.gen if n > 1 else 1
    b = R.gen if m > 1 else 1
    S = np.zeros((n * m, n * m, n * m), dtype=np.int64)
    for (i, j), (k, l) in itertools.product(itertools.product(range(n), range(m)), repeat=2):
        lc = eL.coords(np.array([L.pow(a, i + k)], dtype=L.dtype))[0]
        rc = eR.coords(np.array([R.pow(b, j + l)], dtype=R.dtype))[0]
        S[i * m + j, k * m + l] = np.outer(lc, rc).reshape(-1)
    return S


def _left_mult_target(t, V):
    """F_q-matrices of multiplication by target vectors ``V`` (batch, d * ell)."""
    ext, big = t.big_ext, t.big
    d, ell = t.d, t.ell
    basis = ext.from_coords(np.eye(ell, dtype=np.int64))
    out = np.zeros((len(V), d * ell, d * ell), dtype=np.int64)
    for c in range(d):
        A = ext.from_coords(V[:, c * ell : (c + 1) * ell])
        prods = big.mul(A[:, None], basis[None, :])  # column j = A * basis_j
        out[:, c * ell : (c + 1) * ell, c * ell : (c + 1) * ell] = np.swapaxes(ext.coords(prods), 1, 2)
    return out


@pytest.mark.criterion(4, "tensor splitting is a ring isomorphism")
def test_c04_tensor_split():
    with Timer(60.0):
        rng = np.random.default_rng(4)
        for q, n, m in itertools.product((2, 3), range(1, 5), range(1, 5)):
            t = tensor_split(n, m, q)
            F = t.q
            N = n * m
            if q**N <= 10**4:
                U = np.array(list(itertools.product(range(q), repeat=N)), dtype=np.int64)
                img = t.apply(U)
                assert len({r.tobytes() for r in img}) == q**N  # bijective
                # nu(u v) = nu(u) nu(v) for every u and all v at once:
                # nu . L_u = L_{nu(u)} . nu as F_q-matrices
                S = _source_structure(t)
                Lu = np.einsum("bi,ijk->bkj", U, S) % q  # column j = u * e_j
                lhs = np.einsum("ab,nbj->naj", t.matrix, Lu) % q
                rhs = np.einsum("nab,bj->naj", _left_mult_target(t, img), t.matrix) % q
                assert np.array_equal(lhs, rhs), (q, n, m)
            else:
                from gacodes.linalg import rank

                assert rank(F, t.matrix) == N
                for _ in range(1000):
                    u, v = rng.integers(0, q, N), rng.integers(0, q, N)
                    assert np.array_equal(t.apply(t.source_mul(u, v)), t.target_mul(t.apply(u), t.apply(v)))
                    assert np.array_equal(t.apply_inverse(t.apply(u)), u)


def _small_specs(limit):
    atoms = [Cyclic(n) for n in range(1, limit + 1)] + [Dihedral(n) for n in range(1, limit // 2 + 1)]
    out = list(atoms)
    for r in (2, 3):
        for combo in itertools.combinations_with_replacement(range(len(atoms)), r):
            fs = [atoms[i] for i in combo]
            if all(f.order > 1 for f in fs) and math.prod(f.order for f in fs) <= limit:
                out.append(Product(tuple(fs)))
    return out


@pytest.mark.criterion(5, "explicit isomorphisms for all groups of order at most 64")
def test_c05_psi_verification():
    with Timer(60.0):
        specs = _small_specs(64)
        n = 0
        for q in (3, 5):
            for spec in specs:
                if spec.order % q == 0:
                    continue
                iso = build_iso(q, spec, verify=False)
                iso.verify()  # relations, bijectivity, basis pairs, 100 random pairs above order 32
                n += 1
        assert n > 500


@pytest.mark.criterion(6, "flagship [32, 18, 8] ternary code")
def test_c06_flagship():
    with Timer(600.0):
        code = left_ideal_from_element(parse_element(FLAGSHIP, parse_group("D4xC4"), 3))
        assert (code.n, code.k) == (32, 18)
        r = min_distance(code, "exhaustive")
        assert r.exact and r.value == 8
        cert = verify_distance(code, 8)
        assert cert.certified


TABLE_ROWS = [
    ("D5xC4", "y+z-x-yz+yz^2+x^4y+z^3+xz-yz^3-x^3y-x^2z-x^3-x^3yz+x^2y+x^2z^3-xy+x^3z^3+x^4z-x^4z^3-xyz^3",
     40, 21, 10),
    ("D4xC5", "1-y-x+x^2-yz^2+x^2y-x^2z^2+xy-yz^4+xz^4-x^2z^4+x^3yz^4-yz-xz-x^3z^4-x^2z-x^3yz-xyz^4-yz^3"
     "-xz^3+x^3z-x^2z^3-x^3yz^3+xyz+x^3z^3+xyz^3", 40, 25, 8),
    ("D4xD4", "-x^2yc^2d + x^2yc^3 + x^3c^2 + x^2ycd + x^3cd -x^2c^2d -xyc^2d -x^3yc^2d + x^2c^3 + xyc^3"
     " + x^3yc^3 + x^3c + xyc^2 + x^3yc^2 - x^2cd - xycd + x^3d - x^2c^3d + yc^2d + yc^3 + x^2y"
     " + x^3 + x^2c + xyc -x^3yc + xc^2 - xcd + xyd - yc^3d - x^3y - xc - c^2 - y - 1", 64, 44, 8),
    ("D4xD4", "x^2yc^2d - x^3c^2d - x^2yc^3 - x^3c^3 - x^2yc^2 - x^3cd + x^2yc^3d - x^3c^3d + x^3yc^2d"
     " - x^3yc^3 - x^3c + x^2c^2 - xyc^2 + x^3yc^2 - xycd + x^3ycd + x^2c^3d - xyc^3d - yc^2d"
     " + xc^3 - x^3 + x^2c + x^3yc - xc^2 - yc^2 + xcd + ycd + x^2d - xyd + x^3yd - yc^3d + c^3"
     " - x^2 + xy - x^3y + yc - c^2 + cd - xd - c^3d + y - c - d", 64, 45, 8),
]


@pytest.mark.criterion(7, "table rows [40,21,10], [40,25,8], [64,44,8], [64,45,8]")
def test_c07_table_rows():
    with Timer(1800.0):
        for g, elem, n, k, d in TABLE_ROWS:
            code = left_ideal_from_element(parse_element(elem, parse_group(g), 3))
            assert (code.n, code.k) == (n, k), g
            # every codeword of the (n - k)-dimensional dual is enumerated
            r = min_distance(code, "exhaustive", budget=3**20)
            assert r.exact and r.value == d, (g, n, k, r.value)


def _canonical_generators(E, n):
    """All RREF generators of left ideals of M_n(E) for n <= 2."""
    if n == 1:
        return [np.zeros((0, 1), dtype=np.int64), np.ones((1, 1), dtype=np.int64)]
    assert n == 2
    rows = [np.zeros((0, 2), dtype=np.int64), np.eye(2, dtype=np.int64), np.array([[0, 1]])]
    rows += [np.array([[1, a]]) for a in range(E.order)]
    return rows


@pytest.mark.criterion(8, "dihedral dual ideals give the Euclidean dual codes")
def test_c08_dual_theorem():
    with Timer(300.0):
        for q in (3, 5):
            for n in range(3, 13):
                if math.gcd(2 * n, q) != 1:
                    continue
                iso = build_iso(q, Dihedral(n))
                per_block = [_canonical_generators(E, s) for E, (s, _) in zip(iso.layout.fields, iso.layout.shapes)]
                total = math.prod(len(b) for b in per_block)
                assert total == count_group_codes(iso.decomposition)
                if total <= 500:
                    choices = itertools.product(*per_block)
                else:
                    rng = np.random.default_rng(100 * q + n)
                    choices = ([b[int(rng.integers(len(b)))] for b in per_block] for _ in range(500))
                for gens in choices:
                    I = IdealSpec(iso.decomposition, gens)
                    want = dual_code(code_from_ideal(iso, I))
                    assert code_from_ideal(iso, dihedral_dual_ideal(q, n, I)) == want, (q, n, I.ranks())


@pytest.mark.criterion(9, "CSS codes [[32,10,4]]_3 and [[40,16,4]]_3")
def test_c09_css():
    with Timer(120.0):
        for n, (N, K) in [(16, (32, 10)), (20, (40, 16))]:
            iso = build_iso(3, Dihedral(n))
            C, D = css_example_ideals(n)
            c1, c2 = code_from_ideal(iso, D), code_from_ideal(iso, C)
            assert css_check(c1, c2)
            p = css_build(c1, c2)
            assert (p.n, p.k, p.d, p.d_status) == (N, K, 4, "exact")
            # no word of weight <= 3 in either difference, and a weight-4 witness
            for a, b in [(c1, c2), (c2, c1)]:
                H, T = dual_code(a).generator, b.generator
                for w in (1, 2, 3):
                    assert find_word(a.field, H, w, secondary=T)[0] is None
            side = (c1, c2) if p.witness_side == 1 else (c2, c1)
            assert np.count_nonzero(p.witness) == 4
            assert side[0].contains(p.witness) and not dual_code(side[1]).contains(p.witness)


def _left_ideals_m2(q):
    """Count subspaces of M_2(F_q) closed under left multiplication, by enumeration."""
    mats = [np.array(v).reshape(2, 2) for v in itertools.product(range(q), repeat=4)]
    key = lambda A: tuple(A.reshape(-1) % q)  # noqa: E731

    def span(S, A):
        out = set(S)
        frontier = [np.array(s).reshape(2, 2) for s in S]
        for c in range(1, q):
            for B in frontier:
                out.add(key(B + c * A))
        return frozenset(out)

    spaces = {frozenset({key(np.zeros((2, 2), dtype=int))})}
    layer = set(spaces)
    while layer:
        nxt = set()
        for S in layer:
            for A in mats:
                if key(A) not in S:
                    T = span(S, A)
                    if T not in spaces:
                        nxt.add(T)
        spaces |= nxt
        layer = nxt
    units = [np.array(e).reshape(2, 2) for e in ([1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1])]
    closed = 0
    for S in spaces:
        if all(key(E @ np.array(s).reshape(2, 2)) in S for E in units for s in S):
            closed += 1
    return closed, len(spaces)


@pytest.mark.criterion(10, "left ideals of M_2(F_2) and M_2(F_3)")
def test_c10_left_ideals_of_m2():
    with Timer(60.0):
        for q, want in ((2, 5), (3, 6)):
            closed, nspaces = _left_ideals_m2(q)
            assert nspaces == ideal_count(q, 4)  # all subspaces of F_q^4 were found
            assert closed == want == ideal_count(q, 2)
