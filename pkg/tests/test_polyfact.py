import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gacodes.gf import field_from_order, make_field
from gacodes.polyfact import (
    FIRST,
    SECOND,
    SELF,
    Poly,
    factor_cyclotomic,
    factor_shapes,
    reciprocal,
    trace_polynomial,
)

F3 = make_field(3)


def P(*ints, F=F3):
    return Poly.from_ints(F, ints)


def _coset_count(Q, N, residues):
    seen, count = set(), 0
    for i in residues:
        if i in seen:
            continue
        j = i
        while j not in seen:
            seen.add(j)
            j = j * Q % N
        count += 1
    return count


def test_reciprocal_examples():
    assert reciprocal(P(-1, 1)) == P(-1, 1)
    assert reciprocal(P(1, 0, 1)) == P(1, 0, 1)
    assert reciprocal(P(-1, 1, 1)) == P(-1, -1, 1)  # x^2 + x - 1 -> x^2 - x - 1
    with pytest.raises(ValueError):
        reciprocal(P(0, 1))


def test_poly_arithmetic():
    a, b = P(1, 1), P(-1, 1)
    assert a * b == P(-1, 0, 1)
    q, r = divmod(P(1, 0, 0, 1), P(1, 1))
    assert q * P(1, 1) + r == P(1, 0, 0, 1)
    assert (P(-1, 0, 1)).gcd(P(1, 1)).monic() == P(1, 1)
    assert P(1, 0, 1).is_irreducible()
    assert not P(-1, 0, 1).is_irreducible()
    assert str(P(-1, 1, 1)) == "x^2 + x - 1"


def test_root_of_x2_plus_1_in_f9():
    F9 = make_field(3, 2)
    f = Poly.from_ints(F9, [1, 0, 1])
    assert sum(1 for x in range(9) if f(x) == 0) == 2


def test_factor_x4_minus_1_over_f3():
    fl = factor_cyclotomic(3, 4)
    assert [f.poly for f in fl] == [P(-1, 1), P(1, 1), P(1, 0, 1)]
    assert (fl.num_self_reciprocal, fl.num_pairs) == (3, 0)


def test_factor_x16_minus_1_over_f3():
    fl = factor_cyclotomic(3, 16)
    assert [f.poly for f in fl] == [
        P(-1, 1), P(1, 1), P(1, 0, 1),
        P(-1, 1, 1), P(-1, -1, 1),
        P(-1, 0, 1, 0, 1), P(-1, 0, -1, 0, 1),
    ]
    assert (fl.num_self_reciprocal, fl.num_pairs) == (3, 2)


def test_factor_x20_minus_1_over_f3():
    fl = factor_cyclotomic(3, 20)
    assert (fl.num_self_reciprocal, fl.num_pairs) == (5, 1)
    assert [f.poly for f in fl][3:5] == [P(1, 1, 1, 1, 1), P(1, -1, 1, -1, 1)]
    assert [f.kind for f in fl] == [SELF] * 5 + [FIRST, SECOND]


def test_trivial_factorisation():
    for q in (2, 3, 4, 5, 9):
        fl = factor_cyclotomic(q, 1)
        assert len(fl) == 1 and fl[0].poly.degree == 1


def test_nonsemisimple_rejected():
    with pytest.raises(ValueError):
        factor_cyclotomic(3, 6)
    with pytest.raises(ValueError):
        factor_cyclotomic(2, 3, sign=1)


@given(st.sampled_from([2, 3, 4, 5, 7, 9]), st.integers(1, 40), st.sampled_from([-1, 1]))
def test_factorisation_invariants(q, n, sign):
    F = field_from_order(q)
    N = n if sign < 0 else 2 * n
    if N % F.p == 0:
        return
    fl = factor_cyclotomic(q, n, sign)
    assert fl.product() == fl.modulus
    assert sum(f.degree for f in fl) == n
    residues = range(N) if sign < 0 else range(1, N, 2)
    assert len(fl) == _coset_count(F.order, N, residues)
    for i, f in enumerate(fl):
        assert f.poly.is_irreducible()
        if f.kind == SELF:
            assert reciprocal(f.poly) == f.poly
        elif f.kind == FIRST:
            g = fl[f.partner]
            assert g.kind == SECOND and reciprocal(f.poly) == g.poly
            assert f.poly.lexkey() < g.poly.lexkey()
            prod = f.poly * g.poly
            assert reciprocal(prod) == prod
        for r in f.roots:
            assert f.root_field.pow(r, f.root_order) == 1
    assert [(d, k) for d, k in factor_shapes(q, n, sign)] == _shapes(fl)


def _shapes(fl):
    out = []
    for f in fl:
        if f.kind == SELF:
            out.append((f.degree, SELF))
        elif f.kind == FIRST:
            out.append((f.degree, "pair"))
    return out


def test_irreducible_over_f3_small_n():
    for n in range(1, 31):
        if n % 3 == 0:
            continue
        for f in factor_cyclotomic(3, n):
            assert f.poly.is_irreducible()


def test_canonical_root_is_lex_smallest():
    fl = factor_cyclotomic(3, 16)
    for f in fl:
        E = f.root_field
        assert f.root == min(f.roots, key=E.coeffs)
        assert all(f.poly.field is F3 for _ in [0])
        assert len(f.roots) == f.degree


@given(st.sampled_from([3, 5, 7]), st.integers(3, 30))
def test_trace_polynomial_identity(q, n):
    if n % q == 0:
        return
    for f in factor_cyclotomic(q, n):
        if f.kind != SELF or f.degree < 2:
            continue
        h = trace_polynomial(f.poly)
        assert h.degree == f.degree // 2
        E = f.root_field
        a = f.root
        t = E.add(a, E.inv(a))
        # h evaluated at alpha + 1/alpha inside the root field
        val = 0
        for c in reversed(h.coeffs):
            val = E.add(E.mul(val, t), c if E.k == 1 else _lift(c, h.field, E))
        assert val == 0


def _lift(c, F, E):
    from gacodes.gf import embedding

    return embedding(F, E)(c)


def test_trace_polynomial_rejects_non_self_reciprocal():
    with pytest.raises(ValueError):
        trace_polynomial(P(-1, 1, 1))


def test_gcd_of_degrees_is_consistent():
    # the pair degrees for n = 16 over F_3 are 2 and 4
    fl = factor_cyclotomic(3, 16)
    assert [f.degree for f in fl if f.kind == FIRST] == [2, 4]
    assert math.lcm(*[f.degree for f in fl]) == 4
