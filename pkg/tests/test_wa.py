import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gacodes.groups import Cyclic, Dihedral, Product, Quaternion
from gacodes.oracle import decompose_regular
from gacodes.wa import (
    Decomposition,
    DxC,
    DxD,
    DxQ,
    corollary_decompose,
    decompose_abelian,
    decompose_cyclic,
    decompose_dihedral,
    decompose_group,
    decompose_quaternion,
    dihedral_quaternion_iso,
    gcd_lcm_halved,
    tensor_decompositions,
)


def shape(dec):
    return sorted((b.mult, b.n, b.r) for b in dec.blocks)


def test_cyclic_examples():
    assert shape(decompose_cyclic(3, 5)) == [(1, 1, 1), (1, 1, 4)]
    assert shape(decompose_cyclic(3, 4)) == [(1, 1, 2), (2, 1, 1)]
    assert shape(decompose_cyclic(7, 1)) == [(1, 1, 1)]


def test_abelian_examples():
    assert decompose_abelian(3, [5]) == decompose_cyclic(3, 5)
    assert shape(decompose_abelian(3, [2, 2])) == [(4, 1, 1)]
    assert shape(decompose_abelian(5, [])) == [(1, 1, 1)]


def test_dihedral_examples():
    assert shape(decompose_dihedral(3, 4)) == [(1, 2, 1), (4, 1, 1)]
    assert shape(decompose_dihedral(3, 16)) == [(1, 2, 1), (1, 2, 2), (1, 2, 4), (4, 1, 1)]
    d20 = decompose_dihedral(3, 20)
    assert shape(d20) == [(1, 2, 1), (1, 2, 4), (2, 2, 2), (4, 1, 1)]
    assert d20.dimension == 40


def test_quaternion_examples():
    assert shape(decompose_quaternion(3, 2)) == [(1, 2, 1), (4, 1, 1)]
    with pytest.raises(ValueError):
        decompose_quaternion(3, 1)
    assert decompose_quaternion(3, 1, allow_degenerate=True) == decompose_cyclic(3, 4)


def test_product_examples():
    D4, C4, C5 = Dihedral(4), Cyclic(4), Cyclic(5)
    assert str(decompose_group(3, Product((D4, C5)))) == "4F_3 ⊕ 4F_3^4 ⊕ M_2(F_3) ⊕ M_2(F_3^4)"
    assert str(decompose_group(3, Product((D4, D4)))) == "16F_3 ⊕ 8M_2(F_3) ⊕ M_4(F_3)"
    assert str(decompose_group(3, Product((D4, C4)))) == "8F_3 ⊕ 4F_3^2 ⊕ 2M_2(F_3) ⊕ M_2(F_3^2)"


def test_not_semisimple():
    with pytest.raises(ValueError):
        decompose_group(3, Dihedral(3))
    with pytest.raises(ValueError):
        decompose_group(2, Cyclic(5) * Cyclic(2))


def test_gcd_lcm_halved():
    for m in range(2, 41, 2):
        for n in range(1, 41):
            assert gcd_lcm_halved(m, n) == (math.gcd(m // 2, n), math.lcm(m // 2, n))
            if n % 2 == 0:
                assert gcd_lcm_halved(m, n, both_even=True) == (math.gcd(m // 2, n // 2), math.lcm(m // 2, n // 2))
    with pytest.raises(ValueError):
        gcd_lcm_halved(3, 4)


def test_dihedral_quaternion_criterion_examples():
    assert dihedral_quaternion_iso(3, 2) is True
    assert dihedral_quaternion_iso(3, 1) is False
    assert dihedral_quaternion_iso(5, 1) is True


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_dihedral_quaternion_criterion_implies_equal_decompositions(q):
    for t in range(2, 11):
        if (4 * t) % _char(q) == 0:
            continue
        if dihedral_quaternion_iso(q, t):
            assert decompose_dihedral(q, 2 * t) == decompose_quaternion(q, t)


def _char(q):
    return {3: 3, 5: 5, 7: 7, 9: 3}[q]


@pytest.mark.parametrize(
    "q,spec",
    [
        (3, Cyclic(5)), (2, Cyclic(7)), (5, Cyclic(6)), (3, Dihedral(4)), (3, Dihedral(5)),
        (5, Dihedral(6)), (7, Dihedral(5)), (3, Quaternion(2)), (5, Quaternion(3)), (3, Quaternion(5)),
        (7, Quaternion(3)), (9, Dihedral(4)), (4, Cyclic(15)), (9, Quaternion(5)), (3, Product((Dihedral(2), Cyclic(2)))),
        (5, Product((Dihedral(2), Dihedral(2)))), (7, Product((Quaternion(2), Cyclic(3)))),
    ],
)
def test_formulas_match_regular_representation(q, spec):
    assert decompose_group(q, spec) == decompose_regular(q, spec)


def test_json_round_trip():
    dec = decompose_group(9, Product((Dihedral(4), Cyclic(5))))
    obj = dec.to_json()
    assert obj["order"] == 40
    assert Decomposition.from_json(obj) == dec


_groups = st.deferred(
    lambda: st.one_of(
        st.builds(Cyclic, st.integers(1, 12)),
        st.builds(Dihedral, st.integers(1, 8)),
        st.builds(Quaternion, st.integers(2, 6)),
    )
)


@given(st.sampled_from([2, 3, 4, 5, 7, 8, 9, 11, 13]), st.lists(_groups, min_size=1, max_size=3))
def test_dimension_audit_and_tensor_laws(q, parts):
    spec = parts[0] if len(parts) == 1 else Product(tuple(parts))
    p = {4: 2, 8: 2, 9: 3}.get(q, q)
    if spec.order % p == 0 or spec.order > 500:
        return
    dec = decompose_group(q, spec)
    assert sum(b.mult * b.n**2 * b.r for b in dec.blocks) == spec.order
    decs = [decompose_group(q, f) for f in spec.factors()]
    if len(decs) >= 2:
        assert tensor_decompositions(decs[0], decs[1]) == tensor_decompositions(decs[1], decs[0])
    if len(decs) == 3:
        left = tensor_decompositions(tensor_decompositions(decs[0], decs[1]), decs[2])
        right = tensor_decompositions(decs[0], tensor_decompositions(decs[1], decs[2]))
        assert left == right == dec


def test_corollary_examples():
    assert corollary_decompose(3, DxC(4, 4)) == decompose_group(3, Product((Dihedral(4), Cyclic(4))))
    assert str(corollary_decompose(3, DxD(4, 4))) == "16F_3 ⊕ 8M_2(F_3) ⊕ M_4(F_3)"


@pytest.mark.parametrize("q", [5, 7, 11])
def test_corollary_matches_tensor_path_small(q):
    for n in range(1, 9):
        for m in range(1, 9):
            for case, spec in [
                (DxC(n, m), Product((Dihedral(n), Cyclic(m)))),
                (DxD(n, m), Product((Dihedral(n), Dihedral(m)))),
                (DxQ(n, m), Product((Dihedral(n), Quaternion(m)))),
            ]:
                if spec.order % q == 0 or spec.order > 200 or (isinstance(case, DxQ) and m < 2):
                    continue
                assert corollary_decompose(q, case) == decompose_group(q, spec), (q, case)
