import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gacodes.codes import (
    CodeParams,
    IdealSpec,
    LinearCode,
    code_dimension,
    code_from_ideal,
    count_group_codes,
    decode_entry,
    dihedral_dual_ideal,
    dual_code,
    encode_entry,
    gaussian_binomial,
    ideal_count,
    rref,
)
from gacodes.galg import build_iso
from gacodes.gf import make_field
from gacodes.groups import Cyclic, Dihedral, Product
from gacodes.linalg import matmul
from gacodes.parse import parse_group
from gacodes.repro import css_example_ideals
from gacodes.wa import decompose_group

F3 = make_field(3)


def _random_ideal(iso, rng):
    gens = []
    for E, (n, _) in zip(iso.layout.fields, iso.layout.shapes):
        rk = int(rng.integers(0, n + 1))
        gens.append(rng.integers(0, E.order, size=(rk, n)))
    return IdealSpec(iso.decomposition, gens)


def test_rref_examples():
    A = np.array([[0, 2, 1], [1, 1, 1], [1, 0, 0]])
    assert np.array_equal(rref(F3, A), np.eye(3, dtype=int))
    B = np.array([[1, 2, 0], [2, 1, 0]])  # second row is twice the first
    assert np.array_equal(rref(F3, B), [[1, 2, 0]])
    assert rref(F3, np.zeros((0, 4), dtype=int)).shape == (0, 4)


def test_entry_encoding():
    F9 = make_field(3, 2)
    for a in range(9):
        assert decode_entry(F9, encode_entry(F9, a)) == a
    assert decode_entry(F9, 2) == 2
    assert decode_entry(F9, "a^0") == 1
    assert decode_entry(F9, "-1") == F9.neg(1)
    assert decode_entry(F3, "2") == 2
    for bad in (True, "q^", 1.5, [1, 2, 3]):
        with pytest.raises(ValueError):
            decode_entry(F9, bad)


def test_linear_code_basics():
    c = LinearCode(3, [[1, 1, 1, 0], [0, 1, 2, 1]])
    assert (c.n, c.k, c.q) == (4, 2, 3)
    D = c.dual()
    assert D.k == 2
    assert not np.any(matmul(F3, c.generator, D.generator.T))
    assert c.contains([1, 2, 0, 1]) and not c.contains([1, 0, 0, 0])
    assert LinearCode.full(3, 4).contains_code(c)
    assert LinearCode.zero(3, 4).dual() == LinearCode.full(3, 4)
    assert LinearCode.from_json(c.to_json()) == c
    with pytest.raises(ValueError):
        c.contains_code(LinearCode.full(3, 5))
    with pytest.raises(ValueError):
        LinearCode(3, [])


def test_linear_code_json_extension_field():
    F4 = make_field(2, 2)
    c = LinearCode(F4, [[1, 2, 3], [0, 1, 1]])
    assert LinearCode.from_json(c.to_json()) == c


@given(st.sampled_from([2, 3, 4, 5]), st.integers(1, 8), st.data())
def test_dual_dimension_and_involution(q, n, data):
    F = make_field(*{4: (2, 2)}.get(q, (q, 1)))
    k = data.draw(st.integers(0, n))
    rows = data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n), min_size=k, max_size=k))
    c = LinearCode(F, np.array(rows, dtype=np.int64).reshape(k, n), length=n)
    d = dual_code(c)
    assert c.k + d.k == n
    assert dual_code(d) == c


def test_code_params_singleton():
    assert str(CodeParams(8, 4, 3, "exact")) == "[8, 4, 3]"
    assert str(CodeParams(8, 4, 3, "upper_bound")) == "[8, 4, <=3]"
    with pytest.raises(ValueError):
        CodeParams(8, 4, 6, "exact")
    with pytest.raises(ValueError):
        CodeParams(3, 4)


def test_ideal_spec_json_round_trip():
    dec = decompose_group(3, Dihedral(16))
    iso = build_iso(3, Dihedral(16))
    rng = np.random.default_rng(7)
    I = _random_ideal(iso, rng)
    assert IdealSpec.from_json(I.to_json()) == I
    obj = I.to_json()
    obj["blocks"] = ["0"] + ["1"] * (len(obj["blocks"]) - 1)
    J = IdealSpec.from_json(obj)
    assert J.ranks() == [0] + [n for n, _ in dec.summands()[1:]]
    with pytest.raises(ValueError):
        IdealSpec(dec, [])


def test_code_dimension_examples():
    dec = decompose_group(3, Product((Dihedral(4), Cyclic(4))))
    assert code_dimension(IdealSpec.zero(dec)) == 0
    assert code_dimension(IdealSpec.full(dec)) == 32
    c16, d16 = css_example_ideals(16)
    assert (code_dimension(c16), code_dimension(d16)) == (19, 23)
    c20, d20 = css_example_ideals(20)
    assert (code_dimension(c20), code_dimension(d20)) == (23, 33)


def test_gaussian_binomial():
    assert gaussian_binomial(3, 2, 1) == 4
    assert gaussian_binomial(2, 4, 2) == 35
    assert [gaussian_binomial(5, 3, k) for k in range(4)] == [1, 31, 31, 1]
    with pytest.raises(ValueError):
        gaussian_binomial(2, 3, 4)


def _subspaces_brute(q, n):
    vecs = list(itertools.product(range(q), repeat=n))
    spaces = set()
    for k in range(n + 1):
        for gens in itertools.combinations(vecs, k):
            span = {tuple(sum(c * g[i] for c, g in zip(cs, gens)) % q for i in range(n)) for cs in itertools.product(range(q), repeat=k)}
            spaces.add(frozenset(span))
    return len(spaces)


@pytest.mark.parametrize("q,n", [(2, 1), (2, 2), (2, 3), (3, 2), (5, 2)])
def test_ideal_count_matches_subspace_enumeration(q, n):
    assert ideal_count(q, n) == _subspaces_brute(q, n)


def test_count_examples():
    assert count_group_codes(decompose_group(3, parse_group("C5"))) == 4
    assert count_group_codes(decompose_group(3, parse_group("D4"))) == 96
    assert count_group_codes(decompose_group(3, parse_group("D4xD4"))) == 23335966605312
    assert count_group_codes(decompose_group(3, parse_group("D4xC5"))) == 129024


@pytest.mark.parametrize("q,spec", [(3, Dihedral(4)), (5, Dihedral(3)), (3, Product((Dihedral(4), Cyclic(2))))])
def test_code_from_ideal_is_a_left_ideal(q, spec):
    from gacodes.galg import AlgebraElement

    iso = build_iso(q, spec)
    rng = np.random.default_rng(11)
    for _ in range(5):
        I = _random_ideal(iso, rng)
        c = code_from_ideal(iso, I)
        assert c.k == code_dimension(I)
        g = AlgebraElement.random(spec, q, rng)
        for row in c.generator:
            u = AlgebraElement(spec, q, row)
            assert c.contains((g * u).coeffs)


@pytest.mark.parametrize("q,n", [(3, 4), (5, 3), (3, 5), (5, 6), (7, 4), (9, 4)])
def test_dihedral_dual_matches_euclidean_dual(q, n):
    iso = build_iso(q, Dihedral(n))
    rng = np.random.default_rng(q * 100 + n)
    for _ in range(20):
        I = _random_ideal(iso, rng)
        c = code_from_ideal(iso, I)
        assert code_from_ideal(iso, dihedral_dual_ideal(q, n, I)) == dual_code(c)


def test_dual_table_entries():
    iso = build_iso(3, Dihedral(16))
    dec = iso.decomposition
    idx_self = next(i for i, s in enumerate(iso.summands) if s.label[0] == "self")
    idx_pair = next(i for i, s in enumerate(iso.summands) if s.label[0] == "pair")
    E = iso.layout.fields[idx_self]
    a = iso.summands[idx_self].label[2]
    gens = [np.zeros((n, n), dtype=np.int64) for n, _ in dec.summands()]
    gens[idx_self] = np.array([[1, 0], [0, 0]])
    Ep = iso.layout.fields[idx_pair]
    lam = Ep.primitive_element()
    gens[idx_pair] = np.array([[1, lam], [0, 0]])
    D = dihedral_dual_ideal(3, 16, IdealSpec(dec, gens))
    # [[1, 0]] -> [[a, -2]] (here a = 0 since x^2 + 1 comes first)
    assert np.array_equal(D.gens[idx_self][:1], rref(E, np.array([[a, E.neg(2)]])))
    assert np.array_equal(D.gens[idx_pair][0], [1, Ep.neg(lam)])
    # zero blocks become full, one-dimensional full blocks become zero
    assert D.ranks()[0] == 1
    full = dihedral_dual_ideal(3, 16, IdealSpec.full(dec))
    assert full.ranks() == [0] * len(dec.summands())


def test_dual_rejects_wrong_decomposition():
    I = IdealSpec.full(decompose_group(3, Dihedral(4)))
    with pytest.raises(ValueError):
        dihedral_dual_ideal(3, 8, I)
