import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gacodes.galg import AlgebraElement
from gacodes.groups import Cyclic, Dihedral, Product, Quaternion
from gacodes.parse import (
    ParseError,
    default_generator_names,
    format_element,
    parse_element,
    parse_generator_names,
    parse_group,
)


def test_parse_group_examples():
    assert parse_group("C5") == Cyclic(5)
    assert parse_group("D4xC4") == Product((Dihedral(4), Cyclic(4)))
    assert parse_group(" Q2xC3 ") == Product((Quaternion(2), Cyclic(3)))
    assert parse_group("D7xD2").order == 56


@pytest.mark.parametrize("bad", ["D0", "", "E4", "D4C4", "D4x", "D-1", "C"])
def test_parse_group_errors(bad):
    with pytest.raises(ParseError):
        parse_group(bad)


def test_default_names():
    assert default_generator_names(parse_group("D4xC4")) == [("x", "y"), ("z",)]
    assert default_generator_names(parse_group("D7xD2")) == [("x", "y"), ("c", "d")]
    assert default_generator_names(parse_group("C2xC3")) == [("z",), ("w",)]


def test_parse_element_basics():
    D4 = Dihedral(4)
    one = AlgebraElement.identity(D4, 3)
    assert parse_element("1", D4, 3) == one
    assert parse_element("x^4", D4, 3) == one
    assert parse_element("y*y", D4, 3) == one
    assert parse_element("x + x + x", D4, 3).is_zero()
    assert parse_element("2x", D4, 3) == parse_element("-x", D4, 3)
    assert parse_element("x^-1", D4, 3) == parse_element("x^3", D4, 3)
    # yx = x^-1 y
    assert parse_element("yx", D4, 3) == parse_element("x^3y", D4, 3)


def test_parse_element_errors():
    D4 = Dihedral(4)
    for bad in ["", "x +", "x y + q", "x + + y", "x z"]:
        with pytest.raises(ParseError):
            parse_element(bad, D4, 3)


def test_custom_generator_names():
    spec = parse_group("D4xC4")
    a = parse_element("r + s*t", spec, 3, names="r,s;t")
    b = parse_element("x + y*z", spec, 3)
    assert a == b
    with pytest.raises(ValueError):
        parse_generator_names("r,s", spec)
    with pytest.raises(ValueError):
        parse_generator_names("r,r;t", spec)
    with pytest.raises(ValueError):
        parse_generator_names("r;t", spec)


def test_bracket_coefficients():
    C3 = Cyclic(4)
    u = parse_element("[0,1]*z + 1", C3, 9)
    assert u.coeffs.tolist()[1] == 3  # the generator of F_9 is encoded as 3
    assert format_element(u) == "1 + [0,1]*z"
    assert parse_element(format_element(u), C3, 9) == u


@pytest.mark.parametrize("spec", [Dihedral(5), Product((Dihedral(4), Cyclic(4))), Quaternion(3), Product((Dihedral(3), Dihedral(2)))])
@given(seed=st.integers(0, 2**32 - 1), q=st.sampled_from([3, 5, 7]))
def test_format_parse_round_trip(spec, seed, q):
    u = AlgebraElement.random(spec, q, np.random.default_rng(seed))
    assert parse_element(format_element(u), spec, q) == u


def test_format_zero():
    assert format_element(AlgebraElement(Cyclic(3), 3, [0, 0, 0])) == "0"
