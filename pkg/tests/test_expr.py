import pytest
from hypothesis import given

from conftest import XY, XYZ
from germlab.errors import InputError, ParseError
from germlab.expr import VariableContext, format_polynomial, infer_context, parse
from germlab.poly import Polynomial
from germlab.qi import gaussian, mpq
from strategies import polynomials


def test_parse_examples():
    f = parse("x^3 + y^2*z + x*z^3 + z^5", XYZ)
    assert f.terms == {(3, 0, 0): 1, (0, 2, 1): 1, (1, 0, 3): 1, (0, 0, 5): 1}
    assert parse("0", XY).is_zero()
    ctx = VariableContext(("x", "y"), "t")
    fam = parse("x^3 - 3*t*x*y^4 + y^6", ctx)
    assert fam.nvars == 3
    assert fam.coefficient((1, 4, 1)) == -3


def test_implicit_multiplication_and_rationals():
    assert parse("2xy - 3/4 y^2", XY) == Polynomial(2, {(1, 1): mpq(2), (0, 2): mpq(-3, 4)})
    assert parse("-(x+i y)^2", XY) == Polynomial(2, {(2, 0): mpq(-1), (1, 1): gaussian(0, -2), (0, 2): mpq(1)})


def test_print_examples():
    assert format_polynomial(parse("x^2*y^2 + x^5 + y^5", XY), XY) == "x^5 + y^5 + x^2*y^2"
    assert format_polynomial(parse("i*x", XY), XY) == "i*x"
    assert format_polynomial(Polynomial.zero(2), XY) == "0"


def test_print_rejects_context_mismatch():
    with pytest.raises(InputError):
        format_polynomial(parse("x", XYZ), XY)


@pytest.mark.parametrize(
    "src",
    ["x +", "x^", "x^-1", "1/0", "q + x", "(x", "x)", "x^1.5", "2 ** x", "@"],
)
def test_parse_errors_carry_offsets(src):
    with pytest.raises(InputError) as info:
        parse(src, XY)
    if isinstance(info.value, ParseError):
        assert 0 <= info.value.offset <= len(src.encode())
    else:
        assert "at byte" in str(info.value)


def test_i_is_reserved():
    with pytest.raises(InputError):
        VariableContext(("x", "i"))
    with pytest.raises(InputError):
        VariableContext(("x", "t"), "t")


def test_inferred_context_orders_by_first_appearance():
    assert infer_context("z^2 + x*y").names == ("z", "x", "y")


@given(polynomials(nvars=3, max_degree=5, max_terms=8))
def test_parse_print_roundtrip(p):
    text = format_polynomial(p, XYZ)
    assert parse(text, XYZ) == p
    assert format_polynomial(parse(text, XYZ), XYZ) == text
