import random

import pytest

from cuspcount.errors import ParseError
from cuspcount.exprparse import EXPONENT_CAP, ExprSource, parse_poly
from cuspcount.polyring import Poly, VARS_TX, VARS_X

from support import random_poly


def test_worked_family_component():
    f = parse_poly("x1^3 + x2^2 + t*x1")
    x1 = Poly.variable("x1", VARS_TX)
    x2 = Poly.variable("x2", VARS_TX)
    t = Poly.variable("t", VARS_TX)
    assert f == x1**3 + x2**2 + t * x1


def test_zero_literal():
    assert parse_poly("0").is_zero()


def test_expansion_identity():
    assert parse_poly("(x1 + x2)^2 - x1^2 - x2^2 - 2*x1*x2").is_zero()


def test_rational_literals():
    from fractions import Fraction

    f = parse_poly("3/4*x1 - 1/2")
    assert f.coefficient((0, 1, 0)) == Fraction(3, 4)
    assert f.constant_term() == Fraction(-1, 2)
    assert parse_poly("1 / 2") == parse_poly("1/2")


def test_whitespace_insensitive():
    assert parse_poly("t *x1+ x2 ^ 2") == parse_poly("t*x1+x2^2")


def test_subtraction_is_left_associative():
    a = parse_poly("1 - t - t")
    b = parse_poly("(1 - t) - t")
    assert a == b


def test_unary_minus():
    assert parse_poly("-x1^2") == -parse_poly("x1^2")
    assert parse_poly("--x1") == parse_poly("x1")
    assert parse_poly("2 - -3") == parse_poly("5")


def test_custom_variables():
    f = parse_poly("x - x^2", ("x",))
    assert f.vars == ("x",)


def test_roundtrip_on_random_polys():
    rng = random.Random(21)
    for vars in (VARS_TX, VARS_X, ("x",)):
        for _ in range(40):
            p = random_poly(rng, vars, rational=True)
            assert parse_poly(str(p), vars) == p


def test_error_positions():
    with pytest.raises(ParseError) as e:
        parse_poly("x1 + + x2")
    assert e.value.position == 5
    with pytest.raises(ParseError) as e:
        parse_poly("x1 + y")
    assert e.value.position == 5


def test_unknown_identifier():
    with pytest.raises(ParseError):
        parse_poly("x3 + 1")


def test_negative_exponent_rejected():
    with pytest.raises(ParseError) as e:
        parse_poly("x1^-2")
    assert "non-negative" in str(e.value)


def test_exponent_cap():
    parse_poly(f"x1^{EXPONENT_CAP}")
    with pytest.raises(ParseError):
        parse_poly(f"x1^{EXPONENT_CAP + 1}")


def test_adjacency_rejected():
    with pytest.raises(ParseError) as e:
        parse_poly("2 x1")
    assert "explicit '*'" in str(e.value)
    with pytest.raises(ParseError):
        parse_poly("x1 x2")
    with pytest.raises(ParseError):
        parse_poly("2(x1 + x2)")


def test_division_only_in_literals():
    with pytest.raises(ParseError):
        parse_poly("x1/2")
    with pytest.raises(ParseError):
        parse_poly("1/x1")
    with pytest.raises(ParseError):
        parse_poly("1/0")


def test_empty_input():
    with pytest.raises(ParseError):
        parse_poly("   ")


def test_unbalanced_parens():
    with pytest.raises(ParseError):
        parse_poly("(x1 + x2")


def test_distinct_variable_names_required():
    with pytest.raises(ValueError):
        ExprSource("x", ("x", "x"))
