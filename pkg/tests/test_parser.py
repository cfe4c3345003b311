from fractions import Fraction

import pytest

from germinv import RingContext, parse_polynomial
from germinv.parser import PolynomialSyntaxError, UnknownVariableError

R = RingContext(("x", "y", "z"))
x, y, z = R.gens()


@pytest.mark.parametrize(
    "src, expected",
    [
        ("x^3 + x^2*y^2 + y^7 + z^2", x**3 + x**2 * y**2 + y**7 + z**2),
        ("(x+y)^2 - x^2 - 2*x*y", y**2),
        ("-x^2", -(x**2)),
        ("x**2*y", x**2 * y),
        ("3/4*x - 1/4", Fraction(3, 4) * x - Fraction(1, 4)),
        ("2*(x - y)*(x + y)", 2 * x**2 - 2 * y**2),
        ("--x", x),
        ("x^0", R.one()),
        ("0", R.zero()),
    ],
)
def test_parses(src, expected):
    assert parse_polynomial(src, R) == expected


def test_unknown_variable_position():
    with pytest.raises(UnknownVariableError) as err:
        parse_polynomial("x + q", R)
    assert err.value.pos == 4


@pytest.mark.parametrize("src, pos", [("x +", 3), ("x ^ y", 4), ("(x + y", 6), ("x $ y", 2), ("", 0), ("1/0", 2)])
def test_syntax_errors(src, pos):
    with pytest.raises(PolynomialSyntaxError) as err:
        parse_polynomial(src, R)
    assert err.value.pos == pos


def test_ring_parse_shortcut():
    assert R.parse("x*y") == x * y
