"""Test density module"""

import numpy as np
import pytest

from hypercauchy.density import (
    BinOp,
    Call,
    Const,
    Neg,
    Num,
    Var,
    builtin,
    constant,
    evaluate,
    is_vectorial,
    parse,
    parse_expression,
    sup_norm,
    to_text,
)
from hypercauchy.exceptions import DensityError, DomainError, ExpressionSyntaxError
from hypercauchy.quat import I3, CQuat

POINTS = np.array([[0.5, -0.25], [1.0, 2.0], [-1.5, 0.75]])


def test_precedence_and_associativity():
    """Test that * binds tighter than + and both associate to the left"""
    assert parse_expression("1 + 2 * x") == BinOp("+", Num(1), BinOp("*", Num(2), Var("x")))
    assert parse_expression("x - y - 1") == BinOp("-", BinOp("-", Var("x"), Var("y")), Num(1))
    assert parse_expression("-x * y") == BinOp("*", Neg(Var("x")), Var("y"))
    assert parse_expression("cos(x) * i1") == BinOp("*", Call("cos", Var("x")), Const("i1"))
    assert parse_expression("2.5i") == Num(2.5j)
    assert parse_expression("1e-3") == Num(1e-3)


def test_to_text():
    """Test minimal parenthesisation"""
    assert to_text(parse_expression("(x + y) * i1")) == "(x + y) * i1"
    assert to_text(parse_expression("x - (y - 1)")) == "x - (y - 1.0)"
    assert to_text(parse_expression("x * y + 2i")) == "x * y + 2.0i"
    assert to_text(parse_expression("-(x + y)")) == "-(x + y)"


@pytest.mark.parametrize(
    "text",
    ["x*i1 - y*i2", "exp(x) * cos(y) + i3 / (1 + x*x)", "-(x - y) * (i1 + 2i*i2)", "abs(x*i1 + y*i2) - log(2)"],
)
def test_printed_text_parses_to_same_tree(text):
    """Test parse(to_text(tree)) == tree"""
    tree = parse_expression(text)
    assert parse_expression(to_text(tree)) == tree


def test_products_keep_their_order():
    """Test that i1 * i2 = i3 and i2 * i1 = -i3"""
    np.testing.assert_allclose(parse("i1 * i2").values([0.0, 0.0]), [0, 0, 0, 1])
    np.testing.assert_allclose(parse("i2 * i1").values([0.0, 0.0]), [0, 0, 0, -1])
    assert evaluate(parse("i * i1"), [0.0, 0.0]) == CQuat(0, 1j)


def test_expression_values():
    """Test evaluation at several points"""
    values = parse("x*i1 - y*i2 + 3").values(POINTS)
    assert values.shape == (3, 4)
    np.testing.assert_allclose(values[:, 0], 3)
    np.testing.assert_allclose(values[:, 1], POINTS[:, 0])
    np.testing.assert_allclose(values[:, 2], -POINTS[:, 1])
    np.testing.assert_allclose(parse("1 / (1 + x*x)").values(POINTS)[:, 0], 1 / (1 + POINTS[:, 0] ** 2))
    np.testing.assert_allclose(parse("abs(x*i1 + y*i2)").values(POINTS)[:, 0], np.hypot(*POINTS.T))


def test_syntax_error_location():
    """Test line and column of malformed input"""
    with pytest.raises(ExpressionSyntaxError) as excinfo:
        parse("x $ y")
    assert excinfo.value.line == 1
    assert excinfo.value.column == 3


def test_unknown_names():
    """Test unknown identifiers and functions"""
    with pytest.raises(ExpressionSyntaxError) as excinfo:
        parse("x + z")
    assert excinfo.value.column == 5
    with pytest.raises(ExpressionSyntaxError):
        parse("tan(x)")


def test_overflowing_literals():
    """Test that literals beyond double range are rejected and printed text re-parses"""
    with pytest.raises(ExpressionSyntaxError) as excinfo:
        parse("2 * 1e400")
    assert excinfo.value.column == 5
    with pytest.raises(ExpressionSyntaxError):
        parse("x + 1e400i")
    tree = parse_expression("1e300 * x + 1e-400")
    assert parse_expression(to_text(tree)) == tree


def test_division_by_zero():
    """Test DensityError with the offending point"""
    density = parse("1/(x-x)")
    with pytest.raises(DensityError) as excinfo:
        density.values(POINTS)
    assert excinfo.value.point == (0.5, -0.25)
    with pytest.raises(DensityError):
        parse("1 / (1 + i*i1)").values(POINTS)


def test_function_domain():
    """Test scalar-only functions and log of zero"""
    with pytest.raises(DomainError):
        parse("sin(i1)").values(POINTS)
    with pytest.raises(DomainError):
        parse("log(x - x)").values(POINTS)


def test_builtins():
    """Test the built-in families at known points"""
    np.testing.assert_allclose(
        builtin("constant", value=[1, [0, 0.5], 0, 0.25]).values(POINTS[:1]), [[1, 0.5j, 0, 0.25]]
    )
    np.testing.assert_allclose(builtin("vector_constant", value=[0, 0, 1]).values([1.0, 1.0]), [0, 0, 0, 1])
    np.testing.assert_allclose(builtin("fourier", k=1).values([0.0, 1.0]), [0, 0, 0, 1], atol=1e-15)
    np.testing.assert_allclose(builtin("fourier", k=2).values([0.0, 1.0]), [-1, 0, 0, 0], atol=1e-15)
    np.testing.assert_allclose(builtin("scalar_fourier", k=1).values([-1.0, 0.0]), [-1, 0, 0, 0], atol=1e-15)
    np.testing.assert_allclose(builtin("coordinate").values([2.0, 3.0]), [0, 2, 3, 0])
    assert constant(I3).values(POINTS).shape == (3, 4)


def test_builtin_errors():
    """Test unknown families and bad parameters"""
    with pytest.raises(DensityError):
        builtin("gaussian")
    with pytest.raises(DensityError):
        builtin("constant", value=[1, 0, 0])
    with pytest.raises(DensityError):
        builtin("fourier", frequency=1)
    with pytest.raises(ValueError):
        builtin("coordinate", holder_hint=1.5)


def test_describe():
    """Test JSON-ready descriptions"""
    assert parse("x*i1 - y*i2").describe() == {"expression": "x * i1 - y * i2"}
    assert builtin("constant", value=[1, 1j, 0, 0]).describe() == {
        "builtin": "constant",
        "params": {"value": [[1.0, 0.0], [0.0, 1.0], [0.0, 0.0], [0.0, 0.0]]},
    }


def test_vectorial_and_sup_norm():
    """Test the vectorial predicate and the sampled sup norm"""
    assert is_vectorial(builtin("coordinate"), POINTS)
    assert not is_vectorial(builtin("fourier", k=1), POINTS)
    assert sup_norm(builtin("coordinate"), POINTS) == pytest.approx(np.hypot(1.0, 2.0))
