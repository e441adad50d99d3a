"""The density module

Boundary densities f: curve -> H(C). A density is either a built-in family
(`constant`, `fourier`, `scalar_fourier`, `coordinate`, `vector_constant`) or
an arithmetic expression in x and y parsed by a lark grammar. Products are
quaternionic and keep their written order.

Grammar (EBNF)::

    sum     = product { ("+" | "-") product } ;
    product = unary { ("*" | "/") unary } ;
    unary   = ("-" | "+") unary | atom ;
    atom    = IMAG | NUMBER | NAME "(" sum ")" | NAME | "(" sum ")" ;
    NAME    = x | y | i | i1 | i2 | i3 | cos | sin | exp | log | abs ;
    NUMBER  = digits [ "." digits ] [ ("e" | "E") [ "+" | "-" ] digits ] ;
    IMAG    = NUMBER "i" ;
"""

from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

import numpy as np
from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput, VisitError

from hypercauchy.exceptions import DensityError, DomainError, ExpressionSyntaxError
from hypercauchy.quat import CQuat, qmul, qnorm, qscalar

GRAMMAR = r"""
?start: sum

?sum: product
    | sum "+" product   -> add
    | sum "-" product   -> sub

?product: unary
    | product "*" unary -> mul
    | product "/" unary -> div

?unary: atom
    | "-" unary         -> neg
    | "+" unary

?atom: IMAG             -> imag
    | NUMBER            -> number
    | NAME "(" sum ")"  -> call
    | NAME              -> name
    | "(" sum ")"

IMAG.2: /(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?i/
NUMBER: /(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?/
NAME: /[A-Za-z_][A-Za-z0-9_]*/

%import common.WS
%ignore WS
"""

_PARSER = Lark(GRAMMAR, parser="lalr", start="start")

VARIABLES = ("x", "y")
CONSTANTS = {
    "i": (1j, 0, 0, 0),
    "i1": (0, 1, 0, 0),
    "i2": (0, 0, 1, 0),
    "i3": (0, 0, 0, 1),
}
FUNCTIONS = ("cos", "sin", "exp", "log", "abs")
_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2}


# Expression tree


@dataclass(frozen=True)
class Num:
    """Real or purely imaginary literal"""

    value: complex


@dataclass(frozen=True)
class Var:
    """Coordinate variable x or y"""

    name: str


@dataclass(frozen=True)
class Const:
    """Reserved constant i, i1, i2 or i3"""

    name: str


@dataclass(frozen=True)
class Call:
    """Unary function applied to an argument"""

    func: str
    arg: "ExprNode"


@dataclass(frozen=True)
class Neg:
    """Unary minus"""

    arg: "ExprNode"


@dataclass(frozen=True)
class BinOp:
    """Binary +, -, * or /; * and / are quaternionic"""

    op: str
    left: "ExprNode"
    right: "ExprNode"


ExprNode = Union[Num, Var, Const, Call, Neg, BinOp]


def _literal(text: str, token) -> float:
    value = float(text)
    if not np.isfinite(value):
        raise ExpressionSyntaxError(f"literal {str(token)!r} overflows a double", token.line, token.column)
    return value


class _TreeBuilder(Transformer):
    """Turn the lark parse tree into ExprNode values"""

    # pylint: disable=missing-function-docstring

    def number(self, items):
        return Num(complex(_literal(items[0], items[0])))

    def imag(self, items):
        return Num(complex(0.0, _literal(items[0][:-1], items[0])))

    def name(self, items):
        token = items[0]
        if token in VARIABLES:
            return Var(str(token))
        if token in CONSTANTS:
            return Const(str(token))
        raise ExpressionSyntaxError(f"unknown identifier {str(token)!r}", token.line, token.column)

    def call(self, items):
        token, arg = items
        if token not in FUNCTIONS:
            raise ExpressionSyntaxError(f"unknown function {str(token)!r}", token.line, token.column)
        return Call(str(token), arg)

    def neg(self, items):
        return Neg(items[0])

    def add(self, items):
        return BinOp("+", *items)

    def sub(self, items):
        return BinOp("-", *items)

    def mul(self, items):
        return BinOp("*", *items)

    def div(self, items):
        return BinOp("/", *items)


def parse_expression(text: str) -> ExprNode:
    """Parse an expression string into a tree

    :param text: Expression source.
    :returns: Root `ExprNode`.
    :raises ExpressionSyntaxError: On malformed input or unknown names, with
        the line and column of the offending token.
    """
    try:
        tree = _PARSER.parse(text)
    except UnexpectedInput as exc:
        raise ExpressionSyntaxError(
            f"cannot parse {text!r}", getattr(exc, "line", None), getattr(exc, "column", None)
        ) from exc
    try:
        return _TreeBuilder().transform(tree)
    except VisitError as exc:
        raise exc.orig_exc from exc


def _precedence(node: ExprNode) -> int:
    if isinstance(node, BinOp):
        return _PRECEDENCE[node.op]
    if isinstance(node, Neg):
        return 3
    return 4


def _number_text(value: complex) -> str:
    if value.imag != 0:
        return f"{value.imag!r}i"
    return repr(value.real)


def to_text(node: ExprNode) -> str:
    """Pretty-print a tree with the fewest parentheses that keep its shape"""
    if isinstance(node, Num):
        return _number_text(node.value)
    if isinstance(node, (Var, Const)):
        return node.name
    if isinstance(node, Call):
        return f"{node.func}({to_text(node.arg)})"
    if isinstance(node, Neg):
        inner = to_text(node.arg)
        return f"-({inner})" if _precedence(node.arg) < 3 else f"-{inner}"
    prec = _precedence(node)
    left, right = to_text(node.left), to_text(node.right)
    if _precedence(node.left) < prec:
        left = f"({left})"
    if _precedence(node.right) <= prec:
        right = f"({right})"
    return f"{left} {node.op} {right}"


def _evaluate_node(node: ExprNode, points: np.ndarray) -> np.ndarray:
    count = points.shape[0]
    if isinstance(node, Num):
        return np.broadcast_to(qscalar(node.value), (count, 4)).copy()
    if isinstance(node, Var):
        return qscalar(points[:, VARIABLES.index(node.name)])
    if isinstance(node, Const):
        return np.tile(np.array(CONSTANTS[node.name], dtype=np.complex128), (count, 1))
    if isinstance(node, Neg):
        return -_evaluate_node(node.arg, points)
    if isinstance(node, Call):
        return _apply_function(node.func, _evaluate_node(node.arg, points), points)
    left = _evaluate_node(node.left, points)
    right = _evaluate_node(node.right, points)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return qmul(left, right)
    return _divide(left, right, points)


def _divide(left: np.ndarray, right: np.ndarray, points: np.ndarray) -> np.ndarray:
    quadratic = np.sum(right * right, axis=-1)
    bad = np.flatnonzero(quadratic == 0)
    if bad.size:
        raise DensityError("division by zero or by a zero divisor", tuple(points[bad[0]]))
    inverse = right.copy()
    inverse[:, 1:] = -inverse[:, 1:]
    return qmul(left, inverse / quadratic[:, None])


def _apply_function(func: str, values: np.ndarray, points: np.ndarray) -> np.ndarray:
    if func == "abs":
        return qscalar(qnorm(values))
    vector = np.any(values[:, 1:] != 0, axis=-1)
    if np.any(vector):
        point = tuple(points[np.flatnonzero(vector)[0]])
        raise DomainError(f"{func} is only defined for scalar arguments; non-scalar at point {point}")
    scalar = values[:, 0]
    if func == "log":
        zero = np.flatnonzero(scalar == 0)
        if zero.size:
            raise DomainError(f"log of zero at point {tuple(points[zero[0]])}")
    return qscalar(getattr(np, func)(scalar))


# Densities


def _polar_angle(points: np.ndarray, center) -> np.ndarray:
    return np.arctan2(points[:, 1] - center[1], points[:, 0] - center[0])


def _builtin_constant(points, value):
    return np.tile(np.array(value, dtype=np.complex128), (points.shape[0], 1))


def _builtin_vector_constant(points, value):
    return _builtin_constant(points, (0j,) + tuple(value))


def _builtin_fourier(points, k=1, center=(0.0, 0.0)):
    s = k * _polar_angle(points, center)
    out = np.zeros((points.shape[0], 4), dtype=np.complex128)
    out[:, 0] = np.cos(s)
    out[:, 3] = np.sin(s)
    return out


def _builtin_scalar_fourier(points, k=1, center=(0.0, 0.0)):
    return qscalar(np.cos(k * _polar_angle(points, center)))


def _builtin_coordinate(points):
    out = np.zeros((points.shape[0], 4), dtype=np.complex128)
    out[:, 1] = points[:, 0]
    out[:, 2] = points[:, 1]
    return out


BUILTINS = {
    "constant": _builtin_constant,
    "vector_constant": _builtin_vector_constant,
    "fourier": _builtin_fourier,
    "scalar_fourier": _builtin_scalar_fourier,
    "coordinate": _builtin_coordinate,
}


def _freeze(value):
    if isinstance(value, (list, tuple)):
        return tuple(_freeze(v) for v in value)
    return value


def _complex_components(value) -> tuple:
    """Accept complex numbers or [re, im] pairs"""
    out = []
    for item in value:
        if isinstance(item, (list, tuple)):
            out.append(complex(item[0], item[1]))
        else:
            out.append(complex(item))
    return tuple(out)


@dataclass(frozen=True)
class Density:
    """A boundary density

    :param name: Built-in name, or "expression" for parsed densities.
    :param params: Built-in parameters as sorted (key, value) pairs.
    :param tree: Parsed expression tree for expression densities.
    :param holder_hint: Optional Hoelder exponent in (0, 1]; metadata only.
    """

    name: str
    params: Tuple[Tuple[str, object], ...] = ()
    tree: Optional[ExprNode] = None
    holder_hint: Optional[float] = field(default=None, compare=False)

    def __post_init__(self):
        if self.holder_hint is not None and not 0 < self.holder_hint <= 1:
            raise ValueError(f"holder_hint must lie in (0, 1], got {self.holder_hint}")
        if self.tree is None and self.name not in BUILTINS:
            raise DensityError(f"unknown built-in density {self.name!r}")

    def values(self, points) -> np.ndarray:
        """Evaluate at many points

        :param points: Array of shape (n, 2) or (2,).
        :returns: Quaternion array of shape (n, 4) (or (4,) for one point).
        """
        pts = np.asarray(points, dtype=np.float64)
        single = pts.ndim == 1
        pts = np.atleast_2d(pts)
        if self.tree is not None:
            out = _evaluate_node(self.tree, pts)
        else:
            out = BUILTINS[self.name](pts, **dict(self.params))
        return out[0] if single else out

    __call__ = values

    def describe(self) -> dict:
        """JSON-ready description"""
        if self.tree is not None:
            return {"expression": to_text(self.tree)}
        return {"builtin": self.name, "params": {k: _jsonable(v) for k, v in self.params}}


def _jsonable(value):
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, tuple):
        return [_jsonable(v) for v in value]
    return value


def parse(text: str, holder_hint: Optional[float] = None) -> Density:
    """Parse an expression into a density

    :param text: Expression in x, y, i, i1, i2, i3 (see module grammar).
    :param holder_hint: Optional smoothness metadata.
    :returns: `Density`.
    """
    return Density("expression", tree=parse_expression(text), holder_hint=holder_hint)


def builtin(name: str, holder_hint: Optional[float] = None, **params) -> Density:
    """Build a built-in density

    :param name: One of `BUILTINS`.
    :param params: Family parameters: `value` for constant (4 components) and
        vector_constant (3 components), each complex or [re, im]; `k` and
        optional `center` for fourier and scalar_fourier.
    :returns: `Density`.
    """
    if name not in BUILTINS:
        raise DensityError(f"unknown built-in density {name!r}")
    if "value" in params:
        params["value"] = _complex_components(params["value"])
        expected = 4 if name == "constant" else 3
        if len(params["value"]) != expected:
            raise DensityError(f"{name} needs {expected} components")
    if "k" in params:
        params["k"] = int(params["k"])
    frozen = tuple(sorted((k, _freeze(v)) for k, v in params.items()))
    density = Density(name, frozen, holder_hint=holder_hint)
    try:
        density.values(np.zeros((1, 2)) + 1.0)
    except TypeError as exc:
        raise DensityError(f"bad parameters for {name}: {exc}") from exc
    return density


def constant(q: CQuat) -> Density:
    """Density equal to q everywhere"""
    return builtin("constant", value=q.components, holder_hint=1.0)


def evaluate(density: Density, point) -> CQuat:
    """Value of a density at one point"""
    return CQuat.from_array(density.values(np.asarray(point, dtype=np.float64)))


def is_vectorial(density: Density, points, tol: float = 0.0) -> bool:
    """True when the scalar part is at most tol at every sampled point"""
    return bool(np.max(np.abs(density.values(points)[:, 0])) <= tol)


def sup_norm(density: Density, points) -> float:
    """Largest quaternion norm over sampled points

    :raises DensityError: When a sampled value is not finite.
    """
    norms = qnorm(density.values(points))
    if not np.all(np.isfinite(norms)):
        raise DensityError("density is not bounded on the sampled points")
    return float(np.max(norms))
