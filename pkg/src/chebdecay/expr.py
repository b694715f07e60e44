"""Expression trees for piece formulas.

Grammar accepted by :func:`parse_expression`: numeric literals, the variable
``t`` (``x`` is accepted as a synonym), the constants ``pi`` and ``e``,
``+ - * /``, integer powers written ``^`` or ``**``, unary minus, and the
one-argument functions ``sin cos exp log sqrt abs``.

Trees are immutable, evaluate vectorised over numpy arrays and can be
differentiated symbolically.  Differentiation folds trivial constants but
does no further simplification.
"""

from __future__ import annotations

import ast
import math
from dataclasses import dataclass
from typing import ClassVar

import numpy as np
from numpy.typing import NDArray

from .errors import DifferentiationError, EvaluationError, ParseError

VARIABLE = "t"
_VARIABLE_ALIASES = frozenset({"t", "x"})
_CONSTANTS = {"pi": math.pi, "e": math.e}
FUNCTIONS = ("sin", "cos", "exp", "log", "sqrt", "abs")

Array = NDArray[np.float64]


class Expr:
    """Base class of expression nodes."""

    precedence: ClassVar[int] = 5

    def evaluate(self, t: Array) -> Array:
        raise NotImplementedError

    def diff(self) -> Expr:
        raise NotImplementedError

    def children(self) -> tuple[Expr, ...]:
        return ()

    def __call__(self, t) -> Array:
        return self.evaluate(np.asarray(t, dtype=np.float64))

    def _wrap(self, child: Expr, strict: bool = False) -> str:
        lower = child.precedence <= self.precedence if strict else child.precedence < self.precedence
        return f"({child})" if lower else str(child)


@dataclass(frozen=True)
class Const(Expr):
    value: float
    name: str | None = None

    @property
    def precedence(self) -> int:  # type: ignore[override]
        return 3 if self.value < 0 and self.name is None else 5

    def evaluate(self, t):
        return np.full(np.shape(t), self.value, dtype=np.float64)

    def diff(self):
        return ZERO

    def __str__(self):
        return self.name if self.name is not None else repr(float(self.value))


@dataclass(frozen=True)
class Var(Expr):
    def evaluate(self, t):
        return np.asarray(t, dtype=np.float64)

    def diff(self):
        return ONE

    def __str__(self):
        return VARIABLE


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr
    precedence: ClassVar[int] = 3

    def evaluate(self, t):
        return -self.arg.evaluate(t)

    def diff(self):
        return neg(self.arg.diff())

    def children(self):
        return (self.arg,)

    def __str__(self):
        return f"-{self._wrap(self.arg, strict=True)}"


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr
    precedence: ClassVar[int] = 1

    def evaluate(self, t):
        return self.left.evaluate(t) + self.right.evaluate(t)

    def diff(self):
        return add(self.left.diff(), self.right.diff())

    def children(self):
        return (self.left, self.right)

    def __str__(self):
        return f"{self._wrap(self.left)} + {self._wrap(self.right, strict=True)}"


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr
    precedence: ClassVar[int] = 1

    def evaluate(self, t):
        return self.left.evaluate(t) - self.right.evaluate(t)

    def diff(self):
        return sub(self.left.diff(), self.right.diff())

    def children(self):
        return (self.left, self.right)

    def __str__(self):
        return f"{self._wrap(self.left)} - {self._wrap(self.right, strict=True)}"


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr
    precedence: ClassVar[int] = 2

    def evaluate(self, t):
        return self.left.evaluate(t) * self.right.evaluate(t)

    def diff(self):
        return add(mul(self.left.diff(), self.right), mul(self.left, self.right.diff()))

    def children(self):
        return (self.left, self.right)

    def __str__(self):
        return f"{self._wrap(self.left)}*{self._wrap(self.right, strict=True)}"


@dataclass(frozen=True)
class Div(Expr):
    """Quotient; a zero denominator is reported at evaluation time."""

    left: Expr
    right: Expr
    precedence: ClassVar[int] = 2

    def evaluate(self, t):
        den = self.right.evaluate(t)
        if np.any(den == 0.0):
            bad = np.broadcast_to(t, den.shape)[den == 0.0][0]
            raise EvaluationError(f"division by zero in '{self}' at t={bad!r}")
        return self.left.evaluate(t) / den

    def diff(self):
        u, v = self.left, self.right
        num = sub(mul(u.diff(), v), mul(u, v.diff()))
        return div(num, power(v, 2))

    def children(self):
        return (self.left, self.right)

    def __str__(self):
        return f"{self._wrap(self.left)}/{self._wrap(self.right, strict=True)}"


@dataclass(frozen=True)
class Pow(Expr):
    """Integer power ``base ** exponent``."""

    base: Expr
    exponent: int
    precedence: ClassVar[int] = 4

    def evaluate(self, t):
        b = self.base.evaluate(t)
        if self.exponent >= 0:
            return b**self.exponent
        if np.any(b == 0.0):
            raise EvaluationError(f"zero raised to negative power in '{self}'")
        return 1.0 / b ** (-self.exponent)

    def diff(self):
        n = self.exponent
        return mul(mul(Const(float(n)), power(self.base, n - 1)), self.base.diff())

    def children(self):
        return (self.base,)

    def __str__(self):
        exp = str(self.exponent) if self.exponent >= 0 else f"({self.exponent})"
        return f"{self._wrap(self.base, strict=True)}^{exp}"


def _checked_log(u, node):
    if np.any(u <= 0.0):
        raise EvaluationError(f"log of a nonpositive value in '{node}'")
    return np.log(u)


def _checked_sqrt(u, node):
    if np.any(u < 0.0):
        raise EvaluationError(f"sqrt of a negative value in '{node}'")
    return np.sqrt(u)


@dataclass(frozen=True)
class Call(Expr):
    func: str
    arg: Expr

    def __post_init__(self):
        if self.func not in FUNCTIONS:
            raise ValueError(f"unknown function {self.func!r}")

    def evaluate(self, t):
        u = self.arg.evaluate(t)
        if self.func == "log":
            return _checked_log(u, self)
        if self.func == "sqrt":
            return _checked_sqrt(u, self)
        return getattr(np, self.func)(u)

    def diff(self):
        u, du = self.arg, self.arg.diff()
        f = self.func
        if f == "sin":
            outer = Call("cos", u)
        elif f == "cos":
            outer = neg(Call("sin", u))
        elif f == "exp":
            outer = self
        elif f == "log":
            return div(du, u)
        elif f == "sqrt":
            return div(du, mul(Const(2.0), self))
        else:
            raise DifferentiationError(
                f"cannot differentiate '{self}': its argument changes sign inside the "
                "piece; declare the sign change as a breakpoint"
            )
        return mul(outer, du)

    def children(self):
        return (self.arg,)

    def __str__(self):
        return f"{self.func}({self.arg})"


ZERO = Const(0.0)
ONE = Const(1.0)
T = Var()


def _is(node: Expr, value: float) -> bool:
    return isinstance(node, Const) and node.name is None and node.value == value


def neg(u: Expr) -> Expr:
    if isinstance(u, Const) and u.name is None:
        return Const(-u.value)
    if isinstance(u, Neg):
        return u.arg
    return Neg(u)


def add(u: Expr, v: Expr) -> Expr:
    if _is(u, 0.0):
        return v
    if _is(v, 0.0):
        return u
    if isinstance(u, Const) and isinstance(v, Const):
        return Const(u.value + v.value)
    return Add(u, v)


def sub(u: Expr, v: Expr) -> Expr:
    if _is(v, 0.0):
        return u
    if _is(u, 0.0):
        return neg(v)
    if isinstance(u, Const) and isinstance(v, Const):
        return Const(u.value - v.value)
    return Sub(u, v)


def mul(u: Expr, v: Expr) -> Expr:
    if _is(u, 0.0) or _is(v, 0.0):
        return ZERO
    if _is(u, 1.0):
        return v
    if _is(v, 1.0):
        return u
    if _is(u, -1.0):
        return neg(v)
    if _is(v, -1.0):
        return neg(u)
    if isinstance(u, Const) and isinstance(v, Const):
        return Const(u.value * v.value)
    return Mul(u, v)


def div(u: Expr, v: Expr) -> Expr:
    if _is(v, 1.0):
        return u
    if _is(u, 0.0):
        return ZERO
    return Div(u, v)


def power(u: Expr, n: int) -> Expr:
    if n == 0:
        return ONE
    if n == 1:
        return u
    return Pow(u, n)


def walk(node: Expr):
    """Yield every node of the tree, parents before children."""
    yield node
    for c in node.children():
        yield from walk(c)


def contains_abs(node: Expr) -> bool:
    return any(isinstance(n, Call) and n.func == "abs" for n in walk(node))


def derivative(node: Expr, order: int) -> Expr:
    for _ in range(order):
        node = node.diff()
    return node


def resolve_abs(node: Expr, lo: float, hi: float, samples: int = 257) -> Expr:
    """Replace ``abs(u)`` by ``u`` or ``-u`` where ``u`` keeps one sign on ``(lo, hi)``.

    The sign is judged from ``samples`` Chebyshev-distributed interior points,
    so a root of ``u`` at ``lo`` or ``hi`` is allowed.  Calls whose argument
    changes sign are left untouched.
    """
    theta = (np.arange(samples) + 0.5) * np.pi / samples
    pts = lo + 0.5 * (hi - lo) * (1.0 - np.cos(theta))

    def rewrite(n: Expr) -> Expr:
        if isinstance(n, Const) or isinstance(n, Var):
            return n
        if isinstance(n, Neg):
            return Neg(rewrite(n.arg))
        if isinstance(n, Pow):
            return Pow(rewrite(n.base), n.exponent)
        if isinstance(n, Call):
            arg = rewrite(n.arg)
            if n.func != "abs":
                return Call(n.func, arg)
            try:
                vals = arg.evaluate(pts)
            except EvaluationError:
                return Call("abs", arg)
            if np.all(vals >= 0.0):
                return arg
            if np.all(vals <= 0.0):
                return neg(arg)
            return Call("abs", arg)
        return type(n)(rewrite(n.left), rewrite(n.right))

    return rewrite(node)


# ---------------------------------------------------------------------------
# parsing


_BINOPS = {ast.Add: Add, ast.Sub: Sub, ast.Mult: Mul, ast.Div: Div}


def _constant_value(node: Expr) -> float | None:
    if any(isinstance(n, Var) for n in walk(node)):
        return None
    try:
        return float(node.evaluate(np.zeros(1))[0])
    except EvaluationError:
        return None


class _Converter:
    def __init__(self, text: str, offset: int, positions: list[int]):
        self.text = text
        self.offset = offset
        self.positions = positions

    def error(self, msg: str, node: ast.AST | None = None) -> ParseError:
        col = getattr(node, "col_offset", 0) if node is not None else 0
        col = self.positions[min(col, len(self.positions) - 1)]
        return ParseError(msg, self.offset + col, self.text)

    def convert(self, node: ast.AST) -> Expr:
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
                raise self.error(f"unsupported literal {node.value!r}", node)
            return Const(float(node.value))
        if isinstance(node, ast.Name):
            if node.id in _VARIABLE_ALIASES:
                return T
            if node.id in _CONSTANTS:
                return Const(_CONSTANTS[node.id], node.id)
            raise self.error(f"unknown name {node.id!r}", node)
        if isinstance(node, ast.UnaryOp):
            arg = self.convert(node.operand)
            if isinstance(node.op, ast.USub):
                if isinstance(arg, Const) and arg.name is None:
                    return Const(-arg.value)
                return Neg(arg)
            if isinstance(node.op, ast.UAdd):
                return arg
            raise self.error("unsupported unary operator", node)
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                base = self.convert(node.left)
                exponent = _constant_value(self.convert(node.right))
                if exponent is None or exponent != int(exponent):
                    raise self.error(
                        "exponents must be integer constants; write fractional powers with sqrt or exp/log",
                        node.right,
                    )
                return Pow(base, int(exponent))
            op = _BINOPS.get(type(node.op))
            if op is None:
                raise self.error("unsupported binary operator", node)
            return op(self.convert(node.left), self.convert(node.right))
        if isinstance(node, ast.Call):
            if not isinstance(node.func, ast.Name) or node.func.id not in FUNCTIONS:
                raise self.error(f"unknown function; expected one of {', '.join(FUNCTIONS)}", node)
            if len(node.args) != 1 or node.keywords:
                raise self.error(f"{node.func.id} takes exactly one argument", node)
            return Call(node.func.id, self.convert(node.args[0]))
        raise self.error(f"unsupported syntax '{ast.unparse(node)}'", node)


def parse_expression(source: str, *, text: str | None = None, offset: int = 0) -> Expr:
    """Parse a formula in the variable ``t``.

    Parameters
    ----------
    source : str
        The formula.
    text, offset : optional
        Enclosing text and the offset of ``source`` within it, so that
        :class:`ParseError` positions refer to the enclosing text.
    """
    if text is None:
        text = source
    lead = len(source) - len(source.lstrip())
    body = source.strip().replace("\n", " ").replace("\t", " ")
    if not body:
        raise ParseError("empty expression", offset + lead, text)
    # '^' becomes '**'; keep a map from rewritten columns back to source columns
    rewritten, positions = [], []
    for i, ch in enumerate(body):
        if ch == "^":
            rewritten.append("**")
            positions.extend((i, i))
        else:
            rewritten.append(ch)
            positions.append(i)
    positions.append(len(body))
    py = "".join(rewritten)
    try:
        tree = ast.parse(py, mode="eval")
    except SyntaxError as exc:
        col = max((exc.offset or 1) - 1, 0)
        col = positions[min(col, len(positions) - 1)]
        raise ParseError(f"syntax error: {exc.msg}", offset + lead + col, text) from None
    return _Converter(text, offset + lead, positions).convert(tree.body)
