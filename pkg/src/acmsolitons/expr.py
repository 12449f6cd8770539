"""Symbolic scalar expressions over named chart coordinates.

The expression language is deliberately small: real constants, named
coordinates, the binary operators ``+ - * / ^``, unary minus, and the
functions exp, log, sin, cos, tan, sinh, cosh, tanh, sqrt.  Trees are
immutable and hashable, evaluation is plain IEEE double arithmetic, and
differentiation is exact and closed over the same node set, so rounding
during evaluation is the only numerical error introduced downstream.

Everything here is pure; trees may be shared and evaluated concurrently.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Mapping

__all__ = [
    "Expr", "Const", "Coord", "Neg", "Add", "Sub", "Mul", "Div", "Pow", "Call",
    "ExprError", "ParseError", "EvalError", "FUNCTIONS", "CONSTANTS",
    "parse_expr", "evaluate", "diff", "simplify_basic", "render",
    "coordinates_of", "add", "sub", "mul", "div", "neg", "pow_", "call",
]


class ExprError(Exception):
    """Base class for expression failures."""


class ParseError(ExprError):
    """Malformed input text; carries the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class EvalError(ExprError):
    """Domain violation during evaluation; carries the offending subtree."""

    def __init__(self, message: str, subtree: "Expr"):
        super().__init__(f"{message} in '{render(subtree)}'")
        self.subtree = subtree


class Expr:
    """Base expression node.

    Python arithmetic operators build trees through the folding
    constructors below, so ``Const(1.0) * e`` collapses to ``e`` and
    fixture code can assemble metrics without leaving trivial wrappers
    behind.
    """

    def __add__(self, other):
        return add(self, _coerce(other))

    def __radd__(self, other):
        return add(_coerce(other), self)

    def __sub__(self, other):
        return sub(self, _coerce(other))

    def __rsub__(self, other):
        return sub(_coerce(other), self)

    def __mul__(self, other):
        return mul(self, _coerce(other))

    def __rmul__(self, other):
        return mul(_coerce(other), self)

    def __truediv__(self, other):
        return div(self, _coerce(other))

    def __rtruediv__(self, other):
        return div(_coerce(other), self)

    def __pow__(self, other):
        return pow_(self, _coerce(other))

    def __neg__(self):
        return neg(self)

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class Const(Expr):
    value: float


@dataclass(frozen=True)
class Coord(Expr):
    name: str


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: Expr


@dataclass(frozen=True)
class Call(Expr):
    func: str
    arg: Expr


FUNCTIONS: Mapping[str, Callable[[float], float]] = {
    "exp": math.exp,
    "log": math.log,
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "sinh": math.sinh,
    "cosh": math.cosh,
    "tanh": math.tanh,
    "sqrt": math.sqrt,
}

CONSTANTS: Mapping[str, float] = {"pi": math.pi, "e": math.e}

_ZERO = Const(0.0)
_ONE = Const(1.0)


def _coerce(value) -> Expr:
    if isinstance(value, Expr):
        return value
    if isinstance(value, (int, float)):
        return Const(float(value))
    raise TypeError(f"cannot use {value!r} in an expression")


def _const_value(e: Expr):
    return e.value if isinstance(e, Const) else None


# ---------------------------------------------------------------------------
# Folding constructors.  They eliminate 0/1 identities and fold constant
# operands, which keeps derivatives compact and makes an a=1 deformed metric
# collapse to the undeformed trees structurally.

def add(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    if _const_value(a) == 0.0:
        return b
    if _const_value(b) == 0.0:
        return a
    return Add(a, b)


def sub(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value - b.value)
    if _const_value(b) == 0.0:
        return a
    if a == b:
        return _ZERO
    if _const_value(a) == 0.0:
        return neg(b)
    return Sub(a, b)


def mul(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value * b.value)
    if _const_value(a) == 0.0 or _const_value(b) == 0.0:
        return _ZERO
    if _const_value(a) == 1.0:
        return b
    if _const_value(b) == 1.0:
        return a
    return Mul(a, b)


def div(a: Expr, b: Expr) -> Expr:
    if _const_value(b) == 1.0:
        return a
    if _const_value(a) == 0.0:
        return _ZERO
    if isinstance(a, Const) and isinstance(b, Const) and b.value != 0.0:
        return Const(a.value / b.value)
    return Div(a, b)


def neg(a: Expr) -> Expr:
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def pow_(a: Expr, b: Expr) -> Expr:
    if _const_value(b) == 1.0:
        return a
    if _const_value(b) == 0.0:
        return _ONE
    return Pow(a, b)


def call(func: str, arg: Expr) -> Expr:
    if func not in FUNCTIONS:
        raise ValueError(f"unknown function '{func}'")
    return Call(func, arg)


# ---------------------------------------------------------------------------
# Evaluation

def evaluate(e: Expr, point: Mapping[str, float]) -> float:
    """Evaluate ``e`` at ``point`` (a mapping coordinate name -> value).

    Raises EvalError on domain violations: division by zero, log of a
    non-positive value, sqrt of a negative value, a negative base with a
    non-integer exponent, overflow, or a coordinate missing from ``point``.
    """
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Coord):
        try:
            return point[e.name]
        except KeyError:
            raise EvalError(f"unknown coordinate '{e.name}'", e) from None
    if isinstance(e, Neg):
        return -evaluate(e.arg, point)
    if isinstance(e, Add):
        return evaluate(e.left, point) + evaluate(e.right, point)
    if isinstance(e, Sub):
        return evaluate(e.left, point) - evaluate(e.right, point)
    if isinstance(e, Mul):
        return evaluate(e.left, point) * evaluate(e.right, point)
    if isinstance(e, Div):
        denominator = evaluate(e.right, point)
        if denominator == 0.0:
            raise EvalError("division by zero", e)
        return evaluate(e.left, point) / denominator
    if isinstance(e, Pow):
        return _eval_pow(e, point)
    if isinstance(e, Call):
        value = evaluate(e.arg, point)
        fn = FUNCTIONS[e.func]
        if e.func == "log" and value <= 0.0:
            raise EvalError("log of a non-positive value", e)
        if e.func == "sqrt" and value < 0.0:
            raise EvalError("sqrt of a negative value", e)
        try:
            return fn(value)
        except (ValueError, OverflowError) as exc:
            raise EvalError(f"{e.func} failed ({exc})", e) from None
    raise TypeError(f"not an expression node: {e!r}")


def _eval_pow(e: Pow, point: Mapping[str, float]) -> float:
    base = evaluate(e.base, point)
    exponent = evaluate(e.exponent, point)
    if base == 0.0 and exponent < 0.0:
        raise EvalError("zero base with negative exponent", e)
    if base < 0.0 and not float(exponent).is_integer():
        raise EvalError("negative base with non-integer exponent", e)
    try:
        return math.pow(base, exponent)
    except (ValueError, OverflowError) as exc:
        raise EvalError(f"power failed ({exc})", e) from None


# ---------------------------------------------------------------------------
# Differentiation

def diff(e: Expr, name: str) -> Expr:
    """Exact partial derivative of ``e`` with respect to coordinate ``name``."""
    if isinstance(e, Const):
        return _ZERO
    if isinstance(e, Coord):
        return _ONE if e.name == name else _ZERO
    if isinstance(e, Neg):
        return neg(diff(e.arg, name))
    if isinstance(e, Add):
        return add(diff(e.left, name), diff(e.right, name))
    if isinstance(e, Sub):
        return sub(diff(e.left, name), diff(e.right, name))
    if isinstance(e, Mul):
        return add(mul(diff(e.left, name), e.right), mul(e.left, diff(e.right, name)))
    if isinstance(e, Div):
        numerator = sub(
            mul(diff(e.left, name), e.right), mul(e.left, diff(e.right, name))
        )
        return div(numerator, pow_(e.right, Const(2.0)))
    if isinstance(e, Pow):
        du = diff(e.base, name)
        if isinstance(e.exponent, Const):
            k = e.exponent.value
            return mul(mul(e.exponent, pow_(e.base, Const(k - 1.0))), du)
        # u^v = exp(v log u): derivative u^v (v' log u + v u'/u)
        dv = diff(e.exponent, name)
        inner = add(mul(dv, call("log", e.base)), mul(e.exponent, div(du, e.base)))
        return mul(e, inner)
    if isinstance(e, Call):
        du = diff(e.arg, name)
        u = e.arg
        if e.func == "exp":
            return mul(e, du)
        if e.func == "log":
            return div(du, u)
        if e.func == "sin":
            return mul(call("cos", u), du)
        if e.func == "cos":
            return neg(mul(call("sin", u), du))
        if e.func == "tan":
            return mul(add(_ONE, pow_(e, Const(2.0))), du)
        if e.func == "sinh":
            return mul(call("cosh", u), du)
        if e.func == "cosh":
            return mul(call("sinh", u), du)
        if e.func == "tanh":
            return mul(sub(_ONE, pow_(e, Const(2.0))), du)
        if e.func == "sqrt":
            return div(du, mul(Const(2.0), e))
    raise TypeError(f"not an expression node: {e!r}")


# ---------------------------------------------------------------------------
# Simplification

def simplify_basic(e: Expr) -> Expr:
    """Constant folding plus 0/1 identity elimination, applied bottom-up.

    The result evaluates identically to the input (up to rounding) at every
    point where the input is defined.
    """
    if isinstance(e, (Const, Coord)):
        return e
    if isinstance(e, Neg):
        return neg(simplify_basic(e.arg))
    if isinstance(e, Add):
        return add(simplify_basic(e.left), simplify_basic(e.right))
    if isinstance(e, Sub):
        return sub(simplify_basic(e.left), simplify_basic(e.right))
    if isinstance(e, Mul):
        return mul(simplify_basic(e.left), simplify_basic(e.right))
    if isinstance(e, Div):
        return div(simplify_basic(e.left), simplify_basic(e.right))
    if isinstance(e, Pow):
        base = simplify_basic(e.base)
        exponent = simplify_basic(e.exponent)
        if _const_value(base) == 1.0:
            return _ONE
        folded = pow_(base, exponent)
        if isinstance(folded, Pow) and isinstance(base, Const) and isinstance(exponent, Const):
            return _fold_node(folded)
        return folded
    if isinstance(e, Call):
        arg = simplify_basic(e.arg)
        return _fold_node(Call(e.func, arg)) if isinstance(arg, Const) else Call(e.func, arg)
    raise TypeError(f"not an expression node: {e!r}")


def _fold_node(e: Expr) -> Expr:
    # Fold a constant-argument node when its value is defined and finite.
    try:
        value = evaluate(e, {})
    except EvalError:
        return e
    return Const(value) if math.isfinite(value) else e


# ---------------------------------------------------------------------------
# Rendering

_PREC_ADD, _PREC_MUL, _PREC_NEG, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


def _prec(e: Expr) -> int:
    if isinstance(e, (Add, Sub)):
        return _PREC_ADD
    if isinstance(e, (Mul, Div)):
        return _PREC_MUL
    if isinstance(e, Neg):
        return _PREC_NEG
    if isinstance(e, Const) and math.copysign(1.0, e.value) < 0:
        return _PREC_NEG  # renders with a leading minus
    if isinstance(e, Pow):
        return _PREC_POW
    return _PREC_ATOM


def render(e: Expr) -> str:
    """Render a tree as parseable text with minimal parentheses.

    For trees in the parser's image (negative values spelled with unary
    minus rather than negative Const nodes) the round trip
    ``parse_expr(render(t)) == t`` holds structurally.
    """
    return _render(e)


def _render(e: Expr) -> str:
    if isinstance(e, Const):
        if math.copysign(1.0, e.value) < 0:
            return "-" + _wrap(Const(-e.value), _PREC_NEG)
        return repr(e.value)
    if isinstance(e, Coord):
        return e.name
    if isinstance(e, Neg):
        return "-" + _wrap(e.arg, _PREC_NEG)
    if isinstance(e, Add):
        return f"{_wrap(e.left, _PREC_ADD)} + {_wrap(e.right, _PREC_ADD + 1)}"
    if isinstance(e, Sub):
        return f"{_wrap(e.left, _PREC_ADD)} - {_wrap(e.right, _PREC_ADD + 1)}"
    if isinstance(e, Mul):
        return f"{_wrap(e.left, _PREC_MUL)} * {_wrap(e.right, _PREC_MUL + 1)}"
    if isinstance(e, Div):
        return f"{_wrap(e.left, _PREC_MUL)} / {_wrap(e.right, _PREC_MUL + 1)}"
    if isinstance(e, Pow):
        # grammar: power := atom ('^' factor), so the base must be atomic
        return f"{_wrap(e.base, _PREC_ATOM)}^{_wrap(e.exponent, _PREC_NEG)}"
    if isinstance(e, Call):
        return f"{e.func}({_render(e.arg)})"
    raise TypeError(f"not an expression node: {e!r}")


def _wrap(e: Expr, minimum: int) -> str:
    text = _render(e)
    return text if _prec(e) >= minimum else f"({text})"


def coordinates_of(e: Expr) -> set:
    """Names of all coordinates appearing in the tree."""
    if isinstance(e, Coord):
        return {e.name}
    if isinstance(e, Const):
        return set()
    if isinstance(e, Neg):
        return coordinates_of(e.arg)
    if isinstance(e, Call):
        return coordinates_of(e.arg)
    if isinstance(e, (Add, Sub, Mul, Div)):
        return coordinates_of(e.left) | coordinates_of(e.right)
    if isinstance(e, Pow):
        return coordinates_of(e.base) | coordinates_of(e.exponent)
    raise TypeError(f"not an expression node: {e!r}")


# ---------------------------------------------------------------------------
# Parsing.  Recursive descent over the grammar
#
#   expr   := term (('+'|'-') term)*
#   term   := factor (('*'|'/') factor)*
#   factor := '-' factor | power
#   power  := atom ('^' factor)?
#   atom   := number | name | name '(' expr (',' expr)* ')' | '(' expr ')'

_TOKEN = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^(),])"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, coords):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.coords = coords

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect_op(self, op: str):
        kind, text, offset = self.peek()
        if kind != "op" or text != op:
            if op == ")":
                raise ParseError("unbalanced parentheses, expected ')'", offset)
            raise ParseError(f"expected '{op}'", offset)
        return self.advance()

    def parse(self) -> Expr:
        e = self.expr()
        kind, text, offset = self.peek()
        if kind != "end":
            if text == ")":
                raise ParseError("unbalanced parentheses, unexpected ')'", offset)
            raise ParseError(f"unexpected trailing input {text!r}", offset)
        return e

    def expr(self) -> Expr:
        e = self.term()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.advance()
                right = self.term()
                e = Add(e, right) if text == "+" else Sub(e, right)
            else:
                return e

    def term(self) -> Expr:
        e = self.factor()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "*/":
                self.advance()
                right = self.factor()
                e = Mul(e, right) if text == "*" else Div(e, right)
            else:
                return e

    def factor(self) -> Expr:
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.advance()
            return Neg(self.factor())
        return self.power()

    def power(self) -> Expr:
        e = self.atom()
        kind, text, _ = self.peek()
        if kind == "op" and text == "^":
            self.advance()
            return Pow(e, self.factor())
        return e

    def atom(self) -> Expr:
        kind, text, offset = self.advance()
        if kind == "num":
            return Const(float(text))
        if kind == "ident":
            next_kind, next_text, _ = self.peek()
            if next_kind == "op" and next_text == "(":
                return self.call(text, offset)
            if text in CONSTANTS:
                return Const(CONSTANTS[text])
            if self.coords is not None and text not in self.coords:
                raise ParseError(f"unknown identifier '{text}'", offset)
            return Coord(text)
        if kind == "op" and text == "(":
            e = self.expr()
            self.expect_op(")")
            return e
        if kind == "end":
            raise ParseError("unexpected end of input", offset)
        return self._unexpected(text, offset)

    def call(self, name: str, name_offset: int) -> Expr:
        if name not in FUNCTIONS:
            raise ParseError(f"unknown identifier '{name}'", name_offset)
        self.expect_op("(")
        args = [self.expr()]
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text == ",":
                self.advance()
                args.append(self.expr())
            else:
                break
        self.expect_op(")")
        if len(args) != 1:
            raise ParseError(
                f"'{name}' takes 1 argument, got {len(args)}", name_offset
            )
        return Call(name, args[0])

    @staticmethod
    def _unexpected(text, offset):
        if text == ")":
            raise ParseError("unbalanced parentheses, unexpected ')'", offset)
        raise ParseError(f"unexpected {text!r}", offset)


def parse_expr(text: str, coords=None) -> Expr:
    """Parse text into an expression tree.

    ``coords``, when given, is the collection of coordinate names allowed to
    appear; any other bare identifier raises ParseError.  ``pi`` and ``e``
    always denote constants, and the nine function names are reserved.
    """
    allowed = None if coords is None else set(coords)
    return _Parser(text, allowed).parse()
