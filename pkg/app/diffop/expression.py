"""Coefficient expressions p_k(x, lambda).

Grammar: numbers, the identifiers ``x`` and ``lambda``, the operators ``+ - * / ^`` with
``^`` right-associative and binding tighter than unary minus, parentheses, and the
functions ``sin cos exp sqrt abs``. Parsing is a Pratt parser over binding powers;
evaluation is vectorized over numpy arrays. Every error carries a byte offset into the
source text.
"""

import math
import re
from dataclasses import dataclass, field
from typing import Any, Callable, NamedTuple, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from app.exceptions import ExpressionEvaluationError, ExpressionSyntaxError, UnknownIdentifierError

VARIABLES = ("x", "lambda")

FUNCTIONS: dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "sin": np.sin,
    "cos": np.cos,
    "exp": np.exp,
    "sqrt": np.sqrt,
    "abs": np.abs,
}

# Binding powers
_ADDITIVE = 10
_MULTIPLICATIVE = 20
_UNARY = 30
_POWER = 40

_INFIX_POWER = {
    "+": _ADDITIVE,
    "-": _ADDITIVE,
    "*": _MULTIPLICATIVE,
    "/": _MULTIPLICATIVE,
    "^": _POWER,
}


@dataclass(frozen=True)
class Number:
    value: float
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Variable:
    name: str
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "Node"
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Node"
    right: "Node"
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Call:
    function: str
    argument: "Node"
    offset: int = field(default=0, compare=False)


Node = Union[Number, Variable, Unary, Binary, Call]


class _Token(NamedTuple):
    kind: str  # number, name, op, end
    text: str
    offset: int


_TOKEN_PATTERN = re.compile(
    r"\s*(?:(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),]))"
)


def _tokenize(source: str) -> list[_Token]:
    byte_offsets = np.cumsum([0] + [len(ch.encode("utf-8")) for ch in source])
    tokens: list[_Token] = []
    position = 0
    while position < len(source):
        match = _TOKEN_PATTERN.match(source, position)
        if match is None or match.end() == position:
            if source[position:].strip() == "":
                break
            stripped = position + len(source[position:]) - len(source[position:].lstrip())
            raise ExpressionSyntaxError(
                f"Unexpected character {source[stripped]!r}", int(byte_offsets[stripped])
            )
        kind = match.lastgroup
        if kind is None:
            break
        start = match.start(kind)
        tokens.append(_Token(kind, match.group(kind), int(byte_offsets[start])))
        position = match.end()
    tokens.append(_Token("end", "", int(byte_offsets[len(source)])))
    return tokens


class _Parser:
    def __init__(self, source: str) -> None:
        self.tokens = _tokenize(source)
        self.index = 0

    def peek(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        token = self.tokens[self.index]
        if token.kind != "end":
            self.index += 1
        return token

    def expect(self, text: str) -> _Token:
        token = self.advance()
        if token.kind != "op" or token.text != text:
            found = "end of input" if token.kind == "end" else repr(token.text)
            raise ExpressionSyntaxError(f"Expected {text!r}, found {found}", token.offset)
        return token

    def parse(self) -> Node:
        node = self.expression(0)
        token = self.peek()
        if token.kind != "end":
            raise ExpressionSyntaxError(f"Unexpected {token.text!r}", token.offset)
        return node

    def expression(self, rbp: int) -> Node:
        left = self.prefix(self.advance())
        while rbp < self.infix_power(self.peek()):
            left = self.infix(self.advance(), left)
        return left

    @staticmethod
    def infix_power(token: _Token) -> int:
        if token.kind != "op":
            return 0
        return _INFIX_POWER.get(token.text, 0)

    def prefix(self, token: _Token) -> Node:
        if token.kind == "number":
            value = float(token.text)
            if not math.isfinite(value):
                raise ExpressionSyntaxError("Number out of range", token.offset)
            return Number(value, token.offset)
        if token.kind == "name":
            if token.text in FUNCTIONS:
                self.expect("(")
                argument = self.expression(0)
                self.expect(")")
                return Call(token.text, argument, token.offset)
            if token.text in VARIABLES:
                return Variable(token.text, token.offset)
            raise UnknownIdentifierError(token.text, token.offset)
        if token.kind == "op" and token.text in ("-", "+"):
            return Unary(token.text, self.expression(_UNARY), token.offset)
        if token.kind == "op" and token.text == "(":
            node = self.expression(0)
            self.expect(")")
            return node
        found = "end of input" if token.kind == "end" else repr(token.text)
        raise ExpressionSyntaxError(f"Unexpected {found}", token.offset)

    def infix(self, token: _Token, left: Node) -> Node:
        power = _INFIX_POWER[token.text]
        if token.text == "^":
            return Binary("^", left, self.expression(power - 1), token.offset)
        return Binary(token.text, left, self.expression(power), token.offset)


def parse_tree(source: str) -> Node:
    """Parse source text into an expression tree.

    Raises:
        ExpressionSyntaxError: Malformed text, with the byte offset of the offending token.
        UnknownIdentifierError: Identifier outside ``x``, ``lambda`` and the function names.
    """
    try:
        return _Parser(source).parse()
    except RecursionError:
        raise ExpressionSyntaxError("Expression nested too deeply", 0) from None


def format_tree(node: Node) -> str:
    """Fully parenthesized text that parses back to the same tree."""
    if isinstance(node, Number):
        return repr(node.value)
    if isinstance(node, Variable):
        return node.name
    if isinstance(node, Unary):
        return f"({node.op}{format_tree(node.operand)})"
    if isinstance(node, Binary):
        return f"({format_tree(node.left)} {node.op} {format_tree(node.right)})"
    return f"{node.function}({format_tree(node.argument)})"


def _finite(values: np.ndarray, offset: int) -> np.ndarray:
    if not np.all(np.isfinite(values)):
        raise ExpressionEvaluationError("non-finite", offset)
    return values


def evaluate_tree(node: Node, x: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """Evaluate a tree elementwise on broadcast arrays x and lambda.

    Raises:
        ExpressionEvaluationError: ``divide-by-zero``, ``sqrt-of-negative`` or ``non-finite``,
            located at the operator or function that failed.
    """
    if isinstance(node, Number):
        return np.asarray(node.value, dtype=float)
    if isinstance(node, Variable):
        return x if node.name == "x" else lam
    with np.errstate(all="ignore"):
        if isinstance(node, Unary):
            operand = evaluate_tree(node.operand, x, lam)
            return -operand if node.op == "-" else operand
        if isinstance(node, Call):
            argument = evaluate_tree(node.argument, x, lam)
            if node.function == "sqrt" and np.any(argument < 0):
                raise ExpressionEvaluationError("sqrt-of-negative", node.offset)
            return _finite(FUNCTIONS[node.function](argument), node.offset)
        left = evaluate_tree(node.left, x, lam)
        right = evaluate_tree(node.right, x, lam)
        if node.op == "+":
            result = left + right
        elif node.op == "-":
            result = left - right
        elif node.op == "*":
            result = left * right
        elif node.op == "/":
            if np.any(right == 0):
                raise ExpressionEvaluationError("divide-by-zero", node.offset)
            result = left / right
        else:
            result = np.power(left, right)
        return _finite(result, node.offset)


def _uses(node: Node, name: str) -> bool:
    if isinstance(node, Variable):
        return node.name == name
    if isinstance(node, Number):
        return False
    if isinstance(node, Unary):
        return _uses(node.operand, name)
    if isinstance(node, Call):
        return _uses(node.argument, name)
    return _uses(node.left, name) or _uses(node.right, name)


class CoefficientExpression(BaseModel):
    """Parsed coefficient expression with its source text."""

    model_config = ConfigDict(frozen=True)

    source: str = Field(..., description="Expression text as written")
    tree: Any = Field(
        ..., description="Parsed tree of Number, Variable, Unary, Binary and Call nodes"
    )

    def evaluate(self, x: Union[float, np.ndarray], lam: Union[float, np.ndarray]) -> np.ndarray:
        """Values on the broadcast of x and lambda."""
        x = np.asarray(x, dtype=float)
        lam = np.asarray(lam, dtype=float)
        values = evaluate_tree(self.tree, x, lam)
        return np.broadcast_to(values, np.broadcast_shapes(x.shape, lam.shape)).astype(float)

    def at(self, lam: float) -> Callable[[np.ndarray], np.ndarray]:
        """The function x -> p(x, lambda) at fixed lambda."""
        return lambda x: self.evaluate(x, lam)

    def format(self) -> str:
        return format_tree(self.tree)

    def depends_on(self, name: str) -> bool:
        """Whether the identifier occurs in the expression."""
        return _uses(self.tree, name)

    @property
    def is_zero(self) -> bool:
        """Literal zero, possibly signed or parenthesized."""
        node = self.tree
        while isinstance(node, Unary):
            node = node.operand
        return isinstance(node, Number) and node.value == 0.0


def parse_expression(source: Union[str, float, int]) -> CoefficientExpression:
    """Parse a coefficient expression; numbers are accepted as their text form."""
    text = source if isinstance(source, str) else repr(float(source))
    return CoefficientExpression(source=text, tree=parse_tree(text))


def as_expression(
    value: Union[str, float, int, CoefficientExpression, None],
) -> Optional[CoefficientExpression]:
    """Coerce configuration input to an expression; None stays None."""
    if value is None or isinstance(value, CoefficientExpression):
        return value
    return parse_expression(value)
