"""Arithmetic expression trees for time-dependent force laws.

Grammar (loosest binding first): ``+``/``-``, then ``*``/``/``, then unary
``-``, then right-associative ``^``, then atoms (decimal literals, the single
free variable ``t``, ``sin``/``cos``/``exp``/``sqrt`` calls, parentheses).
Exponentiation binds tighter than unary minus, so ``-t^2`` means ``-(t^2)``
as in ordinary mathematical notation.

Trees are immutable; evaluation is a pure function of (tree, t).
"""

import math
import re
from dataclasses import dataclass
from typing import Union

from .errors import (
    EvalDomainError,
    ExpressionSyntaxError,
    UnknownIdentifierError,
)

__all__ = [
    "Num",
    "Var",
    "Neg",
    "Call",
    "BinOp",
    "Node",
    "FUNCTIONS",
    "parse",
    "evaluate",
    "render",
]

FUNCTIONS = {"sin": math.sin, "cos": math.cos, "exp": math.exp, "sqrt": math.sqrt}


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    """The time variable ``t``."""


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: "Node"
    right: "Node"


Node = Union[Num, Var, Neg, Call, BinOp]

_NUMBER_RE = re.compile(r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_OP_CHARS = "+-*/^()"


@dataclass(frozen=True)
class _Token:
    kind: str  # "number" | "name" | "op" | "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        m = _NUMBER_RE.match(text, pos)
        if m:
            tokens.append(_Token("number", m.group(), pos))
            pos = m.end()
            continue
        m = _NAME_RE.match(text, pos)
        if m:
            tokens.append(_Token("name", m.group(), pos))
            pos = m.end()
            continue
        if ch in _OP_CHARS:
            tokens.append(_Token("op", ch, pos))
            pos += 1
            continue
        raise ExpressionSyntaxError(f"unexpected character {ch!r}", pos)
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    """Recursive descent over the token list; one token of lookahead."""

    def __init__(self, tokens: list[_Token]):
        self._tokens = tokens
        self._i = 0

    @property
    def current(self) -> _Token:
        return self._tokens[self._i]

    def _advance(self) -> _Token:
        tok = self.current
        self._i += 1
        return tok

    def _match_op(self, *ops: str):
        tok = self.current
        if tok.kind == "op" and tok.text in ops:
            return self._advance()
        return None

    def _expect_op(self, op: str, message: str) -> None:
        if not self._match_op(op):
            tok = self.current
            raise ExpressionSyntaxError(message, tok.pos)

    def expression(self) -> Node:
        node = self._term()
        while True:
            tok = self._match_op("+", "-")
            if tok is None:
                return node
            node = BinOp(tok.text, node, self._term())

    def _term(self) -> Node:
        node = self._factor()
        while True:
            tok = self._match_op("*", "/")
            if tok is None:
                return node
            node = BinOp(tok.text, node, self._factor())

    def _factor(self) -> Node:
        if self._match_op("-"):
            return Neg(self._factor())
        return self._power()

    def _power(self) -> Node:
        base = self._atom()
        # right-associative: the exponent re-enters _factor, so 2^3^2 == 2^(3^2)
        # and a leading minus is legal on the exponent (2^-3).
        if self._match_op("^"):
            return BinOp("^", base, self._factor())
        return base

    def _atom(self) -> Node:
        tok = self.current
        if tok.kind == "number":
            self._advance()
            return Num(float(tok.text))
        if tok.kind == "name":
            self._advance()
            if tok.text == "t":
                return Var()
            if tok.text in FUNCTIONS:
                self._expect_op("(", f"expected '(' after function {tok.text!r}")
                arg = self.expression()
                self._expect_op(")", "expected ')'")
                return Call(tok.text, arg)
            raise UnknownIdentifierError(tok.text, tok.pos)
        if tok.kind == "op" and tok.text == "(":
            self._advance()
            node = self.expression()
            self._expect_op(")", "expected ')'")
            return node
        if tok.kind == "end":
            raise ExpressionSyntaxError("unexpected end of input", tok.pos)
        raise ExpressionSyntaxError(f"unexpected token {tok.text!r}", tok.pos)


def parse(text: str) -> Node:
    """Parse infix text into an expression tree.

    Raises ExpressionSyntaxError (with a 0-based position) on malformed input
    and UnknownIdentifierError for identifiers other than ``t`` and the known
    function names.
    """
    parser = _Parser(_tokenize(text))
    node = parser.expression()
    tok = parser.current
    if tok.kind != "end":
        raise ExpressionSyntaxError(f"unexpected trailing input {tok.text!r}", tok.pos)
    return node


def evaluate(node: Node, t: float) -> float:
    """Evaluate the tree at time ``t``; raises EvalDomainError if the result
    is not a finite real."""
    try:
        # plain floats raise on 0-division where numpy scalars only warn
        value = _eval(node, float(t))
    except ZeroDivisionError as exc:
        raise EvalDomainError("division by zero") from exc
    except (ValueError, OverflowError) as exc:
        raise EvalDomainError(str(exc)) from exc
    if not math.isfinite(value):
        raise EvalDomainError(f"non-finite result {value!r}")
    return value


def _eval(node: Node, t: float) -> float:
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return t
    if isinstance(node, Neg):
        return -_eval(node.operand, t)
    if isinstance(node, Call):
        return FUNCTIONS[node.func](_eval(node.arg, t))
    if isinstance(node, BinOp):
        a = _eval(node.left, t)
        b = _eval(node.right, t)
        op = node.op
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        if op == "*":
            return a * b
        if op == "/":
            return a / b
        return math.pow(a, b)  # "^"; math.pow rejects negative base ** fractional
    raise TypeError(f"not an expression node: {node!r}")


_PREC_ADD, _PREC_MUL, _PREC_NEG, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5
_BINOP_PREC = {"+": _PREC_ADD, "-": _PREC_ADD, "*": _PREC_MUL, "/": _PREC_MUL, "^": _PREC_POW}


def _prec(node: Node) -> int:
    if isinstance(node, BinOp):
        return _BINOP_PREC[node.op]
    if isinstance(node, Neg):
        return _PREC_NEG
    if isinstance(node, Num) and node.value < 0:
        return _PREC_NEG  # renders with a leading '-', binds like unary minus
    return _PREC_ATOM


def _wrap(node: Node, min_prec: int) -> str:
    text = render(node)
    if _prec(node) < min_prec:
        return f"({text})"
    return text


def render(node: Node) -> str:
    """Format a tree as parseable text; ``parse(render(n))`` rebuilds ``n``
    (up to negative literals, which re-parse as negated positives)."""
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, Var):
        return "t"
    if isinstance(node, Call):
        return f"{node.func}({render(node.arg)})"
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand, _PREC_NEG)
    if isinstance(node, BinOp):
        if node.op == "^":
            # the grammar only admits atoms as bases
            left = _wrap(node.left, _PREC_POW + 1)
            right = _wrap(node.right, _PREC_POW)
            return f"{left}^{right}"
        prec = _BINOP_PREC[node.op]
        left = _wrap(node.left, prec)
        right = _wrap(node.right, prec + 1)  # strict: preserves grouping of a-(b-c)
        return f"{left}{node.op}{right}"
    raise TypeError(f"not an expression node: {node!r}")
