"""
Scalar expressions over t, x1, x2 for coefficient functions in run configs.

Grammar, lowest precedence first:

    expr    := and_expr (("or" | "||") and_expr)*
    and_expr:= cmp (("and" | "&&") cmp)*
    cmp     := sum (("<" | "<=" | ">" | ">=" | "==" | "!=") sum)*
    sum     := product (("+" | "-") product)*
    product := unary (("*" | "/") unary)*
    unary   := ("-" | "+") unary | power
    power   := atom ("^" unary)?
    atom    := NUMBER | "t" | "x1" | "x2" | "pi" | NAME "(" expr ("," expr)* ")"
             | "(" expr ")"

Functions: sin cos exp ln sqrt abs (one argument), min max (two or more).
Comparisons and logical operators yield 1.0 or 0.0, so indicator functions
such as (x1 > 0.25) * (x1 < 0.75) stay single expressions. "^" is right
associative and binds tighter than unary minus: -2^2 == -4.
"""
import math
import re
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ldgdiffusion.exceptions import ExprDomainError, ExprNameError, ExprSyntaxError

VARIABLES = ("t", "x1", "x2")
CONSTANTS = {"pi": math.pi}

_TOKEN_RE = re.compile(
    r"""
    (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
    |(?P<name>[A-Za-z_][A-Za-z_0-9]*)
    |(?P<op>\*\*|<=|>=|==|!=|&&|\|\||[-+*/^()<>,])
    |(?P<space>\s+)
    """,
    re.VERBOSE,
)

_WORD_OPERATORS = {"and": "&&", "or": "||"}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ExprSyntaxError(f"unexpected character '{text[pos]}'", pos)
        kind = match.lastgroup
        value = match.group(kind)
        if kind == "name" and value in _WORD_OPERATORS:
            kind, value = "op", _WORD_OPERATORS[value]
        if kind == "op" and value == "**":
            value = "^"
        if kind != "space":
            tokens.append(Token(kind, value, pos))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Env:
    """Evaluation inputs broadcast to one shape, for domain error reporting."""

    def __init__(self, t, x1, x2):
        t, x1, x2 = np.broadcast_arrays(
            np.asarray(t, dtype=float), np.asarray(x1, dtype=float), np.asarray(x2, dtype=float)
        )
        self.values = {"t": t, "x1": x1, "x2": x2}
        self.shape = x1.shape

    def point(self, mask):
        index = np.unravel_index(int(np.flatnonzero(np.broadcast_to(mask, self.shape))[0]), self.shape)
        return tuple(float(self.values[v][index]) for v in VARIABLES)


class Expr:
    def evaluate(self, env):
        raise NotImplementedError


@dataclass(frozen=True)
class Number(Expr):
    value: float

    def evaluate(self, env):
        return np.full(env.shape, self.value)

    def __str__(self):
        return repr(self.value)


@dataclass(frozen=True)
class Variable(Expr):
    name: str

    def evaluate(self, env):
        if self.name in CONSTANTS:
            return np.full(env.shape, CONSTANTS[self.name])
        return env.values[self.name]

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Unary(Expr):
    op: str
    operand: Expr

    def evaluate(self, env):
        value = self.operand.evaluate(env)
        return -value if self.op == "-" else +value

    def __str__(self):
        return f"({self.op}{self.operand})"


def _truth(value):
    return value != 0


@dataclass(frozen=True)
class Binary(Expr):
    op: str
    left: Expr
    right: Expr

    def evaluate(self, env):
        a = self.left.evaluate(env)
        b = self.right.evaluate(env)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        if self.op == "/":
            if (b == 0).any():
                raise ExprDomainError("division by zero", env.point(b == 0))
            return a / b
        if self.op == "^":
            invalid = ((a < 0) & (b != np.round(b))) | ((a == 0) & (b < 0))
            if invalid.any():
                raise ExprDomainError("invalid power", env.point(invalid))
            return np.power(a, b)
        if self.op == "&&":
            return (_truth(a) & _truth(b)).astype(float)
        if self.op == "||":
            return (_truth(a) | _truth(b)).astype(float)
        comparisons = {
            "<": np.less,
            "<=": np.less_equal,
            ">": np.greater,
            ">=": np.greater_equal,
            "==": np.equal,
            "!=": np.not_equal,
        }
        return comparisons[self.op](a, b).astype(float)

    def __str__(self):
        op = {"&&": "and", "||": "or"}.get(self.op, self.op)
        return f"({self.left} {op} {self.right})"


def _checked_ln(env, x):
    if (x <= 0).any():
        raise ExprDomainError("ln of a non-positive value", env.point(x <= 0))
    return np.log(x)


def _checked_sqrt(env, x):
    if (x < 0).any():
        raise ExprDomainError("sqrt of a negative value", env.point(x < 0))
    return np.sqrt(x)


FUNCTIONS = {
    "sin": (1, lambda env, x: np.sin(x)),
    "cos": (1, lambda env, x: np.cos(x)),
    "exp": (1, lambda env, x: np.exp(x)),
    "ln": (1, _checked_ln),
    "sqrt": (1, _checked_sqrt),
    "abs": (1, lambda env, x: np.abs(x)),
    "min": (None, lambda env, *xs: np.minimum.reduce(xs)),
    "max": (None, lambda env, *xs: np.maximum.reduce(xs)),
}


@dataclass(frozen=True)
class Call(Expr):
    name: str
    args: Tuple[Expr, ...]

    def evaluate(self, env):
        _, func = FUNCTIONS[self.name]
        return func(env, *(arg.evaluate(env) for arg in self.args))

    def __str__(self):
        return f"{self.name}({', '.join(str(a) for a in self.args)})"


class _Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def current(self):
        return self.tokens[self.pos]

    def accept(self, *ops):
        token = self.current
        if token.kind == "op" and token.text in ops:
            self.pos += 1
            return token
        return None

    def expect(self, op):
        if self.accept(op) is None:
            token = self.current
            found = "end of input" if token.kind == "end" else f"'{token.text}'"
            raise ExprSyntaxError(f"expected '{op}' but found {found}", token.offset)

    def parse(self):
        expr = self.or_expr()
        if self.current.kind != "end":
            raise ExprSyntaxError(f"unexpected '{self.current.text}'", self.current.offset)
        return expr

    def _left_assoc(self, operand, ops):
        expr = operand()
        while True:
            token = self.accept(*ops)
            if token is None:
                return expr
            expr = Binary(token.text, expr, operand())

    def or_expr(self):
        return self._left_assoc(self.and_expr, ("||",))

    def and_expr(self):
        return self._left_assoc(self.comparison, ("&&",))

    def comparison(self):
        return self._left_assoc(self.sum, ("<", "<=", ">", ">=", "==", "!="))

    def sum(self):
        return self._left_assoc(self.product, ("+", "-"))

    def product(self):
        return self._left_assoc(self.unary, ("*", "/"))

    def unary(self):
        token = self.accept("-", "+")
        if token is not None:
            return Unary(token.text, self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.accept("^") is not None:
            return Binary("^", base, self.unary())
        return base

    def atom(self):
        token = self.current
        if token.kind == "number":
            self.pos += 1
            return Number(float(token.text))
        if token.kind == "name":
            self.pos += 1
            if self.accept("(") is not None:
                return self.call(token)
            if token.text in VARIABLES or token.text in CONSTANTS:
                return Variable(token.text)
            raise ExprNameError(token.text, token.offset)
        if self.accept("(") is not None:
            expr = self.or_expr()
            self.expect(")")
            return expr
        found = "end of input" if token.kind == "end" else f"'{token.text}'"
        raise ExprSyntaxError(f"unexpected {found}", token.offset)

    def call(self, name_token):
        if name_token.text not in FUNCTIONS:
            raise ExprNameError(name_token.text, name_token.offset)
        args = [self.or_expr()]
        while self.accept(",") is not None:
            args.append(self.or_expr())
        self.expect(")")
        arity, _ = FUNCTIONS[name_token.text]
        if arity is not None and len(args) != arity:
            raise ExprSyntaxError(
                f"{name_token.text} takes {arity} argument, got {len(args)}", name_token.offset
            )
        if arity is None and len(args) < 2:
            raise ExprSyntaxError(
                f"{name_token.text} takes at least 2 arguments", name_token.offset
            )
        return Call(name_token.text, tuple(args))


def parse(text):
    """
    Parses an expression.
    :param text: expression source
    :return: Expr
    """
    if not isinstance(text, str):
        raise ExprSyntaxError("expression must be a string", 0)
    return _Parser(text).parse()


def evaluate_arrays(expr, t, x1, x2):
    """Vectorized evaluation; result has the broadcast shape of the inputs."""
    env = _Env(t, x1, x2)
    with np.errstate(all="ignore"):
        result = expr.evaluate(env)
    return np.array(np.broadcast_to(result, env.shape), dtype=float)


def evaluate(expr, t, points):
    """
    Evaluates at a list of (x1, x2) points.
    :return: list of floats
    """
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    return evaluate_arrays(expr, t, points[:, 0], points[:, 1]).tolist()


class ExprFunction:
    """Adapter turning an Expr into a callable f(t, x1, x2)."""

    def __init__(self, source):
        self.source = source
        self.expr = parse(source)

    def __call__(self, t, x1, x2):
        return evaluate_arrays(self.expr, t, x1, x2)

    def at_time(self, t):
        return lambda x1, x2: self(t, x1, x2)

    def __repr__(self):
        return f"ExprFunction({self.source!r})"

    def __str__(self):
        return self.source
