"""Small deterministic arithmetic expression language.

Metric and constraint formulas in problem files are written in this
language and evaluated against variable bindings.

Grammar (standard precedence: ^ binds tightest, then unary minus,
then * and /, then + and -; ^ is right-associative):

    expr    :=  term (('+' | '-') term)*
    term    :=  unary (('*' | '/') unary)*
    unary   :=  '-' unary | power
    power   :=  atom ('^' unary)?
    atom    :=  NUMBER | NAME | NAME '(' expr (',' expr)* ')' | '(' expr ')'

Functions: min, max (two or more arguments), abs, tanh, exp, log
(natural), sqrt (one argument each).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Union


class ExpressionError(Exception):
    """Base class for parse and evaluation errors; carries a machine code."""

    code = "EXPRESSION_ERROR"


class ExpressionSyntaxError(ExpressionError):
    code = "SYNTAX_ERROR"

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.position = position


class UnknownFunctionError(ExpressionError):
    code = "UNKNOWN_FUNCTION"

    def __init__(self, name: str, position: int):
        super().__init__(f"unknown function '{name}' (position {position})")
        self.name = name
        self.position = position


class EvaluationError(ExpressionError):
    code = "EVALUATION_ERROR"


class UnboundVariableError(EvaluationError):
    code = "UNBOUND_VARIABLE"

    def __init__(self, name: str):
        super().__init__(f"variable '{name}' is not bound")
        self.name = name


class DivisionByZeroError(EvaluationError):
    code = "DIVISION_BY_ZERO"


class LogDomainError(EvaluationError):
    code = "LOG_DOMAIN"


class SqrtDomainError(EvaluationError):
    code = "SQRT_DOMAIN"


@dataclass(frozen=True)
class Lit:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    fn: str
    args: tuple["Node", ...]


Node = Union[Lit, Var, Neg, BinOp, Call]

# fn name -> (min arity, max arity); None means unbounded
FUNCTIONS: dict[str, tuple[int, int | None]] = {
    "min": (2, None),
    "max": (2, None),
    "abs": (1, 1),
    "tanh": (1, 1),
    "exp": (1, 1),
    "log": (1, 1),
    "sqrt": (1, 1),
}


class Expression:
    """A parsed formula. Equality and hashing are structural (tree-based),
    so surface spelling differences like ``x+1`` vs ``x + 1`` compare equal."""

    __slots__ = ("source", "root")

    def __init__(self, source: str, root: Node):
        self.source = source
        self.root = root

    def __eq__(self, other) -> bool:
        if not isinstance(other, Expression):
            return NotImplemented
        return self.root == other.root

    def __hash__(self) -> int:
        return hash(self.root)

    def __repr__(self) -> str:
        return f"Expression({self.source!r})"

    def variables(self) -> set[str]:
        return free_variables(self.root)


def free_variables(node: Node) -> set[str]:
    if isinstance(node, Lit):
        return set()
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, Neg):
        return free_variables(node.operand)
    if isinstance(node, BinOp):
        return free_variables(node.left) | free_variables(node.right)
    return set().union(*(free_variables(a) for a in node.args))


# --- tokenizer -------------------------------------------------------------

_PUNCT = {"+", "-", "*", "/", "^", "(", ")", ","}


def _tokenize(source: str) -> list[tuple[str, str, int]]:
    """Returns (kind, text, position) triples; kind in {num, name, punct}."""
    tokens = []
    i, n = 0, len(source)
    while i < n:
        ch = source[i]
        if ch in " \t\r\n":
            i += 1
            continue
        if ch in _PUNCT:
            tokens.append(("punct", ch, i))
            i += 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and source[i + 1].isdigit()):
            start = i
            while i < n and source[i].isdigit():
                i += 1
            if i < n and source[i] == ".":
                i += 1
                while i < n and source[i].isdigit():
                    i += 1
            if i < n and source[i] in "eE":
                j = i + 1
                if j < n and source[j] in "+-":
                    j += 1
                if j < n and source[j].isdigit():
                    i = j
                    while i < n and source[i].isdigit():
                        i += 1
            tokens.append(("num", source[start:i], start))
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < n and (source[i].isalnum() or source[i] == "_"):
                i += 1
            tokens.append(("name", source[start:i], start))
            continue
        raise ExpressionSyntaxError(f"unexpected character {ch!r}", i)
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = _tokenize(source)
        self.pos = 0

    def _peek(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return ("eof", "", len(self.source))

    def _next(self):
        tok = self._peek()
        self.pos += 1
        return tok

    def parse(self) -> Node:
        node = self._expr()
        kind, text, at = self._peek()
        if kind != "eof":
            raise ExpressionSyntaxError(f"unexpected {text!r}", at)
        return node

    def _expr(self) -> Node:
        node = self._term()
        while True:
            kind, text, _ = self._peek()
            if kind == "punct" and text in ("+", "-"):
                self._next()
                node = BinOp(text, node, self._term())
            else:
                return node

    def _term(self) -> Node:
        node = self._unary()
        while True:
            kind, text, _ = self._peek()
            if kind == "punct" and text in ("*", "/"):
                self._next()
                node = BinOp(text, node, self._unary())
            else:
                return node

    def _unary(self) -> Node:
        kind, text, _ = self._peek()
        if kind == "punct" and text == "-":
            self._next()
            return Neg(self._unary())
        return self._power()

    def _power(self) -> Node:
        base = self._atom()
        kind, text, _ = self._peek()
        if kind == "punct" and text == "^":
            self._next()
            # exponent may carry its own unary minus: x^-2
            return BinOp("^", base, self._unary())
        return base

    def _atom(self) -> Node:
        kind, text, at = self._next()
        if kind == "num":
            return Lit(float(text))
        if kind == "name":
            nkind, ntext, _ = self._peek()
            if nkind == "punct" and ntext == "(":
                return self._call(text, at)
            return Var(text)
        if kind == "punct" and text == "(":
            node = self._expr()
            ckind, ctext, cat = self._next()
            if not (ckind == "punct" and ctext == ")"):
                raise ExpressionSyntaxError("expected ')'", cat)
            return node
        raise ExpressionSyntaxError(
            "expected a number, name or '('" if kind == "eof" else f"unexpected {text!r}",
            at,
        )

    def _call(self, fn: str, at: int) -> Node:
        if fn not in FUNCTIONS:
            raise UnknownFunctionError(fn, at)
        self._next()  # consume '('
        args = [self._expr()]
        while True:
            kind, text, pos = self._next()
            if kind == "punct" and text == ")":
                break
            if kind == "punct" and text == ",":
                args.append(self._expr())
                continue
            raise ExpressionSyntaxError("expected ',' or ')'", pos)
        lo, hi = FUNCTIONS[fn]
        if len(args) < lo or (hi is not None and len(args) > hi):
            raise ExpressionSyntaxError(
                f"{fn} takes {'at least ' + str(lo) if hi is None else str(lo)} argument(s), got {len(args)}",
                at,
            )
        return Call(fn, tuple(args))


def parse(source: str) -> Expression:
    """Parse source text into an Expression.

    Raises ExpressionSyntaxError (with character position) or
    UnknownFunctionError on bad input.
    """
    return Expression(source, _Parser(source).parse())


# --- printing --------------------------------------------------------------

# operator precedence used for minimal parenthesisation
_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4, "atom": 5}


def _fmt_number(v: float) -> str:
    if v != v or v in (math.inf, -math.inf):
        raise ValueError("non-finite literals have no source form")
    if v.is_integer() and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def _print(node: Node) -> tuple[str, int]:
    if isinstance(node, Lit):
        if node.value < 0 or (node.value == 0 and math.copysign(1.0, node.value) < 0):
            return "-" + _fmt_number(-node.value), _PREC["neg"]
        return _fmt_number(node.value), _PREC["atom"]
    if isinstance(node, Var):
        return node.name, _PREC["atom"]
    if isinstance(node, Call):
        args = ", ".join(_print(a)[0] for a in node.args)
        return f"{node.fn}({args})", _PREC["atom"]
    if isinstance(node, Neg):
        text, prec = _print(node.operand)
        if prec < _PREC["neg"]:
            text = f"({text})"
        return "-" + text, _PREC["neg"]
    lt, lp = _print(node.left)
    rt, rp = _print(node.right)
    p = _PREC[node.op]
    if node.op == "^":
        # right-associative; the base must be a bare atom
        if lp < _PREC["atom"]:
            lt = f"({lt})"
        if rp < p:
            rt = f"({rt})"
        return f"{lt}^{rt}", p
    # + - * / are left-associative; a same-precedence right child must keep
    # its parens or the reparse would rebuild it left-nested, which is a
    # different tree and, under floating point, a different value
    if lp < p:
        lt = f"({lt})"
    if rp <= p:
        rt = f"({rt})"
    return f"{lt} {node.op} {rt}", p


def to_source(node: Node | Expression) -> str:
    """Render a tree back to source text; parse(to_source(t)) == t."""
    if isinstance(node, Expression):
        node = node.root
    return _print(node)[0]


# --- evaluation ------------------------------------------------------------


def _pow(a: float, b: float) -> float:
    try:
        return math.pow(a, b)
    except OverflowError:
        if a > 0 or (b == int(b) and int(b) % 2 == 0):
            return math.inf
        return -math.inf
    except ValueError:
        if a == 0:
            return math.inf  # 0 raised to a negative power
        return math.nan  # negative base, fractional exponent


def evaluate(expr: Expression | Node, bindings: Mapping[str, float] | None = None) -> float:
    """Evaluate an expression under the given variable bindings.

    Deterministic and side-effect free. Non-finite intermediate results
    (overflow to infinity, nan from invalid powers) are passed through;
    the four hard error cases raise distinct EvaluationError subclasses.
    """
    node = expr.root if isinstance(expr, Expression) else expr
    env = bindings or {}
    return _eval(node, env)


def _eval(node: Node, env: Mapping[str, float]) -> float:
    if isinstance(node, Lit):
        return node.value
    if isinstance(node, Var):
        try:
            return float(env[node.name])
        except KeyError:
            raise UnboundVariableError(node.name) from None
    if isinstance(node, Neg):
        return -_eval(node.operand, env)
    if isinstance(node, BinOp):
        a = _eval(node.left, env)
        b = _eval(node.right, env)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if node.op == "/":
            if b == 0.0:
                raise DivisionByZeroError(f"division by zero in {to_source(node)!r}")
            return a / b
        return _pow(a, b)
    args = [_eval(a, env) for a in node.args]
    if node.fn == "min":
        return min(args)
    if node.fn == "max":
        return max(args)
    if node.fn == "abs":
        return abs(args[0])
    if node.fn == "tanh":
        return math.tanh(args[0])
    if node.fn == "exp":
        try:
            return math.exp(args[0])
        except OverflowError:
            return math.inf
    if node.fn == "log":
        if args[0] <= 0.0:
            raise LogDomainError(f"log of non-positive value {args[0]!r}")
        return math.log(args[0])
    # sqrt
    if args[0] < 0.0:
        raise SqrtDomainError(f"sqrt of negative value {args[0]!r}")
    return math.sqrt(args[0])
