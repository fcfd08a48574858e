"""Symbolic scalar expressions over named chart variables.

A small fixed-grammar kernel: parse text into an immutable tree, evaluate
in IEEE double precision, differentiate symbolically, and apply light
value-preserving normalization.  The grammar is standard infix arithmetic

    expr   := prefix | infix chains of + - * / ^
    prefix := '-' expr            (binds loosest of all operators)
    atom   := number | name | name '(' expr ')' | '(' expr ')'

with precedence  neg < add/sub < mul/div < pow,  pow right-associative,
single-argument calls for sin cos tan sinh cosh tanh exp log sqrt, and
decimal literals with optional fraction and exponent.  Exponents of ^ are
constant-folded and must reduce to a constant; anything else is rejected
at parse time, which keeps differentiation closed over the node set.

Trees are shared freely: every algorithm here treats an expression as a
DAG (memoized on node identity), so derived expressions stay compact even
when construction reuses subtrees heavily.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence, Union

from .errors import DomainError, ParseError

__all__ = [
    "Expr",
    "Constant",
    "Variable",
    "Unary",
    "Binary",
    "UNARY_OPS",
    "BINARY_OPS",
    "parse_expr",
    "evaluate",
    "differentiate",
    "simplify",
    "to_text",
    "compile_expr",
    "free_variables",
    "con",
    "var",
    "add",
    "sub",
    "mul",
    "div",
    "neg",
    "powc",
    "func",
]

UNARY_OPS = ("neg", "sin", "cos", "tan", "sinh", "cosh", "tanh", "exp", "log", "sqrt")
BINARY_OPS = ("add", "sub", "mul", "div", "pow")

# named single-argument functions callable from source text
_FUNCTIONS: dict[str, Callable[[float], float]] = {
    name: getattr(math, name) for name in UNARY_OPS if name != "neg"
}

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Constant:
    value: float

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Variable:
    name: str

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Unary:
    op: str
    child: "Expr"

    def __post_init__(self):
        if self.op not in UNARY_OPS:
            raise ValueError(f"unknown unary op {self.op!r}")

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"

    def __post_init__(self):
        if self.op not in BINARY_OPS:
            raise ValueError(f"unknown binary op {self.op!r}")
        # constant exponents only: keeps pow differentiable with the power rule
        if self.op == "pow" and not isinstance(self.right, Constant):
            raise ValueError("pow exponent must be a Constant node")

    def __str__(self) -> str:
        return to_text(self)


Expr = Union[Constant, Variable, Unary, Binary]


# ---------------------------------------------------------------------------
# constructors with light folding (the same rules simplify() applies)


def con(value: float) -> Constant:
    return Constant(float(value))


def var(name: str) -> Variable:
    return Variable(name)


def _is_const(e: Expr, value: float | None = None) -> bool:
    if not isinstance(e, Constant):
        return False
    return value is None or e.value == value


def add(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Constant) and isinstance(b, Constant):
        folded = a.value + b.value
        if math.isfinite(folded):
            return con(folded)
    if _is_const(a, 0.0):
        return b
    if _is_const(b, 0.0):
        return a
    return Binary("add", a, b)


def sub(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Constant) and isinstance(b, Constant):
        folded = a.value - b.value
        if math.isfinite(folded):
            return con(folded)
    if _is_const(b, 0.0):
        return a
    if _is_const(a, 0.0):
        return neg(b)
    return Binary("sub", a, b)


def mul(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Constant) and isinstance(b, Constant):
        folded = a.value * b.value
        if math.isfinite(folded):
            return con(folded)
    if _is_const(a, 0.0) or _is_const(b, 0.0):
        return con(0.0)
    if _is_const(a, 1.0):
        return b
    if _is_const(b, 1.0):
        return a
    return Binary("mul", a, b)


def div(a: Expr, b: Expr) -> Expr:
    if isinstance(b, Constant) and b.value != 0.0:
        if isinstance(a, Constant):
            folded = a.value / b.value
            if math.isfinite(folded):
                return con(folded)
        if b.value == 1.0:
            return a
    if _is_const(a, 0.0):
        return con(0.0)
    return Binary("div", a, b)


def neg(a: Expr) -> Expr:
    if isinstance(a, Constant):
        return con(-a.value)
    if isinstance(a, Unary) and a.op == "neg":
        return a.child
    return Unary("neg", a)


def powc(a: Expr, exponent: Expr | float) -> Expr:
    e = exponent if isinstance(exponent, Constant) else con(exponent)
    if isinstance(a, Constant):
        try:
            folded = math.pow(a.value, e.value)
        except (ValueError, OverflowError):
            folded = math.nan  # keep the node; the error belongs to evaluation
        if math.isfinite(folded):
            return con(folded)
    if e.value == 1.0:
        return a
    if e.value == 0.0:
        return con(1.0)
    return Binary("pow", a, e)


def func(op: str, a: Expr) -> Expr:
    if op not in _FUNCTIONS:
        raise ValueError(f"unknown function {op!r}")
    if isinstance(a, Constant):
        try:
            folded = _FUNCTIONS[op](a.value)
        except (ValueError, OverflowError):
            folded = math.nan
        if math.isfinite(folded):
            return con(folded)
    return Unary(op, a)


_BINARY_BUILDERS: dict[str, Callable[[Expr, Expr], Expr]] = {
    "add": add,
    "sub": sub,
    "mul": mul,
    "div": div,
    "pow": powc,
}


# ---------------------------------------------------------------------------
# parsing


@dataclass(frozen=True)
class _Token:
    kind: str  # num | name | op | end
    text: str
    pos: int  # character offset


_TOKEN_RE = re.compile(
    r"(?P<num>\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^()])"
)


def _byte_pos(src: str, char_pos: int) -> int:
    return len(src[:char_pos].encode("utf-8"))


def _tokenize(src: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, n = 0, len(src)
    while i < n:
        if src[i].isspace():
            i += 1
            continue
        m = _TOKEN_RE.match(src, i)
        if m is None:
            raise ParseError(_byte_pos(src, i), f"unexpected character {src[i]!r}")
        kind = m.lastgroup or "op"
        tokens.append(_Token(kind, m.group(), i))
        i = m.end()
    tokens.append(_Token("end", "", n))
    return tokens


_PREC = {"+": 2, "-": 2, "*": 3, "/": 3, "^": 4}
_PREC_NEG = 1


class _Parser:
    def __init__(self, src: str, variables: Sequence[str]):
        self.src = src
        self.tokens = _tokenize(src)
        self.i = 0
        self.variables = frozenset(variables)

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, tok: _Token, message: str):
        raise ParseError(_byte_pos(self.src, tok.pos), message)

    def expression(self, min_prec: int) -> Expr:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            lhs: Expr = Unary("neg", self.expression(_PREC_NEG))
        else:
            lhs = self.atom()
        while True:
            tok = self.peek()
            if tok.kind != "op" or tok.text not in _PREC:
                break
            prec = _PREC[tok.text]
            if prec < min_prec:
                break
            self.advance()
            if tok.text == "^":
                rhs = simplify(self.expression(prec))  # right-assoc
                if not isinstance(rhs, Constant):
                    self.fail(tok, "exponent does not reduce to a constant")
                lhs = Binary("pow", lhs, rhs)
            else:
                rhs = self.expression(prec + 1)  # left-assoc
                lhs = Binary(
                    {"+": "add", "-": "sub", "*": "mul", "/": "div"}[tok.text],
                    lhs,
                    rhs,
                )
        return lhs

    def atom(self) -> Expr:
        tok = self.advance()
        if tok.kind == "num":
            return Constant(float(tok.text))
        if tok.kind == "name":
            nxt = self.peek()
            if nxt.kind == "op" and nxt.text == "(":
                if tok.text not in _FUNCTIONS:
                    self.fail(tok, f"unknown function {tok.text!r}")
                self.advance()
                arg = self.expression(0)
                closing = self.advance()
                if closing.text != ")":
                    self.fail(closing, "expected ')'")
                return Unary(tok.text, arg)
            if tok.text not in self.variables:
                self.fail(tok, f"unknown identifier {tok.text!r}")
            return Variable(tok.text)
        if tok.kind == "op" and tok.text == "(":
            inner = self.expression(0)
            closing = self.advance()
            if closing.text != ")":
                self.fail(closing, "expected ')'")
            return inner
        self.fail(tok, "expected a number, a name, or '('")
        raise AssertionError("unreachable")


def parse_expr(src: str, variables: Sequence[str]) -> Expr:
    """Parse source text into an Expr over the declared variables.

    Raises ParseError (with a byte offset) on syntax errors, unknown
    identifiers or functions, and non-constant pow exponents.  The
    declared variable list itself must be nonempty, distinct, valid
    identifiers (ValueError otherwise).
    """
    names = list(variables)
    if not names or len(set(names)) != len(names):
        raise ValueError("variables must be a nonempty list of distinct names")
    for name in names:
        if not _IDENT_RE.match(name):
            raise ValueError(f"invalid variable name {name!r}")
    if not src.strip():
        raise ParseError(0, "empty expression")
    parser = _Parser(src, names)
    tree = parser.expression(0)
    trailing = parser.peek()
    if trailing.kind != "end":
        parser.fail(trailing, f"unexpected {trailing.text!r}")
    return tree


# ---------------------------------------------------------------------------
# evaluation


def evaluate(e: Expr, point: Mapping[str, float]) -> float:
    """Evaluate in double precision at the given variable binding.

    Raises DomainError on log of a non-positive value, sqrt of a negative
    value, division by exact zero, zero to a negative power, or math-range
    overflow.  Deterministic: the same tree and point give bit-identical
    results.
    """
    memo: dict[int, float] = {}

    def go(n: Expr) -> float:
        key = id(n)
        found = memo.get(key)
        if found is not None:
            return found
        if isinstance(n, Constant):
            v = n.value
        elif isinstance(n, Variable):
            v = float(point[n.name])
        elif isinstance(n, Unary):
            x = go(n.child)
            if n.op == "neg":
                v = -x
            else:
                try:
                    v = _FUNCTIONS[n.op](x)
                except ValueError:
                    raise DomainError(f"{n.op}({x!r}) is undefined") from None
                except OverflowError:
                    raise DomainError(f"{n.op}({x!r}) overflows") from None
        else:
            a = go(n.left)
            if n.op == "add":
                v = a + go(n.right)
            elif n.op == "sub":
                v = a - go(n.right)
            elif n.op == "mul":
                v = a * go(n.right)
            elif n.op == "div":
                b = go(n.right)
                if b == 0.0:
                    raise DomainError("division by zero")
                v = a / b
            else:  # pow
                b = go(n.right)
                try:
                    v = math.pow(a, b)
                except ValueError:
                    raise DomainError(f"pow({a!r}, {b!r}) is undefined") from None
                except OverflowError:
                    raise DomainError(f"pow({a!r}, {b!r}) overflows") from None
        memo[key] = v
        return v

    return go(e)


def compile_expr(e: Expr, variables: Sequence[str]) -> Callable[..., float]:
    """Compile to a positional-argument Python function for hot loops.

    The generated code performs the same operations in the same order as
    evaluate(), with shared subtrees computed once.  Errors surface as
    DomainError, like evaluate().
    """
    order = list(variables)
    slot = {name: f"v{k}" for k, name in enumerate(order)}
    lines: list[str] = []
    names: dict[int, str] = {}
    counter = itertools.count()

    def literal(value: float) -> str:
        text = repr(value)
        return f"({text})" if text.startswith("-") else text

    def emit(n: Expr) -> str:
        key = id(n)
        if key in names:
            return names[key]
        if isinstance(n, Constant):
            name = literal(n.value)
        elif isinstance(n, Variable):
            if n.name not in slot:
                raise ValueError(f"expression uses undeclared variable {n.name!r}")
            name = slot[n.name]
        elif isinstance(n, Unary):
            child = emit(n.child)
            name = f"t{next(counter)}"
            if n.op == "neg":
                lines.append(f"    {name} = -{child}")
            else:
                lines.append(f"    {name} = _{n.op}({child})")
        else:
            a = emit(n.left)
            b = emit(n.right)
            name = f"t{next(counter)}"
            if n.op == "pow":
                lines.append(f"    {name} = _pow({a}, {b})")
            else:
                symbol = {"add": "+", "sub": "-", "mul": "*", "div": "/"}[n.op]
                lines.append(f"    {name} = {a} {symbol} {b}")
        names[key] = name
        return name

    result = emit(e)
    params = ", ".join(slot[name] for name in order)
    source = f"def _compiled({params}):\n" + "\n".join(lines) + f"\n    return {result}\n"
    namespace: dict[str, object] = {f"_{op}": fn for op, fn in _FUNCTIONS.items()}
    namespace["_pow"] = math.pow
    exec(source, namespace)  # noqa: S102 - code is generated from our own AST
    raw = namespace["_compiled"]

    def call(*args: float) -> float:
        try:
            return raw(*args)
        except ZeroDivisionError:
            raise DomainError("division by zero") from None
        except ValueError as exc:
            raise DomainError(str(exc)) from None
        except OverflowError as exc:
            raise DomainError(str(exc)) from None

    return call


# ---------------------------------------------------------------------------
# calculus and normalization


def differentiate(e: Expr, name: str) -> Expr:
    """Symbolic partial derivative with respect to the named variable."""
    memo: dict[int, Expr] = {}

    def d(n: Expr) -> Expr:
        key = id(n)
        if key in memo:
            return memo[key]
        if isinstance(n, Constant):
            r: Expr = con(0.0)
        elif isinstance(n, Variable):
            r = con(1.0 if n.name == name else 0.0)
        elif isinstance(n, Unary):
            u, du = n.child, d(n.child)
            if n.op == "neg":
                r = neg(du)
            elif n.op == "sin":
                r = mul(func("cos", u), du)
            elif n.op == "cos":
                r = neg(mul(func("sin", u), du))
            elif n.op == "tan":
                r = div(du, powc(func("cos", u), 2.0))
            elif n.op == "sinh":
                r = mul(func("cosh", u), du)
            elif n.op == "cosh":
                r = mul(func("sinh", u), du)
            elif n.op == "tanh":
                r = div(du, powc(func("cosh", u), 2.0))
            elif n.op == "exp":
                r = mul(func("exp", u), du)
            elif n.op == "log":
                r = div(du, u)
            else:  # sqrt
                r = div(du, mul(con(2.0), func("sqrt", u)))
        else:
            if n.op == "pow":
                k = n.right.value
                r = mul(mul(con(k), powc(n.left, k - 1.0)), d(n.left))
            else:
                dl, dr = d(n.left), d(n.right)
                if n.op == "add":
                    r = add(dl, dr)
                elif n.op == "sub":
                    r = sub(dl, dr)
                elif n.op == "mul":
                    r = add(mul(dl, n.right), mul(n.left, dr))
                else:  # div
                    num = sub(mul(dl, n.right), mul(n.left, dr))
                    r = div(num, powc(n.right, 2.0))
        memo[key] = r
        return r

    return d(e)


def simplify(e: Expr) -> Expr:
    """Light normalization: fold constants, drop additive/multiplicative
    identities (x*0 -> 0, x*1 -> x, x+0 -> x, 0/x -> 0, x^1 -> x).

    Value-preserving on the domain of the input, and idempotent.
    """
    memo: dict[int, Expr] = {}

    def go(n: Expr) -> Expr:
        key = id(n)
        if key in memo:
            return memo[key]
        if isinstance(n, (Constant, Variable)):
            r = n
        elif isinstance(n, Unary):
            child = go(n.child)
            r = neg(child) if n.op == "neg" else func(n.op, child)
        else:
            r = _BINARY_BUILDERS[n.op](go(n.left), go(n.right))
        memo[key] = r
        return r

    return go(e)


def free_variables(e: Expr) -> frozenset[str]:
    """The set of variable names appearing in the expression."""
    seen: set[int] = set()
    out: set[str] = set()
    stack = [e]
    while stack:
        n = stack.pop()
        if id(n) in seen:
            continue
        seen.add(id(n))
        if isinstance(n, Variable):
            out.add(n.name)
        elif isinstance(n, Unary):
            stack.append(n.child)
        elif isinstance(n, Binary):
            stack.append(n.left)
            stack.append(n.right)
    return frozenset(out)


# ---------------------------------------------------------------------------
# printing


_LEVEL_NEG, _LEVEL_ADD, _LEVEL_MUL, _LEVEL_POW, _LEVEL_ATOM = 1, 2, 3, 4, 5


def _format_number(value: float) -> str:
    if value == int(value) and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


def to_text(e: Expr) -> str:
    """Render in the grammar's own syntax; parse_expr(to_text(e)) is
    value-equal to e (parenthesization is conservative)."""

    def render(n: Expr) -> tuple[str, int]:
        if isinstance(n, Constant):
            text = _format_number(n.value)
            return text, (_LEVEL_NEG if text.startswith("-") else _LEVEL_ATOM)
        if isinstance(n, Variable):
            return n.name, _LEVEL_ATOM
        if isinstance(n, Unary):
            if n.op == "neg":
                # unary minus binds loosest, so its operand never needs parens
                return "-" + wrap(n.child, _LEVEL_NEG), _LEVEL_NEG
            return f"{n.op}({wrap(n.child, 0)})", _LEVEL_ATOM
        if n.op in ("add", "sub"):
            symbol = "+" if n.op == "add" else "-"
            return (
                wrap(n.left, _LEVEL_ADD) + symbol + wrap(n.right, _LEVEL_ADD + 1),
                _LEVEL_ADD,
            )
        if n.op in ("mul", "div"):
            symbol = "*" if n.op == "mul" else "/"
            return (
                wrap(n.left, _LEVEL_MUL) + symbol + wrap(n.right, _LEVEL_MUL + 1),
                _LEVEL_MUL,
            )
        return (
            wrap(n.left, _LEVEL_POW + 1) + "^" + wrap(n.right, _LEVEL_POW + 1),
            _LEVEL_POW,
        )

    def wrap(n: Expr, min_level: int) -> str:
        text, level = render(n)
        return f"({text})" if level < min_level else text

    return wrap(e, 0)
