"""Complex-valued field expressions on R^4.

Grammar (whitespace insignificant)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := atom ('^' int)?
    atom   := number | 'i' | 'x0' | 'x1' | 'x2' | 'x3'
            | func '(' expr ')' | '(' expr ')'
    func   := 'sin' | 'cos' | 'exp' | 'sinh' | 'cosh'

There is no unary minus; the printer writes negative constants as
``(0-c)`` so its output always re-parses.  Pullbacks by group elements are
stored lazily as :class:`Pullback` nodes and printed by inlining the affine
point map, which keeps printed text inside the grammar.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from .lorentz import InhomogeneousElement, apply_inverse, compose

FUNCS = {
    "sin": np.sin,
    "cos": np.cos,
    "exp": np.exp,
    "sinh": np.sinh,
    "cosh": np.cosh,
}
VARS = ("x0", "x1", "x2", "x3")


class FieldSyntaxError(ValueError):
    def __init__(self, message: str, position: int, source: str = ""):
        self.position = position
        self.source = source
        super().__init__(f"{message} at position {position}")


class FieldEvalError(ArithmeticError):
    pass


@dataclass(frozen=True)
class Const:
    value: complex


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "FieldExpr"
    right: "FieldExpr"


@dataclass(frozen=True)
class Pow:
    base: "FieldExpr"
    exponent: int


@dataclass(frozen=True)
class Call:
    func: str
    arg: "FieldExpr"


@dataclass(frozen=True, eq=False)
class Pullback:
    """``expr`` composed with ``x -> Y(L)^-1 (x - a)`` for ``g = {a, L}``."""

    expr: "FieldExpr"
    g: InhomogeneousElement


FieldExpr = Union[Const, Var, BinOp, Pow, Call, Pullback]

ZERO = Const(0j)
ONE = Const(1 + 0j)


# -- lexer / parser ---------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))"
)


def _tokenize(src: str):
    tokens = []
    pos = 0
    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos >= len(src):
            break
        m = _TOKEN.match(src, pos)
        if m is None or m.end() == pos:
            raise FieldSyntaxError(f"unexpected character {src[pos]!r}", pos, src)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


MAX_DEPTH = 200


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = _tokenize(src)
        self.i = 0
        self.depth = 0

    def nested(self, tok):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise self.error(f"nesting deeper than {MAX_DEPTH}", tok)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return FieldSyntaxError(msg, tok[2], self.src)

    def expect(self, text):
        tok = self.take()
        if tok[1] != text or tok[0] != "op":
            raise self.error(f"expected {text!r}, found {tok[1] or 'end of input'!r}", tok)

    def parse(self):
        node = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            node = BinOp(op, node, self.factor())
        return node

    def factor(self):
        node = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num" or not tok[1].isdigit():
                raise self.error("exponent must be a non-negative integer", tok)
            node = Pow(node, int(tok[1]))
        return node

    def atom(self):
        tok = self.take()
        kind, text, pos = tok
        if kind == "num":
            return Const(complex(float(text)))
        if kind == "name":
            if text == "i":
                return Const(1j)
            if text in VARS:
                return Var(int(text[1]))
            if text in FUNCS:
                self.expect("(")
                self.nested(tok)
                arg = self.expr()
                self.expect(")")
                self.depth -= 1
                return Call(text, arg)
            raise FieldSyntaxError(f"unknown identifier {text!r}", pos, self.src)
        if kind == "op" and text == "(":
            self.nested(tok)
            node = self.expr()
            self.expect(")")
            self.depth -= 1
            return node
        raise self.error(f"unexpected {text or 'end of input'!r}", tok)


def parse_field(src: str) -> FieldExpr:
    if not isinstance(src, str) or not src.strip():
        raise FieldSyntaxError("empty expression", 0, src if isinstance(src, str) else "")
    return _Parser(src).parse()


# -- printer ----------------------------------------------------------------

def _real_text(x: float) -> str:
    if not np.isfinite(x):
        raise ValueError(f"cannot print non-finite constant {x}")
    text = repr(float(abs(x)))
    return f"(0-{text})" if x < 0 or (x == 0 and np.signbit(x)) else text


def _const_text(c: complex) -> str:
    c = complex(c)
    if c.imag == 0:
        return _real_text(c.real)
    if c == 1j:
        return "i"
    if c.real == 0:
        return f"({_real_text(c.imag)}*i)"
    return f"({_real_text(c.real)}+{_real_text(c.imag)}*i)"


def _affine_text(g: InhomogeneousElement, k: int, inner: list[str]) -> str:
    m = g.inverse_matrix
    a = g.translation
    parts = []
    for j in range(4):
        if m[k, j] == 0:
            continue
        shifted = inner[j] if a[j] == 0 else f"({inner[j]}-{_real_text(a[j])})"
        parts.append(f"{_real_text(m[k, j])}*{shifted}")
    return "(" + "+".join(parts) + ")" if parts else "0.0"


def to_text(f: FieldExpr, env: list[str] | None = None) -> str:
    """Render ``f`` in the grammar (fully parenthesised where needed)."""
    env = env or list(VARS)
    if isinstance(f, Const):
        return _const_text(f.value)
    if isinstance(f, Var):
        return env[f.index]
    if isinstance(f, BinOp):
        return f"({to_text(f.left, env)}{f.op}{to_text(f.right, env)})"
    if isinstance(f, Pow):
        return f"({to_text(f.base, env)})^{f.exponent}"
    if isinstance(f, Call):
        return f"{f.func}({to_text(f.arg, env)})"
    if isinstance(f, Pullback):
        inner = [_affine_text(f.g, k, env) for k in range(4)]
        return to_text(f.expr, inner)
    raise TypeError(f"not a field expression: {f!r}")


# -- evaluation -------------------------------------------------------------

def _eval(f: FieldExpr, x: np.ndarray):
    if isinstance(f, Const):
        return np.full(x.shape[:-1], f.value, dtype=complex)
    if isinstance(f, Var):
        return x[..., f.index].astype(complex)
    if isinstance(f, BinOp):
        left, right = _eval(f.left, x), _eval(f.right, x)
        if f.op == "+":
            return left + right
        if f.op == "-":
            return left - right
        if f.op == "*":
            return left * right
        if np.any(right == 0):
            raise FieldEvalError("division by zero")
        return left / right
    if isinstance(f, Pow):
        base = _eval(f.base, x)
        out = np.ones_like(base)
        for _ in range(f.exponent):
            out = out * base
        return out
    if isinstance(f, Call):
        return FUNCS[f.func](_eval(f.arg, x))
    if isinstance(f, Pullback):
        return _eval(f.expr, apply_inverse(f.g, x))
    raise TypeError(f"not a field expression: {f!r}")


def eval_field(f: FieldExpr, x):
    """Value of ``f`` at a point, or at a stack of points (4-axis last)."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1:] != (4,):
        raise ValueError(f"points need a trailing axis of length 4, got {x.shape}")
    with np.errstate(all="ignore"):
        out = _eval(f, x)
    return complex(out) if out.ndim == 0 else out


# -- algebra ----------------------------------------------------------------

def pullback(f: FieldExpr, g: InhomogeneousElement) -> FieldExpr:
    """``f o tau`` with ``tau(x) = Y(L)^-1 (x - a)``; nested pullbacks collapse."""
    if g.is_identity() or isinstance(f, Const):
        return f
    if isinstance(f, Pullback):
        return Pullback(f.expr, compose(g, f.g))
    if isinstance(f, BinOp) and f.op == "*" and isinstance(f.left, Const):
        return BinOp("*", f.left, pullback(f.right, g))
    return Pullback(f, g)


def scale(c: complex, f: FieldExpr) -> FieldExpr:
    c = complex(c)
    if c == 1:
        return f
    if c == 0:
        return ZERO
    if isinstance(f, Const):
        return Const(c * f.value)
    if isinstance(f, BinOp) and f.op == "*" and isinstance(f.left, Const):
        return BinOp("*", Const(c * f.left.value), f.right)
    return BinOp("*", Const(c), f)


def add(f: FieldExpr, g: FieldExpr) -> FieldExpr:
    if f == ZERO:
        return g
    if g == ZERO:
        return f
    return BinOp("+", f, g)


@dataclass(frozen=True)
class FieldSection:
    """One expression per basis vector ``E^alpha`` of the fibre."""

    components: tuple

    def __post_init__(self):
        comps = tuple(parse_field(c) if isinstance(c, str) else c for c in self.components)
        if not comps:
            raise ValueError("a field section needs at least one component")
        object.__setattr__(self, "components", comps)

    @property
    def n(self) -> int:
        return len(self.components)

    @classmethod
    def basis(cls, alpha: int, n: int) -> "FieldSection":
        """Constant section ``E^alpha`` (``alpha`` counts from 1)."""
        return cls(tuple(ONE if k == alpha - 1 else ZERO for k in range(n)))

    @classmethod
    def zero(cls, n: int) -> "FieldSection":
        return cls((ZERO,) * n)

    def evaluate(self, x) -> np.ndarray:
        """Array with a trailing axis of length ``n``."""
        return np.stack([np.broadcast_to(eval_field(c, x), np.shape(x)[:-1]) for c in self.components], axis=-1)

    def map(self, fn) -> "FieldSection":
        return FieldSection(tuple(fn(c) for c in self.components))

    def texts(self) -> list[str]:
        return [to_text(c) for c in self.components]


def scale_add(lam: complex, f: FieldSection, mu: complex, g: FieldSection) -> FieldSection:
    """Componentwise ``lam*f + mu*g``."""
    if f.n != g.n:
        raise ValueError(f"component count mismatch: {f.n} vs {g.n}")
    return FieldSection(tuple(add(scale(lam, a), scale(mu, b)) for a, b in zip(f.components, g.components)))
