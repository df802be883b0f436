"""Expression language for scalar fields on the upper half space.

Grammar (used by the CLI and the test corpus):

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-'* atom ('^' int)?
    atom   := complex-literal | 'z' | 'conj(z)' | 't' | '(' expr ')'

Complex literals look like ``1``, ``0.5i``, ``-0.3+1.2i`` (the signed
combination is handled by the additive grammar).  Exponents are integers;
negative exponents are accepted only on the bare ``t`` atom, where the jet
of t^n is available in closed form.

An expression evaluates either to a plain complex number or to a fourth
order :class:`~hypdef.jets.Jet`, so every partial derivative a formula needs
is propagated exactly rather than by finite differences.

The module also carries the scalar hyperbolic operators: the coframe
gradient d̂f with components (t f_x, t f_y, t f_t) in the orthonormal
coframe, the Laplacian Δ̂f = t f_t - t²(f_xx + f_yy + f_tt) with the
nonnegative-spectrum sign, and the product rule residual

    Δ̂(fg) - [(Δ̂f) g - 2<d̂f, d̂g> + f (Δ̂g)]

where the pairing is the bilinear sum over coframe components.
"""
from __future__ import annotations

import re
from typing import NamedTuple, Optional, Union

from .jets import Jet

__all__ = [
    "FieldExpr",
    "FieldParseError",
    "dhat",
    "dhat_jets",
    "laplacian_hat",
    "laplacian_hat_jet",
    "product_rule_check",
]


class FieldParseError(ValueError):
    """Malformed field expression; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class _Token(NamedTuple):
    kind: str  # NUM, NAME, OP, END
    text: str
    value: complex
    pos: int


_NUMBER = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?i?")
_NAME = re.compile(r"[A-Za-z_]+")


def _tokenize(src: str) -> list:
    tokens = []
    i = 0
    n = len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        m = _NUMBER.match(src, i)
        if m:
            text = m.group(0)
            if text.endswith("i"):
                value = complex(0.0, float(text[:-1]))
            else:
                value = complex(float(text), 0.0)
            tokens.append(_Token("NUM", text, value, i))
            i = m.end()
            continue
        m = _NAME.match(src, i)
        if m:
            text = m.group(0)
            if text == "i":
                tokens.append(_Token("NUM", text, 1j, i))
            else:
                tokens.append(_Token("NAME", text, 0j, i))
            i = m.end()
            continue
        if ch in "+-*^()":
            tokens.append(_Token("OP", ch, 0j, i))
            i += 1
            continue
        raise FieldParseError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("END", "", 0j, n))
    return tokens


# AST nodes: plain tuples keep the tree cheap to walk.
#   ("num", value, pos) ("z", pos) ("zbar", pos) ("t", pos)
#   ("neg", child, pos) ("pow", child, n, pos)
#   ("add", left, right, pos) ("sub", left, right, pos) ("mul", left, right, pos)


class _Parser:
    def __init__(self, tokens: list):
        self.tokens = tokens
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect_op(self, op: str):
        if self.tok.kind == "OP" and self.tok.text == op:
            return self.advance()
        raise FieldParseError(f"expected {op!r}", self.tok.pos)

    def parse(self):
        node = self.expr()
        if self.tok.kind != "END":
            raise FieldParseError(
                f"unexpected trailing input {self.tok.text!r}", self.tok.pos
            )
        return node

    def expr(self):
        node = self.term()
        while self.tok.kind == "OP" and self.tok.text in "+-":
            op = self.advance()
            rhs = self.term()
            node = ("add" if op.text == "+" else "sub", node, rhs, op.pos)
        return node

    def term(self):
        node = self.factor()
        while self.tok.kind == "OP" and self.tok.text == "*":
            op = self.advance()
            rhs = self.factor()
            node = ("mul", node, rhs, op.pos)
        return node

    def factor(self):
        if self.tok.kind == "OP" and self.tok.text == "-":
            op = self.advance()
            return ("neg", self.factor(), op.pos)
        node = self.atom()
        if self.tok.kind == "OP" and self.tok.text == "^":
            caret = self.advance()
            sign = 1
            if self.tok.kind == "OP" and self.tok.text == "-":
                self.advance()
                sign = -1
            if self.tok.kind != "NUM":
                raise FieldParseError("expected integer exponent", self.tok.pos)
            num = self.advance()
            if num.value.imag != 0 or num.value.real != int(num.value.real):
                raise FieldParseError(
                    f"exponent must be an integer, got {num.text!r}", num.pos
                )
            node = ("pow", node, sign * int(num.value.real), caret.pos)
        return node

    def atom(self):
        tok = self.tok
        if tok.kind == "NUM":
            self.advance()
            return ("num", tok.value, tok.pos)
        if tok.kind == "NAME":
            if tok.text == "z":
                self.advance()
                return ("z", tok.pos)
            if tok.text == "t":
                self.advance()
                return ("t", tok.pos)
            if tok.text == "conj":
                self.advance()
                self.expect_op("(")
                inner = self.tok
                if inner.kind != "NAME" or inner.text != "z":
                    raise FieldParseError("conj applies to z only", inner.pos)
                self.advance()
                self.expect_op(")")
                return ("zbar", tok.pos)
            raise FieldParseError(f"unknown name {tok.text!r}", tok.pos)
        if tok.kind == "OP" and tok.text == "(":
            self.advance()
            node = self.expr()
            self.expect_op(")")
            return node
        raise FieldParseError(f"expected an atom, got {tok.text or 'end'!r}", tok.pos)


def _eval_value(node, w: complex, t: float) -> complex:
    tag = node[0]
    if tag == "num":
        return node[1]
    if tag == "z":
        return w
    if tag == "zbar":
        return w.conjugate()
    if tag == "t":
        return complex(t)
    if tag == "neg":
        return -_eval_value(node[1], w, t)
    if tag == "pow":
        base = _eval_value(node[1], w, t)
        return base ** node[2]
    a = _eval_value(node[1], w, t)
    b = _eval_value(node[2], w, t)
    if tag == "add":
        return a + b
    if tag == "sub":
        return a - b
    return a * b


def _eval_jet(node, point) -> Jet:
    tag = node[0]
    if tag == "num":
        return Jet.const(point, node[1])
    if tag == "z":
        return Jet.var_z(point)
    if tag == "zbar":
        return Jet.var_conj_z(point)
    if tag == "t":
        return Jet.var_t(point)
    if tag == "neg":
        return -_eval_jet(node[1], point)
    if tag == "pow":
        n = node[2]
        if n < 0:
            if node[1][0] != "t":
                raise FieldParseError(
                    "negative exponents are supported on t only", node[3]
                )
            return Jet.t_power(point, n)
        return _eval_jet(node[1], point) ** n
    a = _eval_jet(node[1], point)
    b = _eval_jet(node[2], point)
    if tag == "add":
        return a + b
    if tag == "sub":
        return a - b
    return a * b


def _depends_on_t(node) -> bool:
    tag = node[0]
    if tag == "t":
        return True
    if tag in ("num", "z", "zbar"):
        return False
    if tag in ("neg", "pow"):
        return _depends_on_t(node[1])
    return _depends_on_t(node[1]) or _depends_on_t(node[2])


class FieldExpr:
    """A parsed scalar-field expression in z, conj(z) and t."""

    __slots__ = ("source", "_ast")

    def __init__(self, source: str):
        self.source = source
        self._ast = _Parser(_tokenize(source)).parse()

    @classmethod
    def parse(cls, source: str) -> "FieldExpr":
        return cls(source)

    def value(self, w: complex, t: float = 1.0) -> complex:
        return _eval_value(self._ast, complex(w), float(t))

    def jet(self, point) -> Jet:
        """Order-4 jet at an HPoint or (x, y, t) triple."""
        return _eval_jet(self._ast, point)

    @property
    def depends_on_t(self) -> bool:
        return _depends_on_t(self._ast)

    def __str__(self) -> str:
        return self.source

    def __repr__(self) -> str:
        return f"FieldExpr({self.source!r})"


def _as_jet(f: Union[FieldExpr, Jet], point: Optional[tuple]) -> Jet:
    if isinstance(f, Jet):
        return f
    if point is None:
        raise ValueError("a basepoint is required to evaluate a FieldExpr")
    return f.jet(point)


def dhat_jets(f: Jet) -> tuple:
    """Coframe components of d̂f as jets: (t f_x, t f_y, t f_t)."""
    tj = Jet.var_t(f.point)
    return (tj * f.diff_x(), tj * f.diff_y(), tj * f.diff_t())


def dhat(f: Union[FieldExpr, Jet], point=None) -> tuple:
    """Values (t f_x, t f_y, t f_t) at the basepoint."""
    jf = _as_jet(f, point)
    return tuple(c.value for c in dhat_jets(jf))


def laplacian_hat_jet(f: Jet) -> Jet:
    """Jet of Δ̂f = t f_t - t²(f_xx + f_yy + f_tt)."""
    tj = Jet.var_t(f.point)
    second = (
        f.diff_x().diff_x() + f.diff_y().diff_y() + f.diff_t().diff_t()
    )
    return tj * f.diff_t() - tj * tj * second

def laplacian_hat(f: Union[FieldExpr, Jet], point=None) -> complex:
    return laplacian_hat_jet(_as_jet(f, point)).value


def product_rule_check(f: Jet, g: Jet) -> float:
    """Residual of Δ̂(fg) = (Δ̂f)g - 2<d̂f, d̂g> + f(Δ̂g) at the basepoint.

    The pairing is bilinear (no conjugation): with complex f and g the
    identity is a polynomial identity in the partials, so it holds without
    Hermitian symmetrization.
    """
    if f.point != g.point:
        raise ValueError("product rule check needs a shared basepoint")
    lhs = laplacian_hat(f * g)
    df = dhat(f)
    dg = dhat(g)
    pairing = sum(a * b for a, b in zip(df, dg))
    rhs = laplacian_hat(f) * g.value - 2.0 * pairing + f.value * laplacian_hat(g)
    return abs(lhs - rhs)
