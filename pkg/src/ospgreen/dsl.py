"""A small expression language for bracketed generator expressions.

Grammar::

    expr    := ['-'] term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := INT | 'q' | 'qb' | 'q^' SIGNED_INT | gen | bracket | '(' expr ')'
    bracket := ( '[' expr ',' expr ']'
               | '{' expr ',' expr '}'
               | '[[' expr ',' expr ']]' ) ('_' weight)?
    gen     := ('e' | 'f' | 'k' | 'kb' | 'h' | 'L' | 'Lb') INT | 'a' ('+' | '-') INT
    weight  := 'q' | 'qb' | 'q^' SIGNED_INT | '(' expr ')'

``[x, y]_w = xy - w yx``, ``{x, y}_w = xy + w yx`` and
``[[x, y]]_w = xy - (-1)^(|x||y|) w yx``.  The default weight is 1.
Division is only allowed by scalar-valued expressions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Union

from .scalars import ONE, QScalar
from .superalg import AlgebraSignature, Element, bracket

__all__ = [
    "Gen", "Int", "QPow", "Neg", "BinOp", "Bracket", "Node",
    "DSLSyntaxError", "BindError", "parse", "pretty", "bind",
]


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Gen:
    kind: str  # e f k kb h L Lb a+ a-
    index: int


@dataclass(frozen=True)
class Int:
    value: int


@dataclass(frozen=True)
class QPow:
    exp: int


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str  # + - * /
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Bracket:
    kind: str  # comm anti super
    left: "Node"
    right: "Node"
    weight: Optional["Node"] = None


Node = Union[Gen, Int, QPow, Neg, BinOp, Bracket]


# ---------------------------------------------------------------------------
# lexer
# ---------------------------------------------------------------------------


class DSLSyntaxError(SyntaxError):
    def __init__(self, msg: str, text: str, pos: int, expected: tuple[str, ...] = ()):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line, self.column, self.expected = line, col, tuple(sorted(expected))
        exp = f"; expected one of {', '.join(self.expected)}" if expected else ""
        super().__init__(f"line {line}, column {col}: {msg}{exp}")


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<agen>a[+-]\d+)
  | (?P<qpow>q\^-?\d+)
  | (?P<gen>(?:kb|Lb|e|f|k|h|L)\d+)
  | (?P<qb>qb)
  | (?P<q>q)
  | (?P<int>\d+)
  | (?P<op>\[|\]|\{|\}|\(|\)|,|\+|-|\*|/|_)
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _lex(text: str) -> list[_Tok]:
    out: list[_Tok] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise DSLSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            tok = m.group()
            out.append(_Tok(tok if kind == "op" else kind, tok, pos))
        pos = m.end()
    out.append(_Tok("eof", "", len(text)))
    return out


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _lex(text)
        self.i = 0

    def peek(self, k: int = 0) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, expected: tuple[str, ...]):
        t = self.peek()
        what = "end of input" if t.kind == "eof" else repr(t.text)
        raise DSLSyntaxError(f"unexpected {what}", self.text, t.pos, expected)

    def expect(self, kind: str) -> _Tok:
        t = self.peek()
        if t.kind != kind:
            self.error((kind,))
        self.i += 1
        return t

    def adjacent(self, k: int) -> bool:
        """True when token i+k immediately follows token i+k-1 in the text."""
        a, b = self.peek(k - 1), self.peek(k)
        return b.pos == a.pos + len(a.text)

    def parse(self) -> Node:
        node = self.expr()
        if self.peek().kind != "eof":
            self.error(("+", "-", "*", "/", "eof"))
        return node

    def expr(self) -> Node:
        if self.peek().kind == "-":
            self.i += 1
            node: Node = Neg(self.term())
        else:
            node = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.peek().kind
            self.i += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek().kind in ("*", "/"):
            op = self.peek().kind
            self.i += 1
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> Node:
        t = self.peek()
        if t.kind == "int":
            self.i += 1
            return Int(int(t.text))
        if t.kind == "q":
            self.i += 1
            return QPow(1)
        if t.kind == "qb":
            self.i += 1
            return QPow(-1)
        if t.kind == "qpow":
            self.i += 1
            return QPow(int(t.text[2:]))
        if t.kind == "gen":
            self.i += 1
            m = re.fullmatch(r"(kb|Lb|e|f|k|h|L)(\d+)", t.text)
            return Gen(m.group(1), int(m.group(2)))
        if t.kind == "agen":
            self.i += 1
            return Gen(t.text[:2], int(t.text[2:]))
        if t.kind == "(":
            self.i += 1
            node = self.expr()
            self.expect(")")
            return node
        if t.kind == "[":
            if self.peek(1).kind == "[" and self.adjacent(1):
                save = self.i
                try:
                    return self.super_bracket()
                except DSLSyntaxError:
                    self.i = save
            return self.plain_bracket("[", "]", "comm")
        if t.kind == "{":
            return self.plain_bracket("{", "}", "anti")
        self.error(("INT", "q", "qb", "q^INT", "generator", "[", "[[", "{", "("))

    def super_bracket(self) -> Node:
        self.expect("[")
        self.expect("[")
        left = self.expr()
        self.expect(",")
        right = self.expr()
        self.expect("]")
        if not self.adjacent(0):
            self.error(("]]",))
        self.expect("]")
        return Bracket("super", left, right, self.weight())

    def plain_bracket(self, open_: str, close: str, kind: str) -> Node:
        self.expect(open_)
        left = self.expr()
        self.expect(",")
        right = self.expr()
        self.expect(close)
        return Bracket(kind, left, right, self.weight())

    def weight(self) -> Optional[Node]:
        if self.peek().kind != "_":
            return None
        self.i += 1
        t = self.peek()
        if t.kind == "q":
            self.i += 1
            return QPow(1)
        if t.kind == "qb":
            self.i += 1
            return QPow(-1)
        if t.kind == "qpow":
            self.i += 1
            return QPow(int(t.text[2:]))
        if t.kind == "(":
            self.i += 1
            node = self.expr()
            self.expect(")")
            return node
        self.error(("q", "qb", "q^INT", "("))


def parse(text: str) -> Node:
    """Parse an expression; raises :class:`DSLSyntaxError` with position."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# pretty printer
# ---------------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def pretty(node: Node) -> str:
    """Render an AST so that ``parse(pretty(x)) == x``."""
    return _pp(node, 0)


def _pp(node: Node, ctx: int) -> str:
    if isinstance(node, Gen):
        return f"{node.kind}{node.index}"
    if isinstance(node, Int):
        return str(node.value)
    if isinstance(node, QPow):
        return {1: "q", -1: "qb"}.get(node.exp, f"q^{node.exp}")
    if isinstance(node, Neg):
        s = f"-{_pp(node.arg, 2)}"
        return f"({s})" if ctx > 1 else s
    if isinstance(node, BinOp):
        p = _PREC[node.op]
        left = _pp(node.left, p)
        right = _pp(node.right, p + 1)
        sep = f" {node.op} " if p == 1 else node.op
        s = f"{left}{sep}{right}"
        return f"({s})" if p < ctx else s
    if isinstance(node, Bracket):
        a, b = _pp(node.left, 0), _pp(node.right, 0)
        body = {"comm": f"[{a}, {b}]", "anti": f"{{{a}, {b}}}", "super": f"[[{a}, {b}]]"}[node.kind]
        return body + _pp_weight(node.weight)
    raise TypeError(f"not an AST node: {node!r}")


def _pp_weight(w: Optional[Node]) -> str:
    if w is None:
        return ""
    if isinstance(w, QPow):
        return "_" + _pp(w, 0)
    return f"_({_pp(w, 0)})"


# ---------------------------------------------------------------------------
# binding
# ---------------------------------------------------------------------------


class BindError(ValueError):
    pass


def bind(node: Node, sig: AlgebraSignature) -> Element:
    """Evaluate an AST to a free-algebra element under the grading of ``sig``."""
    if isinstance(node, Gen):
        try:
            return sig.gen(node.kind, node.index)
        except IndexError as exc:
            raise BindError(f"generator {pretty(node)}: index {node.index} out of range 1..{sig.N}") from exc
    if isinstance(node, Int):
        return Element.scalar(node.value)
    if isinstance(node, QPow):
        return Element.scalar(QScalar.qpow(node.exp))
    if isinstance(node, Neg):
        return -bind(node.arg, sig)
    if isinstance(node, BinOp):
        a, b = bind(node.left, sig), bind(node.right, sig)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        return a.scale(ONE / _as_scalar(b, node.right))
    if isinstance(node, Bracket):
        w = ONE if node.weight is None else _as_scalar(bind(node.weight, sig), node.weight)
        return bracket(node.kind, bind(node.left, sig), bind(node.right, sig), w)
    raise TypeError(f"not an AST node: {node!r}")


def _as_scalar(x: Element, node: Node) -> QScalar:
    if x.is_zero():
        raise BindError(f"division by zero: {pretty(node)}")
    if set(x.terms) != {()}:
        raise BindError(f"expected a scalar expression, got {pretty(node)}")
    return x.terms[()]


def scalar_node(c: QScalar) -> Node:
    """An AST for a q-scalar (used when emitting relations as text)."""
    if c.is_zero():
        return Int(0)
    num = _laurent_node(c.num, c.shift)
    if c.den.is_one():
        return num
    return BinOp("/", num, _laurent_node(c.den, 0))


def _laurent_node(p, shift: int) -> Node:
    terms = [(i + shift, int(v)) for i, v in enumerate(p.coeffs()) if v]
    terms.sort(reverse=True)
    node: Optional[Node] = None
    for k, c in terms:
        mono: Node
        if k == 0:
            mono = Int(abs(c))
        else:
            mono = QPow(k)
            if abs(c) != 1:
                mono = BinOp("*", Int(abs(c)), mono)
        if node is None:
            node = mono if c > 0 else Neg(mono)
        else:
            node = BinOp("+" if c > 0 else "-", node, mono)
    return node
