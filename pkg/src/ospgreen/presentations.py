"""Cartan matrix, Chevalley and Green presentations, and the maps between them.

Relations are built as DSL syntax trees so that each one has both an exact
free-algebra :class:`~ospgreen.superalg.Element` (``lhs - rhs``) and a
readable text form.  Constants involving sqrt(2) never enter a relation:
the conversion formulas carry them as an explicit power of sqrt(2)
(see :class:`Scaled`).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .dsl import BinOp, Bracket, Gen, Int, Neg, Node, QPow, bind, pretty
from .scalars import Fraction, QScalar
from .superalg import AlgebraSignature, Element, Letter, word_parity

__all__ = [
    "AlgebraSignature", "Relation", "Presentation", "Scaled",
    "cartan_matrix", "chevalley_presentation", "green_presentation",
    "green_from_chevalley", "chevalley_from_green", "L_from_k",
    "root_assignment", "substitute_scaled", "deformed_weight_index",
    "B44_CARTAN",
]

B44_CARTAN = (
    (2, -1, 0, 0, 0, 0, 0, 0),
    (-1, 2, -1, 0, 0, 0, 0, 0),
    (0, -1, 2, -1, 0, 0, 0, 0),
    (0, 0, -1, 0, 1, 0, 0, 0),
    (0, 0, 0, 1, -2, 1, 0, 0),
    (0, 0, 0, 0, 1, -2, 1, 0),
    (0, 0, 0, 0, 0, 1, -2, 1),
    (0, 0, 0, 0, 0, 0, 1, -1),
)


def cartan_matrix(sig: AlgebraSignature) -> tuple[tuple[int, ...], ...]:
    """The symmetric N x N Cartan matrix of B(n/m), rows and columns 1..N."""
    N = sig.N

    def s(i: int) -> int:
        return -1 if sig.grade(i) else 1

    rows = []
    for i in range(1, N + 1):
        row = []
        for j in range(1, N + 1):
            a = 0
            if i + 1 == j:
                a += s(j)
            if i == j + 1:
                a += s(i)
            if i == j:
                a -= s(j + 1) + s(j)
                if i == N:
                    a += 1
            row.append(a)
        rows.append(tuple(row))
    return tuple(rows)


# ---------------------------------------------------------------------------
# relations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Relation:
    """A defining relation ``expr = 0`` (stored as lhs - rhs)."""

    name: str
    expr: Node
    element: Element
    meta: Mapping[str, object] = field(default_factory=dict)

    @property
    def text(self) -> str:
        return pretty(self.expr)


@dataclass(frozen=True)
class Presentation:
    signature: AlgebraSignature
    deformed: bool
    family: str  # "chevalley" or "green"
    generators: tuple[Letter, ...]
    relations: tuple[Relation, ...]

    def __post_init__(self):
        names = [r.name for r in self.relations]
        if len(names) != len(set(names)):
            raise ValueError("duplicate relation names")

    def relation(self, name: str) -> Relation:
        for r in self.relations:
            if r.name == name:
                return r
        raise KeyError(name)

    def named(self, prefix: str) -> list[Relation]:
        return [r for r in self.relations if r.name.startswith(prefix)]

    def to_json(self) -> dict:
        return {
            "signature": {"m": self.signature.m, "n": self.signature.n},
            "family": self.family,
            "deformed": self.deformed,
            "generators": [{"name": a.name, "parity": "odd" if a.parity else "even"}
                           for a in self.generators],
            "relations": [{"name": r.name, "expr": r.text, "element": r.element.render()}
                          for r in self.relations],
        }


# small AST helpers -----------------------------------------------------------


def g(kind: str, i: int) -> Gen:
    return Gen(kind, i)


def add(a: Node, b: Node) -> Node:
    return BinOp("+", a, b)


def sub(a: Node, b: Node) -> Node:
    return BinOp("-", a, b)


def mul(*xs: Node) -> Node:
    out = xs[0]
    for x in xs[1:]:
        out = BinOp("*", out, x)
    return out


def const(c: int | Fraction) -> Node:
    c = Fraction(c)
    node: Node = Int(abs(c.numerator))
    if c.denominator != 1:
        node = BinOp("/", node, Int(c.denominator))
    return Neg(node) if c < 0 else node


def times(c: int | Fraction, x: Node) -> Node:
    """``c * x`` with the trivial cases folded."""
    c = Fraction(c)
    if c == 1:
        return x
    if c == -1:
        return Neg(x)
    top = x if abs(c.numerator) == 1 else mul(Int(abs(c.numerator)), x)
    node = top if c.denominator == 1 else BinOp("/", top, Int(c.denominator))
    return Neg(node) if c < 0 else node


def plus(lhs: Node, c: int | Fraction, x: Node) -> Node:
    """``lhs + c * x`` written with the sign of ``c`` folded into the operator."""
    if c == 0:
        return lhs
    return add(lhs, times(c, x)) if c > 0 else sub(lhs, times(-c, x))


def qw(k: int) -> Node | None:
    return None if k == 0 else QPow(k)


def br(kind: str, a: Node, b: Node, w: Node | None = None) -> Bracket:
    return Bracket(kind, a, b, w)


Q_MINUS_QB = sub(QPow(1), QPow(-1))


class _Builder:
    def __init__(self, sig: AlgebraSignature):
        self.sig = sig
        self.out: list[Relation] = []

    def emit(self, name: str, expr: Node, skip_trivial: bool = True, **meta):
        el = bind(expr, self.sig)
        if el.is_zero() and skip_trivial:
            return
        ps = {word_parity(w) for w in el.terms}
        if len(ps) > 1:
            raise AssertionError(f"relation {name} is not parity-homogeneous")
        self.out.append(Relation(name, expr, el, dict(meta)))


# ---------------------------------------------------------------------------
# Chevalley presentations
# ---------------------------------------------------------------------------


def _serre(b: _Builder, x: str, deformed: bool) -> None:
    sig = b.sig
    N, m = sig.N, sig.m
    tag = f"{x}-serre"
    if not deformed:
        for i, j in itertools.combinations(range(1, N + 1), 2):
            if j - i > 1:
                b.emit(f"{tag}-comm[{i},{j}]", br("comm", g(x, i), g(x, j)))
        for i in range(1, N):
            for j in (i - 1, i + 1):
                if 1 <= j <= N:
                    b.emit(f"{tag}-cubic[{i},{j}]",
                           br("super", g(x, i), br("comm", g(x, i), g(x, j))))
        if m >= 2:
            b.emit(f"{tag}-mixed",
                   br("anti", br("comm", g(x, m - 1), g(x, m)), br("comm", g(x, m), g(x, m + 1))))
        b.emit(f"{tag}-quartic",
               br("comm", g(x, N), br("comm", g(x, N), br("comm", g(x, N), g(x, N - 1)))))
        return
    for i in range(1, N + 1):
        for j in range(i, N + 1):
            if abs(i - j) != 1:
                b.emit(f"{tag}-comm[{i},{j}]", br("super", g(x, i), g(x, j)))
    for i in range(1, N):
        if i == m:
            continue
        for j in (i - 1, i + 1):
            if 1 <= j <= N:
                b.emit(f"{tag}-cubic[{i},{j}]",
                       br("comm", g(x, i), br("comm", g(x, i), g(x, j), QPow(-1)), QPow(1)))
    if m >= 2:
        b.emit(f"{tag}-mixed",
               br("anti", br("comm", g(x, m), g(x, m - 1), QPow(1)),
                  br("comm", g(x, m), g(x, m + 1), QPow(-1))))
    b.emit(f"{tag}-quartic",
           br("comm", g(x, N), br("comm", g(x, N), br("comm", g(x, N), g(x, N - 1), QPow(-1))), QPow(1)))


def chevalley_presentation(sig: AlgebraSignature, deformed: bool) -> Presentation:
    """Cartan-Kac plus e- and f-Serre relations.

    Classical: generators h, e, f.  Deformed: generators k, kb, e, f.
    """
    A = cartan_matrix(sig)
    N = sig.N
    b = _Builder(sig)
    idx = range(1, N + 1)
    if not deformed:
        for i, j in itertools.combinations(idx, 2):
            b.emit(f"CK-hh[{i},{j}]", br("comm", g("h", i), g("h", j)))
        for i in idx:
            for j in idx:
                a = A[i - 1][j - 1]
                b.emit(f"CK-he[{i},{j}]", plus(br("comm", g("h", i), g("e", j)), -a, g("e", j)))
                b.emit(f"CK-hf[{i},{j}]", plus(br("comm", g("h", i), g("f", j)), a, g("f", j)))
        for i in idx:
            for j in idx:
                lhs = br("super", g("e", i), g("f", j))
                b.emit(f"CK-ef[{i},{j}]", sub(lhs, g("h", i)) if i == j else lhs)
        _serre(b, "e", False)
        _serre(b, "f", False)
        gens = [sig.letter(k, i) for k in ("h", "e", "f") for i in idx]
    else:
        for i in idx:
            b.emit(f"CK-kkb[{i}]", sub(mul(g("k", i), g("kb", i)), Int(1)))
            b.emit(f"CK-kbk[{i}]", sub(mul(g("kb", i), g("k", i)), Int(1)))
        for i, j in itertools.combinations(idx, 2):
            b.emit(f"CK-kk[{i},{j}]", br("comm", g("k", i), g("k", j)))
        for i in idx:
            for j in idx:
                a = A[i - 1][j - 1]
                b.emit(f"CK-ke[{i},{j}]", sub(mul(g("k", i), g("e", j)), mul(*_qfac(a), g("e", j), g("k", i))))
                b.emit(f"CK-kf[{i},{j}]", sub(mul(g("k", i), g("f", j)), mul(*_qfac(-a), g("f", j), g("k", i))))
        for i in idx:
            for j in idx:
                lhs = br("super", g("e", i), g("f", j))
                if i == j:
                    rhs = BinOp("/", sub(g("k", i), g("kb", i)), Q_MINUS_QB)
                    b.emit(f"CK-ef[{i},{j}]", sub(lhs, rhs))
                else:
                    b.emit(f"CK-ef[{i},{j}]", lhs)
        _serre(b, "e", True)
        _serre(b, "f", True)
        gens = [sig.letter(k, i) for k in ("k", "kb", "e", "f") for i in idx]
    return Presentation(sig, deformed, "chevalley", tuple(gens), tuple(b.out))


def _qfac(k: int) -> tuple[Node, ...]:
    return () if k == 0 else (QPow(k),)


# ---------------------------------------------------------------------------
# Green presentations
# ---------------------------------------------------------------------------


def _a(sign: int, i: int) -> Gen:
    return Gen("a+" if sign > 0 else "a-", i)


def _sgn(s: int) -> str:
    return "+" if s > 0 else "-"


def green_presentation(sig: AlgebraSignature, deformed: bool) -> Presentation:
    """Relations among the Green generators a_i^+-, plus L_i^+-1 when deformed."""
    N = sig.N
    b = _Builder(sig)
    idx = range(1, N + 1)
    signs = (1, -1)
    if not deformed:
        for i in idx:
            for j in idx:
                if abs(i - j) > 1:
                    continue
                for k in idx:
                    for eta in signs:
                        lhs = br("super", br("super", _a(eta, i), _a(-eta, j)), _a(eta, k))
                        if j == k:
                            c = 2 * (eta if sig.grade(k) else 1)
                            expr = plus(lhs, -c, _a(eta, i))
                        else:
                            expr = lhs
                        b.emit(f"green-triple[{i},{j},{k},{_sgn(eta)}]", expr, skip_trivial=False)
        for eta in signs:
            b.emit(f"green-end[{_sgn(eta)}]",
                   br("comm", br("comm", _a(eta, N - 1), _a(eta, N)), _a(eta, N)), skip_trivial=False)
        gens = [sig.letter(k, i) for k in ("a+", "a-") for i in idx]
        return Presentation(sig, False, "green", tuple(gens), tuple(b.out))

    for i in idx:
        b.emit(f"green-L-inverse[{i}]", sub(mul(g("L", i), g("Lb", i)), Int(1)))
        b.emit(f"green-Lb-inverse[{i}]", sub(mul(g("Lb", i), g("L", i)), Int(1)))
    for i, j in itertools.combinations(idx, 2):
        b.emit(f"green-L-commute[{i},{j}]", br("comm", g("L", i), g("L", j)))
    for i in idx:
        for j in idx:
            for s in signs:
                e = s * (-1 if sig.grade(i) else 1) if i == j else 0
                b.emit(f"green-L-a[{i},{j},{_sgn(s)}]",
                       sub(mul(g("L", i), _a(s, j)), mul(*_qfac(e), _a(s, j), g("L", i))))
    for i in idx:
        b.emit(f"green-a-pair[{i}]",
               add(br("super", _a(-1, i), _a(1, i)),
                   BinOp("/", mul(Int(2), sub(g("L", i), g("Lb", i))), Q_MINUS_QB)))
    for i in idx:
        for xi in signs:
            if not 1 <= i + xi <= N:
                continue
            for j in idx:
                for eta in signs:
                    b.emit(f"green-a-triple[{i},{_sgn(xi)},{j},{_sgn(eta)}]",
                           green_family4(sig, i, xi, j, eta), skip_trivial=False)
    for xi in signs:
        b.emit(f"green-a-end[{_sgn(xi)}]",
               br("comm", br("comm", _a(xi, N - 1), _a(xi, N)), _a(xi, N), QPow(-1)), skip_trivial=False)
    gens = [sig.letter(k, i) for k in ("a+", "a-", "L", "Lb") for i in idx]
    return Presentation(sig, True, "green", tuple(gens), tuple(b.out))


def green_family4(sig: AlgebraSignature, i: int, xi: int, j: int, eta: int, two: int = 2) -> Node:
    """[[ [[a_i^eta, a_{i+xi}^-eta]], a_j^eta ]]_w - rhs, with the rhs constant ``two``."""
    e = -xi * (-1 if sig.grade(i) else 1) if i == j else 0
    lhs = br("super", br("super", _a(eta, i), _a(-eta, i + xi)), _a(eta, j), qw(e))
    if j != i + xi:
        return lhs
    c = two * (eta if sig.grade(j) else 1)
    Lj = g("L", j) if -xi * eta > 0 else g("Lb", j)
    term = mul(Lj, _a(eta, i))
    return plus(lhs, -c, term)


def green_relation_count(sig: AlgebraSignature) -> int:
    """Number of deformed Green relations, by direct enumeration of index tuples."""
    N = sig.N
    fam1 = 2 * N + N * (N - 1) // 2
    fam2 = N * N * 2
    fam3 = N
    fam4 = sum(1 for i in range(1, N + 1) for xi in (1, -1) if 1 <= i + xi <= N) * N * 2
    fam5 = 2
    return fam1 + fam2 + fam3 + fam4 + fam5


# ---------------------------------------------------------------------------
# conversions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Scaled:
    """``sqrt(2)**sqrt2 * element``, with the syntax tree of ``element``."""

    expr: Node
    element: Element
    sqrt2: int = 0

    def render(self) -> str:
        pre = {0: "", 1: "sqrt2*", -1: "(1/sqrt2)*"}.get(self.sqrt2, f"sqrt2^{self.sqrt2}*")
        text = pretty(self.expr)
        if pre and isinstance(self.expr, (BinOp, Neg)):
            text = f"({text})"
        return pre + text


def deformed_weight_index(sig: AlgebraSignature, j: int) -> int:
    """Exponent of q in q_j: q-bar for j < m (including j = 0), q for j >= m."""
    return -1 if j < sig.m else 1


def green_from_chevalley(sig: AlgebraSignature, i: int, sign: int, deformed: bool) -> Scaled:
    """a_i^- as nested e-brackets, a_i^+ as nested f-brackets (times sqrt 2)."""
    N, m = sig.N, sig.m
    if sign < 0:
        node: Node = g("e", N)
        for j in range(N - 1, i - 1, -1):
            w = qw(deformed_weight_index(sig, j)) if deformed else None
            node = br("comm", g("e", j), node, w)
        c = (-1) ** ((m - i) * sig.grade(i))
    else:
        node = g("f", N)
        if deformed:
            for j in range(N - 1, i - 1, -1):
                node = br("comm", node, g("f", j), qw(-deformed_weight_index(sig, j)))
            c = (-1) ** (N - i + 1)
        else:
            for j in range(N - 1, i - 1, -1):
                node = br("comm", g("f", j), node)
            c = -1
    node = times(c, node)
    return Scaled(node, bind(node, sig), 1)


def L_from_k(sig: AlgebraSignature, i: int, bar: bool = False) -> Scaled:
    """L_i = k_i k_{i+1} ... k_N (and its inverse with ``bar``)."""
    node = mul(*(g("kb" if bar else "k", j) for j in range(i, sig.N + 1)))
    return Scaled(node, bind(node, sig), 0)


def chevalley_from_green(sig: AlgebraSignature, which: str, i: int, deformed: bool) -> Scaled:
    """h_i / e_i / f_i (classical) or k_i / kb_i / e_i / f_i (deformed) via Green generators."""
    N = sig.N
    half = Fraction(1, 2)
    if which == "e" and i == N:
        node, s2 = g("a-", N), -1
    elif which == "f" and i == N:
        node, s2 = Neg(g("a+", N)), -1
    elif which == "h":
        if deformed:
            raise ValueError("h_i only exists in the classical algebra; use k_i")
        if i == N:
            node = times(-half, br("super", g("a-", N), g("a+", N)))
        else:
            node = sub(times(half, br("super", g("a-", i + 1), g("a+", i + 1))),
                       times(half, br("super", g("a-", i), g("a+", i))))
        s2 = 0
    elif which in ("k", "kb"):
        if not deformed:
            raise ValueError("k_i only exists in the deformed algebra; use h_i")
        bar = which == "kb"
        L, Lb = ("Lb", "L") if bar else ("L", "Lb")
        node = g(L, N) if i == N else mul(g(L, i), g(Lb, i + 1))
        s2 = 0
    elif which == "e":
        inner = br("super", g("a-", i), g("a+", i + 1))
        node = times(half, mul(g("Lb", i + 1), inner) if deformed else inner)
        s2 = 0
    elif which == "f":
        inner = br("super", g("a+", i), g("a-", i + 1))
        node = times(half, mul(inner, g("L", i + 1)) if deformed else inner)
        s2 = 0
    else:
        raise ValueError(f"unknown Chevalley generator kind {which!r}")
    return Scaled(node, bind(node, sig), s2)


def green_substitution(sig: AlgebraSignature) -> dict[Letter, Scaled]:
    """Letter map a_i^+-, L_i, Lb_i -> Chevalley expressions (deformed)."""
    out: dict[Letter, Scaled] = {}
    for i in range(1, sig.N + 1):
        out[sig.letter("a-", i)] = green_from_chevalley(sig, i, -1, True)
        out[sig.letter("a+", i)] = green_from_chevalley(sig, i, 1, True)
        out[sig.letter("L", i)] = L_from_k(sig, i)
        out[sig.letter("Lb", i)] = L_from_k(sig, i, bar=True)
    return out


def substitute_scaled(parts: Iterable[tuple[Element, int]],
                      mapping: Mapping[Letter, Scaled]) -> tuple[Element, int]:
    """Substitute letters by sqrt(2)-scaled images in ``sum sqrt2**p * part``.

    Every resulting word must carry the same parity of sqrt(2) powers; the
    common factor ``sqrt2**p0`` is pulled out and ``(element, p0)`` returned.
    """
    buckets: dict[int, Element] = {}
    for part, p in parts:
        for w, c in part.terms.items():
            total = p
            prod = Element.scalar(c)
            for a in w:
                img = mapping.get(a)
                if img is None:
                    prod = prod * Element.letter(a)
                else:
                    prod = prod * img.element
                    total += img.sqrt2
            buckets[total] = buckets.get(total, Element.zero()) + prod
    buckets = {p: e for p, e in buckets.items() if e}
    if not buckets:
        return Element.zero(), 0
    if len({p % 2 for p in buckets}) > 1:
        raise ValueError("expression is not homogeneous in sqrt(2)")
    p0 = min(buckets)
    out = Element.zero()
    for p, e in buckets.items():
        out = out + e.scale(QScalar.from_int(2 ** ((p - p0) // 2)))
    return out, p0


# ---------------------------------------------------------------------------
# roots
# ---------------------------------------------------------------------------


def root_assignment(sig: AlgebraSignature) -> dict:
    """Green generator -> root table and the full root list of osp(2n+1/2m)."""
    N, m = sig.N, sig.m

    def vec(*pairs):
        v = [0] * N
        for i, c in pairs:
            v[i - 1] += c
        return tuple(v)

    gens = {}
    for i in range(1, N + 1):
        gens[f"a+{i}"] = vec((i, -1))
        gens[f"a-{i}"] = vec((i, 1))
    roots = []
    for i, j in itertools.combinations(range(1, N + 1), 2):
        for xi in (1, -1):
            for eta in (1, -1):
                roots.append(vec((i, xi), (j, eta)))
    for i in range(1, N + 1):
        for xi in (1, -1):
            roots.append(vec((i, xi)))
    for k in range(1, m + 1):
        for xi in (1, -1):
            roots.append(vec((k, 2 * xi)))
    return {"generators": gens, "roots": roots}
