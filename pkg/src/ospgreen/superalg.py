"""The free associative Z2-graded algebra over Q(q).

Words are tuples of interned :class:`Letter` objects; an :class:`Element`
is a finite map from words to nonzero :class:`~ospgreen.scalars.QScalar`
coefficients.  Letters are interned, so words hash and compare quickly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping

from .scalars import ONE, ZERO, QScalar, as_qscalar

EVEN, ODD = 0, 1

# Kind order used for word comparison: f < Cartan < e gives irreducible
# words the triangular shape (f-word)(Cartan monomial)(e-word).  Inside the
# Cartan sector kb_i and k_i are adjacent (kb_1 < k_1 < kb_2 < ...); with all
# kb below all k, completion of kb_i k_i = 1 against the sorting rules never
# terminates (kb_1 kb_2^r k_1 -> kb_2^r for every r).
_KIND_RANK = {
    "f": 0, "kb": 1, "k": 1, "e": 2, "h": 3,
    "a+": 4, "a-": 5, "Lb": 6, "L": 6, "x": 7,
}
# Display order only: k before kb, so k1 - kb1 prints in the usual way.
_DISPLAY_RANK = {"f": 0, "k": 1, "kb": 2, "e": 3, "h": 4, "a+": 5, "a-": 6, "L": 7, "Lb": 8, "x": 9}
KINDS = tuple(_KIND_RANK)


@dataclass(frozen=True)
class AlgebraSignature:
    """The pair (m, n) labelling osp(2n+1/2m); ``N = m + n``."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError(f"need m >= 1 and n >= 1, got m={self.m}, n={self.n}")

    @property
    def N(self) -> int:
        return self.m + self.n

    def grade(self, i: int) -> int:
        """The grading <i>: odd for i <= m, even otherwise (also for i = N + 1)."""
        return ODD if 1 <= i <= self.m else EVEN

    def letter(self, kind: str, i: int) -> "Letter":
        if not 1 <= i <= self.N:
            raise IndexError(f"generator {kind}{i}: index out of range 1..{self.N}")
        if kind in ("e", "f"):
            par = ODD if i == self.m else EVEN
        elif kind in ("a+", "a-"):
            par = self.grade(i)
        elif kind in ("k", "kb", "h", "L", "Lb"):
            par = EVEN
        else:
            raise ValueError(f"unknown generator kind {kind!r}")
        return Letter.get(kind, i, par)

    def gen(self, kind: str, i: int) -> "Element":
        return Element.letter(self.letter(kind, i))

    def __str__(self):
        return f"(m={self.m}, n={self.n})"


class Letter:
    """An interned generator symbol with a parity."""

    __slots__ = ("kind", "index", "parity", "name", "key", "display_key", "__weakref__")
    _cache: dict = {}

    def __init__(self, kind: str, index: int, parity: int, name: str):
        self.kind = kind
        self.index = index
        self.parity = parity
        self.name = name
        self.key = (_KIND_RANK[kind], index, int(kind in ("k", "L")), name)
        self.display_key = (_DISPLAY_RANK[kind], index, name)

    @classmethod
    def get(cls, kind: str, index: int, parity: int, name: str | None = None) -> "Letter":
        if name is None:
            name = f"{kind}{index}"
        k = (kind, index, parity, name)
        out = cls._cache.get(k)
        if out is None:
            out = cls._cache[k] = cls(kind, index, parity, name)
        return out

    @classmethod
    def abstract(cls, name: str, parity: int) -> "Letter":
        return cls.get("x", 0, parity, name)

    def __reduce__(self):
        # keep interning across pickling (worker processes)
        return (Letter.get, (self.kind, self.index, self.parity, self.name))

    @property
    def is_cartan(self) -> bool:
        return self.kind in ("k", "kb")

    def __lt__(self, other: "Letter"):
        return self.key < other.key

    def __repr__(self):
        return self.name


Word = tuple  # tuple[Letter, ...]


def word_parity(w: Word) -> int:
    p = 0
    for a in w:
        p ^= a.parity
    return p


def word_key(w: Word):
    """Total order on words: length first, then letters left to right."""
    return (len(w), tuple(a.key for a in w))


def render_word(w: Word) -> str:
    return "*".join(a.name for a in w) if w else "1"


class Element:
    """A finite formal sum of words with nonzero Q(q) coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, QScalar] | None = None):
        self.terms: dict[Word, QScalar] = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def _raw(cls, terms: dict) -> "Element":
        out = cls.__new__(cls)
        out.terms = terms
        return out

    @classmethod
    def zero(cls) -> "Element":
        return cls._raw({})

    @classmethod
    def one(cls) -> "Element":
        return cls._raw({(): ONE})

    @classmethod
    def scalar(cls, c) -> "Element":
        c = as_qscalar(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def letter(cls, a: Letter) -> "Element":
        return cls._raw({(a,): ONE})

    @classmethod
    def word(cls, w: Iterable[Letter], c=ONE) -> "Element":
        c = as_qscalar(c)
        return cls._raw({tuple(w): c} if c else {})

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Word, QScalar]]:
        return iter(self.terms.items())

    def sorted_terms(self, reverse: bool = False) -> list[tuple[Word, QScalar]]:
        return sorted(self.terms.items(), key=lambda t: word_key(t[0]), reverse=reverse)

    def coefficient(self, w: Word) -> QScalar:
        return self.terms.get(tuple(w), ZERO)

    def max_degree(self, weight: Callable[[Letter], int] | None = None) -> int:
        if not self.terms:
            return 0
        if weight is None:
            return max(len(w) for w in self.terms)
        return max(sum(weight(a) for a in w) for w in self.terms)

    def letters(self) -> set[Letter]:
        return {a for w in self.terms for a in w}

    def parity(self) -> str:
        """'even', 'odd' or 'mixed'; the zero element counts as even."""
        ps = {word_parity(w) for w in self.terms}
        if not ps or ps == {EVEN}:
            return "even"
        if ps == {ODD}:
            return "odd"
        return "mixed"

    def homogeneous_parts(self) -> dict[int, "Element"]:
        parts: dict[int, dict] = {}
        for w, c in self.terms.items():
            parts.setdefault(word_parity(w), {})[w] = c
        return {p: Element._raw(t) for p, t in parts.items()}

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _lift(x) -> "Element":
        if isinstance(x, Element):
            return x
        return Element.scalar(x)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            if s is None:
                out[w] = c
            else:
                s = s + c
                if s:
                    out[w] = s
                else:
                    del out[w]
        return Element._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Element._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "Element":
        c = as_qscalar(c)
        if not c:
            return Element.zero()
        if c.is_one():
            return self
        return Element._raw({w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Element):
            return self.scale(other)
        return multiply(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        return self.scale(as_qscalar(1) / as_qscalar(other))

    def __pow__(self, k: int):
        out = Element.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Element):
            other = Element.scalar(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- substitution -----------------------------------------------------

    def substitute(self, mapping: Mapping[Letter, "Element"]) -> "Element":
        """Replace letters by elements (letters not in ``mapping`` are kept)."""
        acc: dict[Word, QScalar] = {}
        cache: dict[Letter, Element] = {}
        for w, c in self.terms.items():
            prod = Element.scalar(c)
            for a in w:
                img = cache.get(a)
                if img is None:
                    img = cache[a] = mapping.get(a) or Element.letter(a)
                prod = multiply(prod, img)
            _accumulate(acc, prod.terms)
        return Element._raw(acc)

    # -- rendering --------------------------------------------------------

    def render(self) -> str:
        """Readable text; terms sharing a denominator are grouped over it."""
        if not self.terms:
            return "0"
        terms = sorted(self.terms.items(), key=lambda t: (len(t[0]), [a.display_key for a in t[0]]))
        groups: dict = {}
        for w, c in terms:
            groups.setdefault(tuple(int(x) for x in c.den.coeffs()), []).append((w, c))
        parts: list[str] = []
        for w, c in groups.pop((1,), []):
            parts.append(_term_text(w, c, first=not parts))
        for group in groups.values():
            den = _balanced(group[0][1].den)
            inner = Element._raw({w: c * den for w, c in group})
            n, d = inner.render(), den.render()
            neg = n.startswith("-") and " " not in n
            if neg:
                n = n[1:]
            text = (f"({n})" if " " in n else n) + "/" + (f"({d})" if " " in d else d)
            if parts:
                parts.append(("- " if neg else "+ ") + text)
            else:
                parts.append(("-" if neg else "") + text)
        return " ".join(parts)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Element({self.render()})"


def _term_text(w: Word, c: QScalar, first: bool) -> str:
    neg = False
    text = c.render()
    if c.is_laurent() and text.startswith("-") and " " not in text:
        neg, text = True, text[1:]
    elif " " in text:
        text = f"({text})"
    if w:
        body = render_word(w) if text == "1" else f"{text}*{render_word(w)}"
    else:
        body = text
    if first:
        return f"-{body}" if neg else body
    return f"- {body}" if neg else f"+ {body}"


def _balanced(d) -> QScalar:
    """The polynomial ``d`` shifted to be as symmetric in q, q^-1 as possible."""
    return QScalar(d, shift=-(d.degree() // 2))


def _accumulate(acc: dict, terms: Mapping[Word, QScalar], scale: QScalar | None = None) -> None:
    for w, c in terms.items():
        if scale is not None:
            c = c * scale
        s = acc.get(w)
        if s is None:
            acc[w] = c
        else:
            s = s + c
            if s:
                acc[w] = s
            else:
                del acc[w]


def multiply(x: Element, y: Element) -> Element:
    acc: dict[Word, QScalar] = {}
    for u, a in x.terms.items():
        for v, b in y.terms.items():
            w = u + v
            c = a * b
            s = acc.get(w)
            if s is None:
                acc[w] = c
            else:
                s = s + c
                if s:
                    acc[w] = s
                else:
                    del acc[w]
    return Element._raw(acc)


def bracket(kind: str, x: Element, y: Element, w=ONE) -> Element:
    """Weighted brackets: ``comm`` xy - w yx, ``anti`` xy + w yx,
    ``super`` xy - (-1)^(|x||y|) w yx.

    The super bracket is extended bilinearly over the homogeneous
    components of inhomogeneous arguments.
    """
    w = as_qscalar(w)
    if kind == "comm":
        return multiply(x, y) - multiply(y, x).scale(w)
    if kind == "anti":
        return multiply(x, y) + multiply(y, x).scale(w)
    if kind != "super":
        raise ValueError(f"unknown bracket kind {kind!r}")
    out = Element.zero()
    xs = x.homogeneous_parts()
    ys = y.homogeneous_parts()
    for px, xp in xs.items():
        for py, yp in ys.items():
            sign = -1 if (px and py) else 1
            out = out + multiply(xp, yp) - multiply(yp, xp).scale(w * sign)
    return out


def comm(x: Element, y: Element, w=ONE) -> Element:
    return bracket("comm", x, y, w)


def anti(x: Element, y: Element, w=ONE) -> Element:
    return bracket("anti", x, y, w)


def sbr(x: Element, y: Element, w=ONE) -> Element:
    return bracket("super", x, y, w)
