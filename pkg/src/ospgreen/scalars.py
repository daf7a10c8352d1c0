"""Exact coefficient arithmetic.

Three rings are used throughout the package:

* ``Fraction`` from the standard library for plain rationals,
* :class:`Sqrt2` for the quadratic extension ``Q(sqrt 2)`` used by the
  matrix realization,
* :class:`QScalar` for the field ``Q(q)`` of rational functions in the
  deformation parameter.

``QScalar`` keeps a canonical form so that equality (and in particular
"is zero") is decided structurally.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

from flint import fmpz_poly

__all__ = ["Fraction", "Sqrt2", "QScalar", "PoleError", "as_qscalar", "ZERO", "ONE", "Q", "QBAR"]


class PoleError(ZeroDivisionError):
    """Raised when a q-scalar is evaluated at a zero of its denominator."""


# ---------------------------------------------------------------------------
# Q(sqrt 2)
# ---------------------------------------------------------------------------


class Sqrt2:
    """The number ``a + b*sqrt(2)`` with rational ``a`` and ``b``."""

    __slots__ = ("a", "b")

    def __init__(self, a: Union[int, Fraction] = 0, b: Union[int, Fraction] = 0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @classmethod
    def root2(cls) -> "Sqrt2":
        return cls(0, 1)

    @staticmethod
    def _lift(x) -> "Sqrt2":
        if isinstance(x, Sqrt2):
            return x
        if isinstance(x, (int, Rational)):
            return Sqrt2(x)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Sqrt2(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Sqrt2(-self.a, -self.b)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Sqrt2(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Sqrt2(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conjugate(self) -> "Sqrt2":
        return Sqrt2(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - 2 * self.b * self.b

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 2)")
        t = self * o.conjugate()
        return Sqrt2(t.a / n, t.b / n)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"Sqrt2({self.a}, {self.b})"

    def __str__(self):
        if not self.b:
            return str(self.a)
        rt = "sqrt2" if self.b == 1 else ("-sqrt2" if self.b == -1 else f"{self.b}*sqrt2")
        if not self.a:
            return rt
        if rt.startswith("-"):
            return f"{self.a} - {rt[1:]}"
        return f"{self.a} + {rt}"


# ---------------------------------------------------------------------------
# Q(q)
# ---------------------------------------------------------------------------

_ONE = fmpz_poly([1])
_ZERO = fmpz_poly([])


def _valuation(p: fmpz_poly) -> int:
    for i, c in enumerate(p.coeffs()):
        if c:
            return i
    return 0


def _strip_low(p: fmpz_poly) -> tuple[fmpz_poly, int]:
    v = _valuation(p)
    if v:
        p = fmpz_poly(p.coeffs()[v:])
    return p, v


class QScalar:
    """An element ``q**shift * num / den`` of the field Q(q).

    Canonical form: ``num`` and ``den`` are integer polynomials with nonzero
    constant terms, coprime over Z (content included), and ``den`` has a
    positive leading coefficient.  Zero is ``num = 0, den = 1, shift = 0``.
    """

    __slots__ = ("num", "den", "shift", "_hash")

    def __init__(self, num: fmpz_poly, den: fmpz_poly = _ONE, shift: int = 0, *, _canonical: bool = False):
        if _canonical:
            self.num, self.den, self.shift = num, den, shift
        else:
            self.num, self.den, self.shift = self._canon(num, den, shift)
        self._hash = None

    def __reduce__(self):
        # flint polynomials do not pickle; ship integer coefficient lists
        return (_unpickle_qscalar, ([int(c) for c in self.num.coeffs()],
                                    [int(c) for c in self.den.coeffs()], self.shift))

    @staticmethod
    def _canon(num: fmpz_poly, den: fmpz_poly, shift: int):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            return _ZERO, _ONE, 0
        num, vn = _strip_low(num)
        den, vd = _strip_low(den)
        shift += vn - vd
        if not den.is_one():
            g = num.gcd(den)
            if not g.is_one():
                num = num // g
                den = den // g
            if den.leading_coefficient() < 0:
                num, den = -num, -den
        return num, den, shift

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_int(cls, n: int) -> "QScalar":
        if n == 0:
            return ZERO
        return cls(fmpz_poly([n]), _ONE, 0, _canonical=True)

    @classmethod
    def from_fraction(cls, x) -> "QScalar":
        x = Fraction(x)
        if x.denominator == 1:
            return cls.from_int(x.numerator)
        return cls(fmpz_poly([x.numerator]), fmpz_poly([x.denominator]))

    @classmethod
    def qpow(cls, k: int) -> "QScalar":
        """The monomial ``q**k``; ``qpow(-1)`` is q-bar."""
        return cls(_ONE, _ONE, k, _canonical=True)

    @classmethod
    def laurent(cls, coeffs: dict[int, int]) -> "QScalar":
        """Build sum(c * q**k) from an exponent -> coefficient map."""
        coeffs = {k: c for k, c in coeffs.items() if c}
        if not coeffs:
            return ZERO
        lo = min(coeffs)
        dense = [0] * (max(coeffs) - lo + 1)
        for k, c in coeffs.items():
            dense[k - lo] = c
        return cls(fmpz_poly(dense), _ONE, lo)

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.shift == 0 and self.num.is_one() and self.den.is_one()

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.shift == 0 and self.num.degree() <= 0 and self.den.degree() <= 0

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a rational constant")
        if self.is_zero():
            return Fraction(0)
        return Fraction(int(self.num[0]), int(self.den[0]))

    def __bool__(self):
        return not self.num.is_zero()

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _lift(x) -> "QScalar":
        if isinstance(x, QScalar):
            return x
        if isinstance(x, int):
            return QScalar.from_int(x)
        if isinstance(x, Rational):
            return QScalar.from_fraction(x)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.is_zero():
            return o
        if o.is_zero():
            return self
        s = min(self.shift, o.shift)
        a = self.num if self.shift == s else self.num.left_shift(self.shift - s)
        b = o.num if o.shift == s else o.num.left_shift(o.shift - s)
        if self.den.is_one() and o.den.is_one():
            return QScalar(a + b, _ONE, s)
        if self.den == o.den:
            return QScalar(a + b, self.den, s)
        return QScalar(a * o.den + b * self.den, self.den * o.den, s)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero():
            return self
        return QScalar(-self.num, self.den, self.shift, _canonical=True)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.is_zero() or o.is_zero():
            return ZERO
        if self.den.is_one() and o.den.is_one():
            return QScalar(self.num * o.num, _ONE, self.shift + o.shift, _canonical=True)
        # cross-cancel keeps the products small
        g1 = self.num.gcd(o.den)
        g2 = o.num.gcd(self.den)
        num = (self.num // g1) * (o.num // g2)
        den = (self.den // g2) * (o.den // g1)
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return QScalar(num, den, self.shift + o.shift, _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> "QScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero q-scalar")
        num, den = self.den, self.num
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return QScalar(num, den, -self.shift, _canonical=True)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        if self.den.is_one() and self.num.is_one():
            return QScalar(_ONE, _ONE, self.shift * k, _canonical=True)
        return QScalar(self.num ** k, self.den ** k, self.shift * k, _canonical=True)

    def bar(self) -> "QScalar":
        """Apply the substitution q -> 1/q."""
        if self.is_zero():
            return self
        dn, dd = self.num.degree(), self.den.degree()
        num = fmpz_poly(list(reversed(self.num.coeffs())))
        den = fmpz_poly(list(reversed(self.den.coeffs())))
        return QScalar(num, den, -self.shift - dn + dd)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return self.shift == o.shift and self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shift, tuple(int(c) for c in self.num.coeffs()),
                               tuple(int(c) for c in self.den.coeffs())))
        return self._hash

    # -- evaluation -------------------------------------------------------

    def eval(self, q0) -> Fraction:
        """Exact value at the nonzero rational point ``q0``."""
        q0 = Fraction(q0)
        if q0 == 0:
            raise PoleError("q0 = 0 is not allowed (q-bar = 1/q)")
        d = _horner(self.den, q0)
        if d == 0:
            raise PoleError(f"denominator {_poly_text(self.den, 0)} vanishes at q = {q0}")
        return _horner(self.num, q0) * q0 ** self.shift / d

    # -- rendering --------------------------------------------------------

    def render(self, balanced: bool = True) -> str:
        """Text form: terms ``c*q^k`` in descending exponent order.

        With ``balanced`` the denominator is shifted to be as symmetric in
        q and q^-1 as possible, so ``q/(q^2 - 1)`` prints as
        ``1/(q - q^-1)``.
        """
        if self.is_zero():
            return "0"
        t = self.den.degree() // 2 if balanced else 0
        num = _poly_text(self.num, self.shift - t)
        if self.den.is_one():
            return num
        den = _poly_text(self.den, -t)
        if _nterms(self.num) > 1:
            num = f"({num})"
        if _nterms(self.den) > 1 or t:
            den = f"({den})"
        return f"{num}/{den}"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"QScalar({self.render()})"


def _horner(p: fmpz_poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p.coeffs()):
        acc = acc * x + int(c)
    return acc


def _nterms(p: fmpz_poly) -> int:
    return sum(1 for c in p.coeffs() if c)


def _poly_text(p: fmpz_poly, shift: int) -> str:
    terms = [(i + shift, int(c)) for i, c in enumerate(p.coeffs()) if c]
    terms.sort(reverse=True)
    out = []
    for k, c in terms:
        if k == 0:
            mono = str(abs(c))
        else:
            mono = "q" if k == 1 else f"q^{k}"
            if abs(c) != 1:
                mono = f"{abs(c)}*{mono}"
        if not out:
            out.append(mono if c > 0 else f"-{mono}")
        else:
            out.append(("+ " if c > 0 else "- ") + mono)
    return " ".join(out)


ZERO = QScalar(_ZERO, _ONE, 0, _canonical=True)
ONE = QScalar(_ONE, _ONE, 0, _canonical=True)
Q = QScalar.qpow(1)
QBAR = QScalar.qpow(-1)


def as_qscalar(x) -> QScalar:
    out = QScalar._lift(x)
    if out is NotImplemented:
        raise TypeError(f"cannot convert {x!r} to QScalar")
    return out


def _unpickle_qscalar(num: list, den: list, shift: int) -> QScalar:
    return QScalar(fmpz_poly(num), fmpz_poly(den), shift, _canonical=True)
