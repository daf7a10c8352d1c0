"""Exact (2n+2m+1)-dimensional matrix realization of osp(2n+1/2m).

Rows and columns carry the labels -2n, ..., -1, 0, 1, ..., 2m, stored at
positions 0 .. dim-1 in ascending label order.  An :class:`ExactMatrix`
holds ``(R + sqrt2 * S) / den`` with integer arrays ``R`` and ``S``, so
products stay in fast integer arithmetic while remaining exact.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

import numpy as np

from .presentations import (
    Scaled, cartan_matrix, chevalley_from_green, chevalley_presentation,
    green_from_chevalley, green_presentation,
)
from .scalars import Fraction, Sqrt2
from .superalg import AlgebraSignature, Element, Letter, sbr

__all__ = [
    "ExactMatrix", "GradedMatrix", "DimensionError", "basis_matrix", "supercommutator",
    "labels", "verify_classical", "CLASSICAL_FAMILIES", "in_osp", "block_pattern",
]

MAX_DIM = 25
_SAFE = 2 ** 62


class DimensionError(ValueError):
    pass


def labels(sig: AlgebraSignature) -> list[int]:
    return list(range(-2 * sig.n, 2 * sig.m + 1))


class ExactMatrix:
    """Dense square matrix over Q(sqrt 2)."""

    __slots__ = ("R", "S", "den", "n0")

    def __init__(self, R: np.ndarray, S: np.ndarray, den: int = 1, n0: int = 0):
        self.R, self.S, self.den = R, S, int(den)
        self.n0 = n0  # position of label 0
        self._normalize()

    @classmethod
    def zeros(cls, sig: AlgebraSignature) -> "ExactMatrix":
        d = 2 * sig.n + 2 * sig.m + 1
        if d > MAX_DIM:
            raise DimensionError(f"dimension {d} exceeds {MAX_DIM}; choose a smaller (m, n)")
        z = np.zeros((d, d), dtype=np.int64)
        return cls(z, z.copy(), 1, 2 * sig.n)

    @property
    def dim(self) -> int:
        return self.R.shape[0]

    def _normalize(self):
        if self.den < 0:
            self.R, self.S, self.den = -self.R, -self.S, -self.den
        g = self.den
        if g != 1:
            for arr in (self.R, self.S):
                nz = arr[arr != 0]
                if nz.size:
                    g = math.gcd(g, int(np.gcd.reduce(np.abs(nz).astype(object))))
                if g == 1:
                    break
            if g > 1:
                self.R = self.R // g
                self.S = self.S // g
                self.den //= g

    def _safe(self, other: "ExactMatrix") -> bool:
        a = max(int(np.abs(self.R).max(initial=0)), int(np.abs(self.S).max(initial=0)))
        b = max(int(np.abs(other.R).max(initial=0)), int(np.abs(other.S).max(initial=0)))
        return self.R.dtype != object and other.R.dtype != object and 4 * a * b * self.dim < _SAFE

    def _promote(self) -> "ExactMatrix":
        return ExactMatrix(self.R.astype(object), self.S.astype(object), self.den, self.n0)

    # -- entries ----------------------------------------------------------

    def pos(self, label: int) -> int:
        return label + self.n0

    def entry(self, A: int, B: int) -> Sqrt2:
        i, j = self.pos(A), self.pos(B)
        return Sqrt2(Fraction(int(self.R[i, j]), self.den), Fraction(int(self.S[i, j]), self.den))

    def set_unit(self, A: int, B: int, value: Sqrt2) -> "ExactMatrix":
        """A copy with ``value`` added at (A, B)."""
        out = self + ExactMatrix._unit(self, A, B, value)
        return out

    @staticmethod
    def _unit(like: "ExactMatrix", A: int, B: int, value: Sqrt2) -> "ExactMatrix":
        d = value.a.denominator * value.b.denominator // math.gcd(value.a.denominator, value.b.denominator)
        R = np.zeros_like(like.R)
        S = np.zeros_like(like.S)
        i, j = like.pos(A), like.pos(B)
        R[i, j] = int(value.a * d)
        S[i, j] = int(value.b * d)
        return ExactMatrix(R, S, d, like.n0)

    def nonzero_entries(self) -> list[tuple[int, int, str]]:
        out = []
        for i, j in zip(*np.nonzero((self.R != 0) | (self.S != 0))):
            out.append((int(i) - self.n0, int(j) - self.n0, str(self.entry(int(i) - self.n0, int(j) - self.n0))))
        return out

    def is_zero(self) -> bool:
        return not (self.R.any() or self.S.any())

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if other.den == self.den:
            return ExactMatrix(self.R + other.R, self.S + other.S, self.den, self.n0)
        l = self.den * other.den // math.gcd(self.den, other.den)
        a, b = l // self.den, l // other.den
        return ExactMatrix(self.R * a + other.R * b, self.S * a + other.S * b, l, self.n0)

    def __neg__(self):
        return ExactMatrix(-self.R, -self.S, self.den, self.n0)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def scale(self, c) -> "ExactMatrix":
        """Multiply by a rational or a :class:`Sqrt2` scalar."""
        if not isinstance(c, Sqrt2):
            c = Sqrt2(c)
        da, db = c.a.denominator, c.b.denominator
        d = da * db // math.gcd(da, db)
        ia, ib = int(c.a * d), int(c.b * d)
        R = self.R * ia + 2 * ib * self.S
        S = self.S * ia + ib * self.R
        return ExactMatrix(R, S, self.den * d, self.n0)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        x, y = (self, other) if self._safe(other) else (self._promote(), other._promote())
        R = x.R @ y.R + 2 * (x.S @ y.S)
        S = x.R @ y.S + x.S @ y.R
        return ExactMatrix(R, S, x.den * y.den, self.n0)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.den == other.den and np.array_equal(self.R, other.R)
                and np.array_equal(self.S, other.S))

    __hash__ = None

    def __repr__(self):
        return f"ExactMatrix({self.nonzero_entries()})"


@dataclass(frozen=True)
class GradedMatrix:
    matrix: ExactMatrix
    parity: int

    def __add__(self, other: "GradedMatrix") -> "GradedMatrix":
        if self.parity != other.parity and not (self.matrix.is_zero() or other.matrix.is_zero()):
            raise ValueError("adding matrices of different parity")
        return GradedMatrix(self.matrix + other.matrix, self.parity if not self.matrix.is_zero() else other.parity)

    def __sub__(self, other: "GradedMatrix") -> "GradedMatrix":
        return self + GradedMatrix(-other.matrix, other.parity)

    def scale(self, c) -> "GradedMatrix":
        return GradedMatrix(self.matrix.scale(c), self.parity)


def supercommutator(x: GradedMatrix, y: GradedMatrix) -> GradedMatrix:
    """[[x, y]] = xy - (-1)^(|x||y|) yx."""
    xy = x.matrix @ y.matrix
    yx = y.matrix @ x.matrix
    out = xy + yx if (x.parity and y.parity) else xy - yx
    return GradedMatrix(out, x.parity ^ y.parity)


def basis_matrix(sig: AlgebraSignature, i: int, sign: int) -> GradedMatrix:
    """a_i^sign in the defining realization: B_i for i <= m, F_{i-m} otherwise."""
    m, n = sig.m, sig.n
    if not 1 <= i <= sig.N:
        raise IndexError(f"index {i} out of range 1..{sig.N}")
    z = ExactMatrix.zeros(sig)
    r2, mr2 = Sqrt2(0, 1), Sqrt2(0, -1)
    if i <= m:
        if sign < 0:
            entries = [(0, i, r2), (i + m, 0, mr2)]
        else:
            entries = [(0, i + m, r2), (i, 0, r2)]
        parity = 1
    else:
        j = i - m
        if sign < 0:
            entries = [(-j, 0, r2), (0, -j - n, mr2)]
        else:
            entries = [(0, -j, r2), (-j - n, 0, mr2)]
        parity = 0
    for A, B, v in entries:
        z = z.set_unit(A, B, v)
    return GradedMatrix(z, parity)


# ---------------------------------------------------------------------------
# block structure
# ---------------------------------------------------------------------------


def _blocks(sig: AlgebraSignature) -> dict[str, list[int]]:
    n, m = sig.n, sig.m
    return {
        "O1": [-j for j in range(1, n + 1)],
        "O2": [-j - n for j in range(1, n + 1)],
        "Z": [0],
        "S1": list(range(1, m + 1)),
        "S2": [i + m for i in range(1, m + 1)],
    }


def _sub(M: ExactMatrix, rows: list[int], cols: list[int]) -> list[list[Sqrt2]]:
    return [[M.entry(r, c) for c in cols] for r in rows]


def _T(X):
    return [list(r) for r in zip(*X)] if X and X[0] else [[] for _ in range(len(X[0]) if X else 0)]


def _eq(X, Y, sign: int = 1) -> bool:
    return all(x == sign * y for rx, ry in zip(X, Y) for x, y in zip(rx, ry))


def in_osp(M: ExactMatrix, sig: AlgebraSignature) -> bool:
    """Whether ``M`` has the block form of a general osp(2n+1/2m) matrix."""
    b = _blocks(sig)
    blk = {(r, c): _sub(M, b[r], b[c]) for r in b for c in b}
    a = blk["O1", "O1"]
    checks = [
        _eq(blk["O1", "O2"], _T(blk["O1", "O2"]), -1),
        _eq(blk["O2", "O1"], _T(blk["O2", "O1"]), -1),
        _eq(blk["O2", "O2"], _T(a), -1),
        _eq(blk["Z", "O1"], _T(blk["O2", "Z"]), -1),
        _eq(blk["Z", "O2"], _T(blk["O1", "Z"]), -1),
        blk["Z", "Z"][0][0] == 0,
        _eq(blk["S1", "O1"], _T(blk["O2", "S2"])),
        _eq(blk["S1", "O2"], _T(blk["O1", "S2"])),
        _eq(blk["S1", "Z"], _T(blk["Z", "S2"])),
        _eq(blk["S1", "S2"], _T(blk["S1", "S2"])),
        _eq(blk["S2", "O1"], _T(blk["O2", "S1"]), -1),
        _eq(blk["S2", "O2"], _T(blk["O1", "S1"]), -1),
        _eq(blk["S2", "Z"], _T(blk["Z", "S1"]), -1),
        _eq(blk["S2", "S1"], _T(blk["S2", "S1"])),
        _eq(blk["S2", "S2"], _T(blk["S1", "S1"]), -1),
    ]
    return all(checks)


def block_pattern(M: ExactMatrix, sig: AlgebraSignature) -> set[str]:
    """Which of 'even', 'odd', 'L' (the span of the a's) ``M`` fits."""
    orth = set(range(-2 * sig.n, 1))
    out = set()
    nz = [(A, B) for A, B, _ in M.nonzero_entries()]
    if all((A in orth) == (B in orth) for A, B in nz):
        out.add("even")
    if all((A in orth) != (B in orth) for A, B in nz):
        out.add("odd")
    if all((A == 0) != (B == 0) for A, B in nz):
        out.add("L")
    return out


# ---------------------------------------------------------------------------
# evaluation of free-algebra elements
# ---------------------------------------------------------------------------


class Realization:
    """Letters of the classical algebras realized as matrices."""

    def __init__(self, sig: AlgebraSignature):
        self.sig = sig
        self.a: dict[tuple[int, int], GradedMatrix] = {
            (i, s): basis_matrix(sig, i, s) for i in range(1, sig.N + 1) for s in (1, -1)
        }
        self.letters: dict[Letter, GradedMatrix] = {}
        for (i, s), M in self.a.items():
            self.letters[sig.letter("a+" if s > 0 else "a-", i)] = M
        for kind in ("h", "e", "f"):
            for i in range(1, sig.N + 1):
                conv = chevalley_from_green(sig, kind, i, deformed=False)
                self.letters[sig.letter(kind, i)] = self.evaluate_scaled(conv)

    def evaluate(self, el: Element, extra: Mapping[Letter, GradedMatrix] | None = None) -> ExactMatrix:
        out = ExactMatrix.zeros(self.sig)
        table = dict(self.letters)
        if extra:
            table.update(extra)
        ident = _identity(self.sig)
        for w, c in el.terms.items():
            M = ident
            for a in w:
                M = M @ table[a].matrix
            out = out + M.scale(c.to_fraction())
        return out

    def evaluate_scaled(self, s: Scaled) -> GradedMatrix:
        M = self.evaluate(s.element)
        if s.sqrt2:
            M = M.scale(_root2_power(s.sqrt2))
        return GradedMatrix(M, 1 if s.element.parity() == "odd" else 0)


def _root2_power(p: int) -> Sqrt2:
    out = Sqrt2(1)
    step = Sqrt2(0, 1) if p > 0 else Sqrt2(0, Fraction(1, 2))
    for _ in range(abs(p)):
        out = out * step
    return out


def _identity(sig: AlgebraSignature) -> ExactMatrix:
    d = 2 * sig.n + 2 * sig.m + 1
    return ExactMatrix(np.eye(d, dtype=np.int64), np.zeros((d, d), dtype=np.int64), 1, 2 * sig.n)


# ---------------------------------------------------------------------------
# classical verification
# ---------------------------------------------------------------------------

CLASSICAL_FAMILIES = ("span", "triple-bracket", "pair-bracket", "triple-relations", "parabose", "parafermi", "green-relations", "cartan-kac", "serre", "green-from-chevalley")


@dataclass
class InstanceResult:
    key: str
    ok: bool
    lhs: ExactMatrix | None = None
    rhs: ExactMatrix | None = None


def _pm(s: int) -> str:
    return "+" if s > 0 else "-"


def _eps(s: int, grade: int) -> int:
    """s ** <k> for s = +-1."""
    return s if grade else 1


def _family_triple_bracket(R: Realization) -> Iterable[tuple[str, ExactMatrix, ExactMatrix]]:
    sig, a = R.sig, R.a
    N, gr = sig.N, sig.grade
    z = ExactMatrix.zeros(sig)
    for i, j, k in itertools.product(range(1, N + 1), repeat=3):
        for xi, eta, ep in itertools.product((1, -1), repeat=3):
            lhs = supercommutator(supercommutator(a[i, xi], a[j, eta]), a[k, ep]).matrix
            rhs = z
            if j == k and ep == -eta:
                rhs = rhs + a[i, xi].matrix.scale(2 * _eps(ep, gr(k)))
            if i == k and ep == -xi:
                sgn = -1 if (gr(j) and gr(k)) else 1
                rhs = rhs - a[j, eta].matrix.scale(2 * _eps(ep, gr(k)) * sgn)
            yield f"[{i},{j},{k};{_pm(xi)}{_pm(eta)}{_pm(ep)}]", lhs, rhs


def _family_pair_bracket(R: Realization) -> Iterable[tuple[str, ExactMatrix, ExactMatrix]]:
    sig, a = R.sig, R.a
    N, gr = sig.N, sig.grade
    z = ExactMatrix.zeros(sig)
    pair = {}
    for i, j in itertools.product(range(1, N + 1), repeat=2):
        for xi, eta in itertools.product((1, -1), repeat=2):
            pair[i, xi, j, eta] = supercommutator(a[i, xi], a[j, eta])
    for i, j, k, l in itertools.product(range(1, N + 1), repeat=4):
        for xi, eta, ep, ph in itertools.product((1, -1), repeat=4):
            lhs = supercommutator(pair[i, xi, j, eta], pair[k, ep, l, ph]).matrix
            rhs = z
            jk = -1 if (gr(j) and gr(k)) else 1
            if j == k and ep == -eta:
                rhs = rhs + pair[i, xi, l, ph].matrix.scale(2 * _eps(ep, gr(k)))
            if i == k and ep == -xi:
                rhs = rhs - pair[j, eta, l, ph].matrix.scale(2 * _eps(ep, gr(k)) * jk)
            if j == l and ph == -eta:
                rhs = rhs - pair[i, xi, k, ep].matrix.scale(2 * _eps(ph, gr(l)) * jk)
            if i == l and ph == -xi:
                s = (-1) ** (gr(i) * gr(j) + gr(i) * gr(k))
                rhs = rhs + pair[j, eta, k, ep].matrix.scale(2 * _eps(ph, gr(l)) * s)
            yield f"[{i},{j},{k},{l};{_pm(xi)}{_pm(eta)}{_pm(ep)}{_pm(ph)}]", lhs, rhs


def _family_triple_relations(R: Realization) -> Iterable[tuple[str, ExactMatrix, ExactMatrix]]:
    """The triple-bracket relations expanded in the free algebra, then evaluated."""
    sig = R.sig
    N, gr = sig.N, sig.grade
    z = ExactMatrix.zeros(sig)

    def A(s, i):
        return sig.gen("a+" if s > 0 else "a-", i)

    for i, j, k in itertools.product(range(1, N + 1), repeat=3):
        for xi, eta, ep in itertools.product((1, -1), repeat=3):
            rel = sbr(sbr(A(xi, i), A(eta, j)), A(ep, k))
            if j == k and ep == -eta:
                rel = rel - A(xi, i).scale(2 * _eps(ep, gr(k)))
            if i == k and ep == -xi:
                rel = rel + A(eta, j).scale(2 * _eps(ep, gr(k)) * (-1 if (gr(j) and gr(k)) else 1))
            yield f"[{i},{j},{k};{_pm(xi)}{_pm(eta)}{_pm(ep)}]", R.evaluate(rel), z


def _family_parabose(R: Realization) -> Iterable[tuple[str, ExactMatrix, ExactMatrix]]:
    sig, a = R.sig, R.a
    z = ExactMatrix.zeros(sig)
    for i, j, k in itertools.product(range(1, sig.m + 1), repeat=3):
        for xi, eta, ep in itertools.product((1, -1), repeat=3):
            Bi, Bj, Bk = a[i, xi].matrix, a[j, eta].matrix, a[k, ep].matrix
            ac = Bi @ Bj + Bj @ Bi
            lhs = ac @ Bk - Bk @ ac
            rhs = z
            if j == k and ep == -eta:
                rhs = rhs + Bi.scale(2 * ep)
            if i == k and ep == -xi:
                rhs = rhs + Bj.scale(2 * ep)
            yield f"[{i},{j},{k};{_pm(xi)}{_pm(eta)}{_pm(ep)}]", lhs, rhs


def _family_parafermi(R: Realization) -> Iterable[tuple[str, ExactMatrix, ExactMatrix]]:
    sig, a = R.sig, R.a
    m = sig.m
    z = ExactMatrix.zeros(sig)
    for i, j, k in itertools.product(range(1, sig.n + 1), repeat=3):
        for xi, eta, ep in itertools.product((1, -1), repeat=3):
            Fi, Fj, Fk = a[i + m, xi].matrix, a[j + m, eta].matrix, a[k + m, ep].matrix
            c = Fi @ Fj - Fj @ Fi
            lhs = c @ Fk - Fk @ c
            rhs = z
            if j == k and ep == -eta:
                rhs = rhs + Fi.scale(2)
            if i == k and ep == -xi:
                rhs = rhs - Fj.scale(2)
            yield f"[{i},{j},{k};{_pm(xi)}{_pm(eta)}{_pm(ep)}]", lhs, rhs


def _relations_family(R: Realization, relations) -> Iterable[tuple[str, ExactMatrix, ExactMatrix]]:
    z = ExactMatrix.zeros(R.sig)
    for rel in relations:
        yield rel.name, R.evaluate(rel.element), z


def _family_green_relations(R):
    return _relations_family(R, green_presentation(R.sig, deformed=False).relations)


def _family_cartan_kac(R):
    P = chevalley_presentation(R.sig, deformed=False)
    return _relations_family(R, [r for r in P.relations if r.name.startswith("CK-")])


def _family_serre(R):
    P = chevalley_presentation(R.sig, deformed=False)
    return _relations_family(R, [r for r in P.relations if "serre" in r.name])


def _family_green_from_chevalley(R: Realization) -> Iterable[tuple[str, ExactMatrix, ExactMatrix]]:
    """a_i^+- rebuilt from e, f (themselves built from the a's) equals a_i^+-."""
    sig = R.sig
    for i in range(1, sig.N + 1):
        for s in (1, -1):
            conv = green_from_chevalley(sig, i, s, deformed=False)
            yield f"a{_pm(s)}{i}", R.evaluate_scaled(conv).matrix, R.a[i, s].matrix


def _family_span(R: Realization) -> Iterable[tuple[str, ExactMatrix, ExactMatrix]]:
    """Closure: every triple bracket lies in the span of the a's, and the
    a's together with their pairwise brackets span a space of dimension
    dim osp(2n+1/2m)."""
    sig, a = R.sig, R.a
    N = sig.N
    a_vecs = [_vec(a[k].matrix) for k in sorted(a)]
    pairs = [supercommutator(a[i, s], a[j, t]).matrix
             for i, j in itertools.product(range(1, N + 1), repeat=2)
             for s, t in itertools.product((1, -1), repeat=2)]
    span_rank = _rank(a_vecs + [_vec(p) for p in pairs])
    expected = _osp_dim(sig)
    z = ExactMatrix.zeros(sig)
    ok = z if span_rank == expected else z.set_unit(0, 0, Sqrt2(1))
    yield f"span-dim={span_rank}/expected={expected}", ok, z
    base_rank = _rank(a_vecs)
    for i, j, k in itertools.product(range(1, N + 1), repeat=3):
        for xi, eta, ep in itertools.product((1, -1), repeat=3):
            t = supercommutator(supercommutator(a[i, xi], a[j, eta]), a[k, ep]).matrix
            r = _rank(a_vecs + [_vec(t)])
            bad = z if r == base_rank else z.set_unit(0, 0, Sqrt2(1))
            yield f"[{i},{j},{k};{_pm(xi)}{_pm(eta)}{_pm(ep)}]", bad, z


def _osp_dim(sig: AlgebraSignature) -> int:
    so = (2 * sig.n + 1) * (2 * sig.n) // 2
    sp = sig.m * (2 * sig.m + 1)
    odd = (2 * sig.n + 1) * 2 * sig.m
    return so + sp + odd


def _vec(M: ExactMatrix) -> list[Sqrt2]:
    d = M.dim
    return [Sqrt2(Fraction(int(M.R[i, j]), M.den), Fraction(int(M.S[i, j]), M.den))
            for i in range(d) for j in range(d)]


def _rank(vectors: list[list[Sqrt2]]) -> int:
    """Rank over Q(sqrt 2) by exact Gaussian elimination."""
    rows = [list(v) for v in vectors if any(v)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col] / p
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


_FAMILIES: dict[str, Callable[[Realization], Iterable]] = {
    "span": _family_span, "triple-bracket": _family_triple_bracket, "pair-bracket": _family_pair_bracket, "triple-relations": _family_triple_relations,
    "parabose": _family_parabose, "parafermi": _family_parafermi, "green-relations": _family_green_relations,
    "cartan-kac": _family_cartan_kac, "serre": _family_serre, "green-from-chevalley": _family_green_from_chevalley,
}


def verify_classical(sig: AlgebraSignature, family: str) -> dict:
    """Check every instance of a classical relation family in the matrix realization.

    Returns a report dict with status ``Proved`` (every instance exact) or
    ``Refuted`` (with the first failing instance as witness).
    """
    if family not in _FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {', '.join(CLASSICAL_FAMILIES)}")
    R = Realization(sig)
    count = 0
    failures = []
    for key, lhs, rhs in _FAMILIES[family](R):
        count += 1
        if not (lhs - rhs).is_zero():
            failures.append((key, lhs, rhs))
    report = {
        "suite": "classical",
        "family": family,
        "signature": {"m": sig.m, "n": sig.n},
        "labels": labels(sig),
        "instances": count,
        "failed": len(failures),
        "status": "Proved" if not failures else "Refuted",
    }
    if failures:
        key, lhs, rhs = failures[0]
        report["witness"] = {
            "instance": key,
            "lhs": [list(t) for t in lhs.nonzero_entries()],
            "rhs": [list(t) for t in rhs.nonzero_entries()],
        }
        report["failed_instances"] = [f[0] for f in failures]
    return report
