"""Oriented rewriting for the deformed Chevalley presentation.

Words are ordered degree-lexicographically with the letter order

    f_1 < ... < f_N  <  kb_1 < k_1 < kb_2 < k_2 < ... < k_N  <  e_1 < ... < e_N

so irreducible words have the triangular shape (f-word)(Cartan monomial)(e-word).
Completion resolves overlaps of left-hand sides (diamond lemma) up to a
bound on word length.  No rule lengthens a word, so a reduction never
leaves the length range of its input.
"""

from __future__ import annotations

import heapq
import itertools
import logging
import sys
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .presentations import Presentation, cartan_matrix
from .scalars import ONE, QScalar, Q, QBAR
from .superalg import Element, Letter, Word, render_word, word_key, word_parity

__all__ = [
    "RewriteRule", "RewriteSystem", "Verdict", "OrientationError", "CompletionError",
    "build_rules", "complete", "normal_form", "verify_identity", "default_bound",
]

log = logging.getLogger(__name__)
sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class OrientationError(ValueError):
    pass


class CompletionError(RuntimeError):
    pass


def default_bound(*elements: Element) -> int:
    """2 * (longest word in the identities) + 4."""
    return 2 * max((x.max_degree() for x in elements), default=0) + 4


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: Element
    origin: str

    def render(self) -> str:
        return f"{render_word(self.lhs)} -> {self.rhs.render()}    [{self.origin}]"


@dataclass
class Verdict:
    status: str  # Proved | Refuted | Inconclusive
    witness: Optional[Element] = None
    bound_used: int = 0
    reduction_steps: int = 0

    def to_json(self) -> dict:
        out = {"status": self.status, "bound_used": self.bound_used,
               "reduction_steps": self.reduction_steps}
        if self.witness is not None:
            out["witness"] = self.witness.render()
        return out


class RewriteSystem:
    """A set of inter-reduced rules plus the bound up to which it is closed."""

    def __init__(self, rules: Iterable[RewriteRule] = (), degree_bound: int = 0,
                 closed: bool = False, max_rules: int = 5000):
        self.rules: dict[Word, RewriteRule] = {}
        self.degree_bound = degree_bound
        self.closed_to = degree_bound if closed else -1
        # True when no overlap was skipped for exceeding the bound, i.e. the
        # rules are confluent at every degree
        self.confluent = closed
        self.max_rules = max_rules
        self._memo: dict[Word, tuple[dict, tuple]] = {}
        self._lengths: tuple[int, ...] = ()
        for r in rules:
            self._insert(r)

    # -- rule table -------------------------------------------------------

    def _insert(self, r: RewriteRule) -> None:
        self.rules[r.lhs] = r
        self._lengths = tuple(sorted({len(w) for w in self.rules}))
        self._memo.clear()

    def _remove(self, lhs: Word) -> RewriteRule:
        r = self.rules.pop(lhs)
        self._lengths = tuple(sorted({len(w) for w in self.rules}))
        self._memo.clear()
        return r

    def __len__(self):
        return len(self.rules)

    def sorted_rules(self) -> list[RewriteRule]:
        return sorted(self.rules.values(), key=lambda r: word_key(r.lhs))

    def fingerprint(self) -> str:
        import hashlib

        h = hashlib.sha256()
        for r in self.sorted_rules():
            h.update(r.render().encode())
        return h.hexdigest()[:16]

    def find(self, w: Word) -> Optional[tuple[int, RewriteRule]]:
        """Leftmost rule occurrence in ``w``."""
        n = len(w)
        rules = self.rules
        for p in range(n):
            for L in self._lengths:
                if p + L > n:
                    break
                r = rules.get(w[p:p + L])
                if r is not None:
                    return p, r
        return None

    # -- reduction --------------------------------------------------------

    def _nf_word(self, w: Word) -> dict:
        hit = self._memo.get(w)
        if hit is not None:
            return hit[0]
        found = self.find(w)
        if found is None:
            out = {w: ONE}
            children: tuple = ()
        else:
            p, rule = found
            u, v = w[:p], w[p + len(rule.lhs):]
            out = {}
            kids = []
            for rw, c in rule.rhs.terms.items():
                child = u + rw + v
                kids.append(child)
                for w2, c2 in self._nf_word(child).items():
                    s = out.get(w2)
                    t = c * c2
                    if s is None:
                        out[w2] = t
                    else:
                        s = s + t
                        if s:
                            out[w2] = s
                        else:
                            del out[w2]
            children = tuple(kids)
        self._memo[w] = (out, children)
        return out

    def reduce(self, x: Element) -> Element:
        acc: dict = {}
        for w, c in x.terms.items():
            for w2, c2 in self._nf_word(w).items():
                s = acc.get(w2)
                t = c * c2
                if s is None:
                    acc[w2] = t
                else:
                    s = s + t
                    if s:
                        acc[w2] = s
                    else:
                        del acc[w2]
        return Element._raw(acc)

    def steps(self, x: Element) -> int:
        """Number of distinct words rewritten while reducing ``x`` (memo independent)."""
        seen = set()
        stack = list(x.terms)
        count = 0
        while stack:
            w = stack.pop()
            if w in seen:
                continue
            seen.add(w)
            self._nf_word(w)
            kids = self._memo[w][1]
            if kids:
                count += 1
                stack.extend(kids)
        return count

    def trace(self, x: Element, limit: int = 10000) -> tuple[Element, list[str]]:
        """Step-by-step reduction: always rewrite the largest reducible word."""
        cur = Element(x.terms)
        lines = []
        for _ in range(limit):
            target = None
            for w, c in cur.sorted_terms(reverse=True):
                found = self.find(w)
                if found is not None:
                    target = (w, c, found)
                    break
            if target is None:
                return cur, lines
            w, c, (p, rule) = target
            u, v = w[:p], w[p + len(rule.lhs):]
            repl = Element.word(u) * rule.rhs * Element.word(v)
            lines.append(f"{render_word(w)} => {repl.render()}    by {rule.origin}")
            cur = cur - Element.word(w, c) + repl.scale(c)
        raise CompletionError("trace step limit exceeded")

    def is_irreducible(self, w: Word) -> bool:
        return self.find(w) is None

    # -- completion -------------------------------------------------------

    def add_relation(self, poly: Element, origin: str, queue: Optional[list] = None) -> Optional[RewriteRule]:
        """Reduce ``poly``; if nonzero, orient it by its leading word and insert."""
        p = self.reduce(poly)
        if p.is_zero():
            return None
        lead = max(p.terms, key=word_key)
        c = p.terms[lead]
        rhs = (p - Element.word(lead, c)).scale(-(ONE / c))
        rule = RewriteRule(lead, rhs, origin)
        self._install(rule, queue)
        return rule

    def _install(self, rule: RewriteRule, queue: Optional[list]) -> None:
        displaced = [lhs for lhs in self.rules if _contains(lhs, rule.lhs)]
        for lhs in displaced:
            old = self._remove(lhs)
            if queue is not None:
                _push(queue, len(lhs), "reinsert", (Element.word(lhs) - old.rhs, old.origin))
        if len(self.rules) >= self.max_rules:
            raise CompletionError(f"rule ceiling {self.max_rules} reached while adding {render_word(rule.lhs)}")
        self._insert(rule)
        if queue is not None:
            for other in list(self.rules.values()):
                for ov in _overlaps(rule.lhs, other.lhs):
                    _push(queue, len(ov[0]), "overlap", (rule.lhs, other.lhs) + ov)
                if other.lhs != rule.lhs:
                    for ov in _overlaps(other.lhs, rule.lhs):
                        _push(queue, len(ov[0]), "overlap", (other.lhs, rule.lhs) + ov)


_counter = itertools.count()


def _push(queue: list, degree: int, kind: str, payload) -> None:
    heapq.heappush(queue, (degree, next(_counter), kind, payload))


def _contains(big: Word, small: Word) -> bool:
    n, k = len(big), len(small)
    return any(big[i:i + k] == small for i in range(n - k + 1))


def _overlaps(u: Word, v: Word) -> list[tuple[Word, int]]:
    """Words u + v[k:] where a proper suffix of u equals a proper prefix of v.

    Returns (overlap word, length of the shared part).
    """
    out = []
    for k in range(1, min(len(u), len(v))):
        if u[-k:] == v[:k]:
            out.append((u + v[k:], k))
    return out


def complete(rs: RewriteSystem, degree_bound: Optional[int] = None, seed_polys: Iterable = ()) -> RewriteSystem:
    """Resolve every overlap of length <= ``degree_bound``; return a new system.

    Nonzero resolutions become new rules (oriented by leading word), and
    rules whose left side becomes reducible are re-queued.  Raises
    :class:`CompletionError` if the rule ceiling is hit.  Overlaps longer
    than the bound are resolved at the end without adding rules; if all of
    them resolve, the result is flagged ``confluent``.
    """
    bound = rs.degree_bound if degree_bound is None else degree_bound
    out = RewriteSystem(degree_bound=bound, max_rules=rs.max_rules)
    queue: list = []
    for r in rs.sorted_rules():
        _push(queue, len(r.lhs), "reinsert", (Element.word(r.lhs) - r.rhs, r.origin))
    for poly, origin in seed_polys:
        _push(queue, poly.max_degree(), "reinsert", (poly, origin))
    added = 0
    skipped = []
    while queue:
        degree, _, kind, payload = heapq.heappop(queue)
        if kind == "reinsert":
            poly, origin = payload
            out.add_relation(poly, origin, queue)
            continue
        if degree > bound:
            skipped.append(payload)
            continue
        diff = _resolve(out, payload)
        if diff is None or diff.is_zero():
            continue
        r1, r2 = out.rules[payload[0]], out.rules[payload[1]]
        new = out.add_relation(diff, f"overlap({r1.origin} | {r2.origin})", queue)
        if new is not None:
            added += 1
            log.debug("new rule %s", new.render())
    out.closed_to = bound
    out.confluent = all(not d for d in (_resolve(out, p) for p in skipped) if d is not None)
    log.info("completion to degree %d: %d rules (%d from overlaps)", bound, len(out), added)
    return out


def _resolve(rs: RewriteSystem, payload) -> Optional[Element]:
    """Difference of the two reductions of an overlap (None if a rule is gone)."""
    l1, l2, word, _ = payload
    r1, r2 = rs.rules.get(l1), rs.rules.get(l2)
    if r1 is None or r2 is None:
        return None
    # word = l1 + l2[k:] = l1[:-k] + l2
    left = r1.rhs * Element.word(word[len(l1):])
    right = Element.word(word[:len(word) - len(l2)]) * r2.rhs
    return rs.reduce(left - right)


# ---------------------------------------------------------------------------
# rules from the deformed Chevalley presentation
# ---------------------------------------------------------------------------


def build_rules(presentation: Presentation, degree_bound: int = 0) -> RewriteSystem:
    """Orient the Cartan-Kac relations explicitly and the Serre relations by leading word.

    The result is inter-reduced but not yet completed (see :func:`complete`).
    """
    if presentation.family != "chevalley" or not presentation.deformed:
        raise ValueError("build_rules expects the deformed Chevalley presentation")
    sig = presentation.signature
    A = cartan_matrix(sig)
    N = sig.N
    L = sig.letter
    rs = RewriteSystem(degree_bound=degree_bound)
    rules: list[RewriteRule] = []

    def qp(k):
        return QScalar.qpow(k)

    cartan = [L(kind, i) for i in range(1, N + 1) for kind in ("kb", "k")]
    for x, y in itertools.product(cartan, repeat=2):
        if x.index == y.index:
            if x is not y:
                tag = "CK-kkb" if x.kind == "k" else "CK-kbk"
                rules.append(RewriteRule((x, y), Element.one(), f"{tag}[{x.index}]"))
        elif x.key > y.key:
            tag = f"CK-kk[{y.index},{x.index}]" if x.kind == y.kind == "k" else "CK-kk(derived)"
            rules.append(RewriteRule((x, y), Element.word((y, x)), tag))
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            a = A[i - 1][j - 1]
            ki, kbi, ej, fj = L("k", i), L("kb", i), L("e", j), L("f", j)
            rules.append(RewriteRule((ej, ki), Element.word((ki, ej), qp(-a)), f"CK-ke[{i},{j}]"))
            rules.append(RewriteRule((ej, kbi), Element.word((kbi, ej), qp(a)), "CK-ke(derived)"))
            rules.append(RewriteRule((ki, fj), Element.word((fj, ki), qp(-a)), f"CK-kf[{i},{j}]"))
            rules.append(RewriteRule((kbi, fj), Element.word((fj, kbi), qp(a)), "CK-kf(derived)"))
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            ei, fj = L("e", i), L("f", j)
            sign = -1 if (ei.parity and fj.parity) else 1
            rhs = Element.word((fj, ei), sign)
            if i == j:
                rhs = rhs + (Element.letter(L("k", i)) - Element.letter(L("kb", i))).scale(ONE / (Q - QBAR))
            rules.append(RewriteRule((ei, fj), rhs, f"CK-ef[{i},{j}]"))

    for r in rules:
        _check_oriented(r)
        _check_parity(r)
        rs._insert(r)
    # cross-check: every Cartan-Kac relation of the presentation reduces to zero
    for rel in presentation.relations:
        if rel.name.startswith("CK-") and not rs.reduce(rel.element).is_zero():
            raise OrientationError(f"relation {rel.name} is not captured by the oriented rules")
    queue: list = []
    for rel in presentation.relations:
        if "-serre-" in rel.name:
            rule = rs.add_relation(rel.element, rel.name, queue)
            if rule is not None:
                _check_parity(rule)
    # re-queued displaced rules are reinserted; overlaps are left to complete()
    while queue:
        _, _, kind, payload = heapq.heappop(queue)
        if kind == "reinsert":
            rs.add_relation(payload[0], payload[1], queue)
    return rs


def _check_oriented(r: RewriteRule) -> None:
    k = word_key(r.lhs)
    for w in r.rhs.terms:
        if word_key(w) >= k:
            raise OrientationError(f"rule {r.origin}: {render_word(w)} is not below {render_word(r.lhs)}")


def _check_parity(r: RewriteRule) -> None:
    p = word_parity(r.lhs)
    if any(word_parity(w) != p for w in r.rhs.terms):
        raise OrientationError(f"rule {r.origin} does not preserve parity")


# ---------------------------------------------------------------------------
# queries
# ---------------------------------------------------------------------------


def normal_form(x: Element, rs: RewriteSystem, trace: bool = False):
    """Return ``(normal form, trace lines)``; the trace is empty unless requested."""
    if trace:
        return rs.trace(x)
    return rs.reduce(x), []


def verify_identity(lhs: Element, rhs: Element, rs: RewriteSystem) -> Verdict:
    """Proved iff lhs - rhs reduces to 0; Refuted only inside the closed range."""
    diff = lhs - rhs
    nf = rs.reduce(diff)
    steps = rs.steps(diff)
    if nf.is_zero():
        return Verdict("Proved", None, rs.closed_to, steps)
    if rs.confluent or diff.max_degree() <= rs.closed_to:
        return Verdict("Refuted", nf, rs.closed_to, steps)
    return Verdict("Inconclusive", nf, rs.closed_to, steps)
