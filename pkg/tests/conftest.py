import random
from fractions import Fraction

import pytest

from ospgreen.superalg import AlgebraSignature, Element
from ospgreen.verify import rewrite_system

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def sig11():
    return AlgebraSignature(1, 1)


@pytest.fixture(scope="session")
def rs11():
    return rewrite_system(AlgebraSignature(1, 1), 12)


def random_order_reduce(x: Element, rs, rng: random.Random, limit: int = 200000) -> Element:
    """Reduce by applying a random rule at a random match until nothing matches."""
    terms = dict(x.terms)
    rules = rs.sorted_rules()
    for _ in range(limit):
        words = [w for w in terms if rs.find(w) is not None]
        if not words:
            return Element(terms)
        w = rng.choice(words)
        matches = [(p, r) for r in rules for p in range(len(w) - len(r.lhs) + 1)
                   if w[p:p + len(r.lhs)] == r.lhs]
        p, rule = rng.choice(matches)
        c = terms.pop(w)
        u, v = w[:p], w[p + len(rule.lhs):]
        for rw, d in rule.rhs.terms.items():
            nw = u + rw + v
            s = terms.get(nw)
            s = c * d if s is None else s + c * d
            if s:
                terms[nw] = s
            else:
                terms.pop(nw, None)
    raise RuntimeError("random reduction did not terminate")


def random_element(sig: AlgebraSignature, rng: random.Random, max_len: int, max_terms: int = 3) -> Element:
    letters = [sig.letter(kind, i) for kind in ("e", "f", "k", "kb") for i in range(1, sig.N + 1)]
    out = Element.zero()
    for _ in range(rng.randint(1, max_terms)):
        w = tuple(rng.choice(letters) for _ in range(rng.randint(0, max_len)))
        out = out + Element.word(w, Fraction(rng.randint(-5, 5) or 1, rng.randint(1, 4)))
    return out
