"""Verification suites for the deformed algebra and the bracket identity.

Each suite is a list of :class:`Instance` objects (an identity ``lhs = rhs``
already pushed into Chevalley generators and stored as ``lhs - rhs``),
checked against one completed rewrite system per (signature, bound).
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .dsl import BinOp, Int, Neg, Node, QPow, bind, pretty
from .presentations import (
    Q_MINUS_QB, br, chevalley_from_green, chevalley_presentation, deformed_weight_index,
    g, green_family4, green_presentation, green_substitution, mul, sub, substitute_scaled,
    times,
)
from .rewrite import RewriteRule, RewriteSystem, Verdict, build_rules, complete, default_bound
from .scalars import QScalar
from .superalg import EVEN, ODD, AlgebraSignature, Element, Letter, sbr, comm

__all__ = [
    "Instance", "prop5_instances", "theorem_instances", "roundtrip_instances",
    "mutated_theorem_instance", "rewrite_system", "check_instance", "run_suite",
    "verify_prop5", "verify_theorem", "verify_roundtrip", "verify_bracket_identity",
    "specialize", "HypothesisError", "PARITY_TRIPLES", "run_prop6", "jacobi_check",
    "bracket_identity_sides", "run_converse", "converse_instances",
]


@dataclass(frozen=True)
class Instance:
    key: str
    family: str
    text: str
    element: Element  # lhs - rhs in Chevalley generators, up to a power of sqrt 2


def _instance(sig: AlgebraSignature, key: str, family: str, lhs: Node, rhs: Node) -> Instance:
    rel = bind(sub(lhs, rhs), sig) if not (isinstance(rhs, Int) and rhs.value == 0) else bind(lhs, sig)
    el, _ = substitute_scaled([(rel, 0)], green_substitution(sig))
    return Instance(key, family, f"{pretty(lhs)} = {pretty(rhs)}", el)


def _a(sign: int, i: int) -> Node:
    return g("a+" if sign > 0 else "a-", i)


def _w(k: int) -> Optional[Node]:
    return None if k == 0 else QPow(k)


ZERO_NODE = Int(0)


# ---------------------------------------------------------------------------
# instance builders
# ---------------------------------------------------------------------------


def prop5_instances(sig: AlgebraSignature) -> list[Instance]:
    """Brackets of e_i, f_i (i < N) with the Green generators, all index pairs."""
    N = sig.N
    qi = lambda j: deformed_weight_index(sig, j)  # exponent of q in q_j
    out = []
    for i in range(1, N):
        sgn_next = -1 if sig.grade(i + 1) else 1
        for j in range(1, N + 1):
            rhs = times(-sgn_next, mul(g("k", i), _a(1, i + 1))) if i == j else ZERO_NODE
            out.append(_instance(sig, f"e-a+[{i},{j}]", "e-a+", br("super", g("e", i), _a(1, j)), rhs))
        for j in range(1, N + 1):
            rhs = mul(_a(-1, i + 1), g("kb", i)) if i == j else ZERO_NODE
            out.append(_instance(sig, f"a--f[{i},{j}]", "a--f", br("super", _a(-1, j), g("f", i)), rhs))
        for j in range(1, N + 1):
            if i < j - 1 or i > j:
                out.append(_instance(sig, f"e-a-:far[{i},{j}]", "e-a-:far",
                                     br("super", g("e", i), _a(-1, j)), ZERO_NODE))
        out.append(_instance(sig, f"e-a-:next[{i}]", "e-a-:next",
                             br("super", g("e", i), _a(-1, i + 1), _w(qi(i))), times(sgn_next, _a(-1, i))))
        out.append(_instance(sig, f"e-a-:same[{i}]", "e-a-:same",
                             br("super", g("e", i), _a(-1, i), _w(-qi(i - 1))), ZERO_NODE))
        for j in range(1, N + 1):
            if i < j - 1 or i > j:
                out.append(_instance(sig, f"a+-f:far[{i},{j}]", "a+-f:far",
                                     br("super", _a(1, j), g("f", i)), ZERO_NODE))
        out.append(_instance(sig, f"a+-f:next[{i}]", "a+-f:next",
                             br("super", _a(1, i + 1), g("f", i), _w(-qi(i))), Neg(_a(1, i))))
        out.append(_instance(sig, f"a+-f:same[{i}]", "a+-f:same",
                             br("super", _a(1, i), g("f", i), _w(qi(i - 1))), ZERO_NODE))
    return out


def theorem_instances(sig: AlgebraSignature) -> list[Instance]:
    """Every relation of the deformed Green presentation, in Chevalley generators."""
    out = []
    for rel in green_presentation(sig, True).relations:
        family = rel.name.split("[")[0]
        el, _ = substitute_scaled([(rel.element, 0)], green_substitution(sig))
        out.append(Instance(rel.name, family, f"{rel.text} = 0", el))
    return out


def mutated_theorem_instance(sig: AlgebraSignature, family: str = "green-a-pair", i: int = 1,
                             xi: int = 1, eta: int = 1) -> Instance:
    """A Green relation with its constant 2 replaced by 3 (mutation check)."""
    if family == "green-a-pair":
        expr = BinOp("+", br("super", _a(-1, i), _a(1, i)),
                     BinOp("/", mul(Int(3), sub(g("L", i), g("Lb", i))), Q_MINUS_QB))
        key = f"mutant-a-pair[{i}]"
    elif family == "green-a-triple":
        expr = green_family4(sig, i, xi, i + xi, eta, two=3)
        key = f"mutant-a-triple[{i},{xi},{i + xi},{eta}]"
    else:
        raise ValueError(f"no mutation defined for family {family!r}")
    el, _ = substitute_scaled([(bind(expr, sig), 0)], green_substitution(sig))
    return Instance(key, family, f"{pretty(expr)} = 0", el)


def roundtrip_instances(sig: AlgebraSignature) -> list[Instance]:
    """e_i, f_i, k_i written back through the Green generators."""
    sub_map = green_substitution(sig)
    out = []
    for which in ("e", "f", "k"):
        for i in range(1, sig.N + 1):
            conv = chevalley_from_green(sig, which, i, deformed=True)
            el, _ = substitute_scaled([(sig.gen(which, i), 0), (-conv.element, conv.sqrt2)], sub_map)
            text = f"{which}{i} = {conv.render()}"
            out.append(Instance(f"roundtrip-{which}[{i}]", f"roundtrip-{which}", text, el))
    return out


SUITES = {"prop5": prop5_instances, "theorem": theorem_instances, "roundtrip": roundtrip_instances}


# ---------------------------------------------------------------------------
# rewrite systems
# ---------------------------------------------------------------------------

_SYSTEMS: dict[tuple[int, int, int], RewriteSystem] = {}


def rewrite_system(sig: AlgebraSignature, bound: int) -> RewriteSystem:
    """The completed system for ``sig`` closed to ``bound`` (cached)."""
    key = (sig.m, sig.n, bound)
    rs = _SYSTEMS.get(key)
    if rs is None:
        rs = _SYSTEMS[key] = complete(build_rules(chevalley_presentation(sig, True)), bound)
    return rs


def specialize(rs: RewriteSystem, q0: Fraction) -> RewriteSystem:
    """The same rules with q evaluated at ``q0`` (raises PoleError on a pole)."""
    out = RewriteSystem(degree_bound=rs.degree_bound, max_rules=rs.max_rules)
    for r in rs.sorted_rules():
        out._insert(RewriteRule(r.lhs, _eval_element(r.rhs, q0), r.origin))
    out.closed_to, out.confluent = rs.closed_to, rs.confluent
    return out


def _eval_element(x: Element, q0: Fraction) -> Element:
    return Element({w: QScalar.from_fraction(c.eval(q0)) for w, c in x.terms.items()})


# ---------------------------------------------------------------------------
# running suites
# ---------------------------------------------------------------------------


def check_instance(inst: Instance, rs: RewriteSystem, q0: Optional[Fraction] = None,
                   trace: bool = False) -> dict:
    from .rewrite import verify_identity

    el = inst.element if q0 is None else _eval_element(inst.element, q0)
    verdict = verify_identity(el, Element.zero(), rs)
    out = {"key": inst.key, "family": inst.family, "identity": inst.text}
    out.update(verdict.to_json())
    if trace:
        _, lines = rs.trace(el)
        out["trace"] = lines
    return out


_WORKER: dict = {}


def _init_worker(rs: RewriteSystem) -> None:
    _WORKER["rs"] = rs


def _check_chunk(args) -> list[dict]:
    chunk, q0, trace = args
    return [check_instance(inst, _WORKER["rs"], q0, trace) for inst in chunk]


def _tally(results: Sequence[dict]) -> dict:
    counts = {"Proved": 0, "Refuted": 0, "Inconclusive": 0}
    for r in results:
        counts[r["status"]] += 1
    if counts["Refuted"]:
        status = "Refuted"
    elif counts["Inconclusive"]:
        status = "Inconclusive"
    else:
        status = "Proved"
    return {"status": status, "counts": counts}


def run_suite(suite: str, sig: AlgebraSignature, degree_bound: Optional[int] = None,
              q0: Optional[Fraction] = None, workers: int = 1, trace: bool = False,
              instances: Optional[list[Instance]] = None) -> dict:
    """Build, complete and check one suite; the report is independent of ``workers``."""
    if instances is None:
        instances = SUITES[suite](sig)
    bound = degree_bound if degree_bound is not None else default_bound(*(i.element for i in instances))
    rs = rewrite_system(sig, bound)
    if q0 is not None:
        rs = specialize(rs, q0)
    if workers > 1 and len(instances) > 1:
        chunks = [instances[k::workers] for k in range(workers)]
        with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=(rs,)) as ex:
            parts = list(ex.map(_check_chunk, [(c, q0, trace) for c in chunks]))
        by_key = {r["key"]: r for part in parts for r in part}
        results = [by_key[i.key] for i in instances]
    else:
        results = [check_instance(i, rs, q0, trace) for i in instances]
    report = {
        "suite": suite,
        "signature": {"m": sig.m, "n": sig.n},
        "q_mode": "symbolic" if q0 is None else f"sampled({q0})",
        "degree_bound": bound,
        "rules": len(rs),
        "confluent": rs.confluent,
        "fingerprint": rs.fingerprint(),
    }
    report.update(_tally(results))
    report["instances"] = results
    return report


def verify_prop5(sig: AlgebraSignature, **kw) -> dict:
    return run_suite("prop5", sig, **kw)


def verify_theorem(sig: AlgebraSignature, **kw) -> dict:
    return run_suite("theorem", sig, **kw)


def verify_roundtrip(sig: AlgebraSignature, **kw) -> dict:
    return run_suite("roundtrip", sig, **kw)


# ---------------------------------------------------------------------------
# the bracket identity with free parameters
# ---------------------------------------------------------------------------


class HypothesisError(ValueError):
    """The bracket identity is only claimed when B or C is even."""


PARITY_TRIPLES = tuple(itertools.product((EVEN, ODD), repeat=3))

_DEGREE_NOTE = (
    "Coefficients of both sides are polynomials in (z, r, s) of degree <= 2 in z and <= 1 in r "
    "and s (total degree <= 4). Agreement on the 3x3x3 grid {1,2,3}^3 therefore proves the "
    "identity exactly; the seeded random samples are an independent check."
)


def bracket_identity_sides(parities, z, r, s) -> tuple[Element, Element]:
    """Both sides of the identity for abstract A, B, C with x = zs, y = zr, t = zsr."""
    pa, pb, pc = parities
    A, B, C = (Element.letter(Letter.abstract(nm, p)) for nm, p in zip("ABC", (pa, pb, pc)))
    x, y, t = z * s, z * r, z * s * r
    q = QScalar.from_fraction
    lhs = sbr(A, comm(B, C, q(x)), q(y))
    sign = -1 if (pa and pb) else 1
    rhs = sbr(sbr(A, B, q(z)), C, q(t)) + sbr(B, sbr(A, C, q(r)), q(s)).scale(q(sign * z))
    return lhs, rhs


def verify_bracket_identity(parities, samples: int = 20, seed: int = 0) -> dict:
    """Check the identity at ``samples`` seeded rational points plus an exact grid."""
    pa, pb, pc = parities
    if pb == ODD and pc == ODD:
        raise HypothesisError("the identity requires B or C to be even")
    rng = random.Random(f"{seed}:{pa}{pb}{pc}")
    points = []
    while len(points) < samples:
        pt = tuple(Fraction(rng.choice([-1, 1]) * rng.randint(1, 60), rng.randint(1, 17)) for _ in range(3))
        if pt not in points:
            points.append(pt)
    grid = list(itertools.product((1, 2, 3), repeat=3))
    failures = []
    for label, pts in (("sample", points), ("grid", grid)):
        for z, r, s in pts:
            lhs, rhs = bracket_identity_sides(parities, Fraction(z), Fraction(r), Fraction(s))
            diff = lhs - rhs
            if diff:
                failures.append({"kind": label, "z": str(z), "r": str(r), "s": str(s),
                                 "witness": diff.render()})
    name = "".join("o" if p else "e" for p in parities)
    out = {
        "key": f"bracket-identity[{name}]",
        "family": "bracket-identity",
        "identity": "[[A, [B, C]_x]]_y = [[ [[A, B]]_z, C]]_t + (-1)^(|A||B|) z [[B, [[A, C]]_r]]_s",
        "parities": {"A": _pname(pa), "B": _pname(pb), "C": _pname(pc)},
        "samples": samples,
        "status": "Refuted" if failures else "Proved",
        "bound_used": 0,
        "reduction_steps": 0,
    }
    if failures:
        out["witness"] = failures[0]["witness"]
        out["failures"] = failures
    return out


def _pname(p: int) -> str:
    return "odd" if p else "even"


def jacobi_check(parities) -> dict:
    """The all-weights-one case against the graded Jacobi identity."""
    pa, pb, pc = parities
    A, B, C = (Element.letter(Letter.abstract(nm, p)) for nm, p in zip("ABC", (pa, pb, pc)))
    lhs, rhs = bracket_identity_sides(parities, Fraction(1), Fraction(1), Fraction(1))
    sign = -1 if (pa and pb) else 1
    jac = sbr(sbr(A, B), C) + sbr(B, sbr(A, C)).scale(sign)
    ok = (lhs - rhs).is_zero() and (lhs - jac).is_zero() and (sbr(A, sbr(B, C)) - jac).is_zero()
    name = "".join("o" if p else "e" for p in parities)
    return {"key": f"jacobi[{name}]", "family": "jacobi",
            "identity": "z = r = s = 1: [[A, [[B, C]]]] = [[ [[A, B]], C]] + (-1)^(|A||B|) [[B, [[A, C]]]]",
            "status": "Proved" if ok else "Refuted", "bound_used": 0, "reduction_steps": 0}


def run_prop6(samples: int = 20, seed: int = 0) -> dict:
    results, rejected = [], []
    for par in PARITY_TRIPLES:
        try:
            results.append(verify_bracket_identity(par, samples, seed))
        except HypothesisError as exc:
            rejected.append({"parities": {"A": _pname(par[0]), "B": _pname(par[1]), "C": _pname(par[2])},
                             "reason": str(exc)})
    results.append(jacobi_check((EVEN, EVEN, EVEN)))
    report = {"suite": "prop6", "samples": samples, "seed": seed, "note": _DEGREE_NOTE}
    report.update(_tally(results))
    report["instances"] = results
    report["rejected"] = rejected
    return report


# ---------------------------------------------------------------------------
# experimental: the Green relations as the presentation
# ---------------------------------------------------------------------------


def chevalley_substitution(sig: AlgebraSignature) -> dict:
    """Letter map e, f, k, kb -> expressions in the Green generators."""
    out = {}
    for i in range(1, sig.N + 1):
        for which in ("e", "f", "k", "kb"):
            out[sig.letter(which, i)] = chevalley_from_green(sig, which, i, deformed=True)
    return out


def converse_instances(sig: AlgebraSignature) -> list[Instance]:
    """The deformed Chevalley relations with e, f, k written via the Green generators."""
    mapping = chevalley_substitution(sig)
    out = []
    for rel in chevalley_presentation(sig, True).relations:
        el, _ = substitute_scaled([(rel.element, 0)], mapping)
        family = rel.name.split("[")[0]
        out.append(Instance(f"converse:{rel.name}", family, f"{rel.text} = 0", el))
    return out


def run_converse(sig: AlgebraSignature, degree_bound: Optional[int] = None,
                 max_rules: int = 1500) -> dict:
    """Reduce modulo a bounded completion of the Green relations.

    Nothing guarantees that this completion is finite; when the rule
    ceiling is hit, every instance that does not already reduce to zero
    is reported Inconclusive.
    """
    from .rewrite import CompletionError, verify_identity

    instances = converse_instances(sig)
    bound = degree_bound if degree_bound is not None else default_bound(*(i.element for i in instances))
    seed = RewriteSystem(degree_bound=bound, max_rules=max_rules)
    queue: list = []
    note = None
    try:
        for rel in green_presentation(sig, True).relations:
            seed.add_relation(rel.element, rel.name, queue)
        rs = complete(seed, bound)
    except CompletionError as exc:
        note = f"completion stopped: {exc}"
        rs = seed
        rs.closed_to, rs.confluent = -1, False
    results = []
    for inst in instances:
        v = verify_identity(inst.element, Element.zero(), rs)
        results.append({"key": inst.key, "family": inst.family, "identity": inst.text, **v.to_json()})
    report = {
        "suite": "converse",
        "experimental": True,
        "signature": {"m": sig.m, "n": sig.n},
        "q_mode": "symbolic",
        "degree_bound": bound,
        "rules": len(rs),
        "confluent": rs.confluent,
        "fingerprint": rs.fingerprint(),
    }
    if note:
        report["note"] = note
    report.update(_tally(results))
    report["instances"] = results
    return report
