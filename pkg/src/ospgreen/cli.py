"""Command-line interface: ``ospgreen cartan | verify | reduce | converse``.

Exit status of ``verify``: 0 when every instance is Proved, 1 when any is
Refuted, 2 when some are Inconclusive and none Refuted.  Usage errors exit
with 64 so they cannot be mistaken for an inconclusive run.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from importlib import resources
from typing import Optional, Sequence

from . import __version__
from .dsl import BindError, DSLSyntaxError, bind, parse
from .matrixrep import CLASSICAL_FAMILIES, verify_classical
from .presentations import (
    B44_CARTAN, cartan_matrix, chevalley_presentation, green_substitution, substitute_scaled,
)
from .rewrite import default_bound
from .scalars import PoleError
from .superalg import AlgebraSignature, Element
from .verify import rewrite_system, run_converse, run_prop6, run_suite, specialize

EXIT_OK, EXIT_REFUTED, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 64
SUITE_ORDER = ("classical", "prop5", "theorem", "roundtrip", "prop6")
DEFAULT_SEED = 20240601
SCHEMA_RESOURCE = "schema/report.schema.json"

CLASSICAL_DESCRIPTIONS = {
    "span": "the a's and their pairwise brackets span osp(2n+1/2m); triple brackets stay in span(a)",
    "triple-bracket": "[[ [[a_i^xi, a_j^eta]], a_k^eps ]] in the defining matrices",
    "pair-bracket": "[[ [[a_i, a_j]], [[a_k, a_l]] ]] in the defining matrices",
    "triple-relations": "triple-bracket relations built in the free algebra, then evaluated",
    "parabose": "[{B_i, B_j}, B_k] relations for the odd generators",
    "parafermi": "[[F_i, F_j], F_k] relations for the even generators",
    "green-relations": "classical Green-generator relations",
    "cartan-kac": "Cartan-Kac relations of h_i, e_i, f_i built from the a's",
    "serre": "Serre relations of e_i, f_i built from the a's",
    "green-from-chevalley": "a_i^+- rebuilt from e_i, f_i",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def schema_path() -> str:
    """Filesystem path of the shipped JSON schema for reports."""
    return str(resources.files("ospgreen").joinpath(SCHEMA_RESOURCE))


def load_schema() -> dict:
    return json.loads(resources.files("ospgreen").joinpath(SCHEMA_RESOURCE).read_text())


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _q0(text: str) -> Fraction:
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected NUM/DEN, got {text!r}")
    if v in (0, 1, -1):
        raise argparse.ArgumentTypeError(f"q0 must avoid 0, 1 and -1 (got {v})")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-m", type=_positive, default=1, help="m >= 1 (default 1)")
    common.add_argument("-n", type=_positive, default=1, help="n >= 1 (default 1)")
    common.add_argument("--json", action="store_true", help="emit a JSON report")

    rw = argparse.ArgumentParser(add_help=False)
    rw.add_argument("--degree-bound", type=_positive, default=None,
                    help="completion bound on word length (default: 2 * longest word + 4)")
    rw.add_argument("--q0", type=_q0, default=None, metavar="NUM/DEN",
                    help="sampled mode: specialize q to this rational (fast pre-check)")
    rw.add_argument("--trace", action="store_true", help="include full reduction traces")

    p = _Parser(prog="ospgreen", description="Exact checks for osp(2n+1/2m) and its q-deformation.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("cartan", parents=[common], help="print the symmetric Cartan matrix")
    c.add_argument("--check-b44", action="store_true", help="compare the (4,4) matrix with the B(4/4) table")

    v = sub.add_parser("verify", parents=[common, rw], help="run a verification suite")
    v.add_argument("suite", choices=SUITE_ORDER + ("all",))
    v.add_argument("--samples", type=_positive, default=20, help="samples per parity triple (default 20)")
    v.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"sampling seed (default {DEFAULT_SEED})")
    v.add_argument("--workers", type=_positive, default=1, help="worker processes (default 1)")

    r = sub.add_parser("reduce", parents=[common, rw], help="normal form of an expression")
    r.add_argument("expression")

    x = sub.add_parser("converse", parents=[common], help="experimental: Green relations as the presentation")
    x.add_argument("--degree-bound", type=_positive, default=None)
    x.add_argument("--max-rules", type=_positive, default=1500)
    return p


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _status_code(status: str) -> int:
    return {"Proved": EXIT_OK, "Refuted": EXIT_REFUTED, "Inconclusive": EXIT_INCONCLUSIVE}[status]


def _combine(statuses: Sequence[str]) -> str:
    if "Refuted" in statuses:
        return "Refuted"
    if "Inconclusive" in statuses:
        return "Inconclusive"
    return "Proved"


def cmd_cartan(args) -> int:
    sig = AlgebraSignature(args.m, args.n)
    A = cartan_matrix(sig)
    check = None
    if args.check_b44:
        check = cartan_matrix(AlgebraSignature(4, 4)) == B44_CARTAN
    if args.json:
        out = {"command": "cartan", "signature": {"m": sig.m, "n": sig.n}, "matrix": [list(r) for r in A]}
        if check is not None:
            out["b44_check"] = "pass" if check else "fail"
        print(json.dumps(out, indent=2))
    else:
        w = max(len(str(x)) for row in A for x in row)
        for row in A:
            print(" ".join(str(x).rjust(w) for x in row))
        if check is not None:
            print(f"B(4/4) check: {'pass' if check else 'FAIL'}")
    return EXIT_OK if check in (None, True) else EXIT_REFUTED


def _classical_family(args) -> dict:
    (m, n), family = args
    return verify_classical(AlgebraSignature(m, n), family)


def run_classical(sig: AlgebraSignature, workers: int = 1) -> dict:
    jobs = [((sig.m, sig.n), f) for f in CLASSICAL_FAMILIES]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            reps = list(ex.map(_classical_family, jobs))
    else:
        reps = [_classical_family(j) for j in jobs]
    instances = []
    for rep in reps:
        inst = {"key": rep["family"], "family": rep["family"],
                "identity": CLASSICAL_DESCRIPTIONS[rep["family"]],
                "status": rep["status"], "checked": rep["instances"], "failed": rep["failed"]}
        if "witness" in rep:
            w = rep["witness"]
            inst["witness"] = f"{w['instance']}: lhs entries {w['lhs']} vs rhs entries {w['rhs']}"
            inst["failed_instances"] = rep["failed_instances"]
        instances.append(inst)
    statuses = [i["status"] for i in instances]
    counts = {s: statuses.count(s) for s in ("Proved", "Refuted", "Inconclusive")}
    return {"suite": "classical", "signature": {"m": sig.m, "n": sig.n}, "q_mode": "exact (matrices)",
            "labels": reps[0]["labels"], "status": _combine(statuses), "counts": counts,
            "instances": instances}


def presentation_fingerprint(sig: AlgebraSignature) -> str:
    h = hashlib.sha256()
    for rel in chevalley_presentation(sig, True).relations:
        h.update(f"{rel.name}: {rel.element.render()}\n".encode())
    return h.hexdigest()[:16]


def cmd_verify(args) -> int:
    sig = AlgebraSignature(args.m, args.n)
    suites = SUITE_ORDER if args.suite == "all" else (args.suite,)
    reports, timing = [], {}
    t_all = time.perf_counter()
    for name in suites:
        t0 = time.perf_counter()
        if name == "classical":
            rep = run_classical(sig, args.workers)
        elif name == "prop6":
            rep = run_prop6(args.samples, args.seed)
        else:
            try:
                rep = run_suite(name, sig, degree_bound=args.degree_bound, q0=args.q0,
                                workers=args.workers, trace=args.trace)
            except PoleError as exc:
                raise UsageError(f"q0 = {args.q0} hits a pole of the rewrite rules: {exc}")
        timing[name] = round(time.perf_counter() - t0, 3)
        reports.append(rep)
    status = _combine([r["status"] for r in reports])
    report = {
        "tool": "ospgreen",
        "version": __version__,
        "command": "verify",
        "suite": args.suite,
        "config": {
            "m": sig.m, "n": sig.n,
            "degree_bound": args.degree_bound,
            "q_mode": "symbolic" if args.q0 is None else "sampled",
            "q0": None if args.q0 is None else str(args.q0),
            "samples": args.samples, "seed": args.seed, "trace": args.trace,
        },
        "presentation_fingerprint": presentation_fingerprint(sig),
        "status": status,
        "exit_code": _status_code(status),
        "suites": reports,
        "timing": {"total_seconds": round(time.perf_counter() - t_all, 3), "suites": timing},
    }
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        _print_text(report)
    return report["exit_code"]


def _print_text(report: dict) -> None:
    cfg = report["config"]
    print(f"ospgreen verify {report['suite']}  (m={cfg['m']}, n={cfg['n']}, q: {cfg['q_mode']}"
          + (f" {cfg['q0']}" if cfg["q0"] else "") + ")")
    for rep in report["suites"]:
        c = rep["counts"]
        extra = ""
        if "degree_bound" in rep:
            extra = f"  bound {rep['degree_bound']}, {rep['rules']} rules" + (", confluent" if rep["confluent"] else "")
        print(f"\n[{rep['suite']}] {rep['status']}: {c['Proved']} Proved, {c['Refuted']} Refuted, "
              f"{c['Inconclusive']} Inconclusive{extra}")
        for inst in rep["instances"]:
            print(f"  {inst['status']:<12} {inst['key']:<28} {inst['identity']}")
            if inst["status"] != "Proved" and "witness" in inst:
                print(f"  {'':<12} witness: {inst['witness']}")
            for line in inst.get("trace", []):
                print(f"  {'':<14} {line}")
        for rej in rep.get("rejected", []):
            p = rej["parities"]
            print(f"  {'rejected':<12} A={p['A']} B={p['B']} C={p['C']}: {rej['reason']}")
        if "note" in rep:
            print(f"  note: {rep['note']}")
    print(f"\noverall: {report['status']} (exit {report['exit_code']}), {report['timing']['total_seconds']} s")


def reduce_expression(text: str, sig: AlgebraSignature, degree_bound: Optional[int] = None,
                      q0: Optional[Fraction] = None, trace: bool = False) -> dict:
    """Normal form of ``text``; Green letters are expanded into Chevalley generators."""
    el = bind(parse(text), sig)
    if any(a.kind == "h" for w in el.terms for a in w):
        raise BindError("h_i belongs to the classical algebra; use k_i and kb_i here")
    el, p0 = substitute_scaled([(el, 0)], green_substitution(sig))
    # keep at most one sqrt2 outside; even powers are rational
    el, p0 = el.scale(Fraction(2) ** (p0 // 2)), p0 % 2
    bound = degree_bound if degree_bound is not None else default_bound(el)
    rs = rewrite_system(sig, bound)
    if q0 is not None:
        rs = specialize(rs, q0)
        el = Element({w: type(c).from_fraction(c.eval(q0)) for w, c in el.terms.items()})
    nf, lines = rs.trace(el) if trace else (rs.reduce(el), [])
    limited = not rs.confluent and el.max_degree() > rs.closed_to
    prefix = "" if p0 == 0 or nf.is_zero() else "sqrt2*"
    body = nf.render()
    if prefix and " " in body:
        body = f"({body})"
    return {"command": "reduce", "signature": {"m": sig.m, "n": sig.n}, "input": text,
            "normal_form": prefix + body, "sqrt2_power": p0, "degree_bound": bound,
            "bound_limited": limited, "trace": lines}


def cmd_reduce(args) -> int:
    sig = AlgebraSignature(args.m, args.n)
    try:
        out = reduce_expression(args.expression, sig, args.degree_bound, args.q0, args.trace)
    except DSLSyntaxError as exc:
        raise UsageError(f"syntax error: {exc}\n  {args.expression}\n  {' ' * (exc.column - 1)}^")
    except BindError as exc:
        raise UsageError(str(exc))
    except PoleError as exc:
        raise UsageError(f"q0 = {args.q0} hits a pole: {exc}")
    if args.json:
        print(json.dumps(out, indent=2))
    else:
        for line in out["trace"]:
            print(line)
        print(out["normal_form"])
        if out["bound_limited"]:
            print("warning: input exceeds the completed degree range; normal form may not be unique",
                  file=sys.stderr)
    return EXIT_INCONCLUSIVE if out["bound_limited"] else EXIT_OK


def cmd_converse(args) -> int:
    sig = AlgebraSignature(args.m, args.n)
    rep = run_converse(sig, args.degree_bound, args.max_rules)
    if args.json:
        print(json.dumps(rep, indent=2))
    else:
        c = rep["counts"]
        print(f"[converse, experimental] {rep['status']}: {c['Proved']} Proved, {c['Refuted']} Refuted, "
              f"{c['Inconclusive']} Inconclusive  bound {rep['degree_bound']}, {rep['rules']} rules")
        for inst in rep["instances"]:
            print(f"  {inst['status']:<12} {inst['key']:<32} {inst['identity']}")
        if "note" in rep:
            print(f"  note: {rep['note']}")
    return _status_code(rep["status"])


COMMANDS = {"cartan": cmd_cartan, "verify": cmd_verify, "reduce": cmd_reduce, "converse": cmd_converse}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"ospgreen {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
