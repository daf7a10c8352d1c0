"""Acceptance criteria, one test each; a PASS/FAIL line per criterion is printed
and repeated in the terminal summary."""
import json
import random
import re
import subprocess
import sys
import time

import pytest

from ospgreen import verify
from ospgreen.cli import DEFAULT_SEED, run_classical
from ospgreen.presentations import B44_CARTAN, cartan_matrix
from ospgreen.superalg import AlgebraSignature, Element, Letter, sbr
from ospgreen.verify import (check_instance, mutated_theorem_instance, run_prop6, run_suite,
                             rewrite_system)

from conftest import ACCEPTANCE_LINES, random_element, random_order_reduce


def report(n: int, title: str, ok: bool, seconds: float, detail: str = "") -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}  ({seconds:.2f} s){'  ' + detail if detail else ''}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def fresh_systems():
    verify._SYSTEMS.clear()


def test_criterion_1_cartan_b44():
    t0 = time.perf_counter()
    C = cartan_matrix(AlgebraSignature(4, 4))
    dt = time.perf_counter() - t0
    expected = (
        (2, -1, 0, 0, 0, 0, 0, 0),
        (-1, 2, -1, 0, 0, 0, 0, 0),
        (0, -1, 2, -1, 0, 0, 0, 0),
        (0, 0, -1, 0, 1, 0, 0, 0),
        (0, 0, 0, 1, -2, 1, 0, 0),
        (0, 0, 0, 0, 1, -2, 1, 0),
        (0, 0, 0, 0, 0, 1, -2, 1),
        (0, 0, 0, 0, 0, 0, 1, -1),
    )
    ok = C == expected == B44_CARTAN and dt < 1.0
    report(1, "cartan_matrix(4,4) equals the B(4/4) matrix entrywise", ok, dt)
    assert ok


def test_criterion_2_classical_suite():
    t0 = time.perf_counter()
    bad = []
    for m, n in ((1, 1), (1, 2), (2, 1), (2, 2)):
        rep = run_classical(AlgebraSignature(m, n))
        bad += [f"({m},{n}) {f['family']}" for f in rep["instances"] if f["status"] != "Proved"]
        if rep["status"] != "Proved":
            bad.append(f"({m},{n})")
    dt = time.perf_counter() - t0
    ok = not bad and dt < 60
    report(2, "classical matrix families exact at (1,1),(1,2),(2,1),(2,2)", ok, dt, ", ".join(bad))
    assert ok


def test_criterion_3_prop5():
    fresh_systems()
    t0 = time.perf_counter()
    counts = []
    ok = True
    for m, n in ((1, 1), (1, 2), (2, 1)):
        rep = run_suite("prop5", AlgebraSignature(m, n))
        counts.append(f"({m},{n}):{rep['counts']['Proved']}/{len(rep['instances'])}")
        ok &= all(i["status"] == "Proved" for i in rep["instances"]) and rep["counts"]["Inconclusive"] == 0
    dt = time.perf_counter() - t0
    ok = ok and dt < 300
    report(3, "Chevalley/Green mixed brackets all Proved at default bound", ok, dt, " ".join(counts))
    assert ok


def test_criterion_4_theorem():
    fresh_systems()
    t0 = time.perf_counter()
    counts = []
    ok = True
    for m, n in ((1, 1), (1, 2)):
        rep = run_suite("theorem", AlgebraSignature(m, n))
        families = {i["family"] for i in rep["instances"]}
        counts.append(f"({m},{n}):{rep['counts']['Proved']}/{len(rep['instances'])}")
        ok &= rep["status"] == "Proved" and len(families) == 7
        ok &= {"green-L-inverse", "green-L-commute", "green-L-a", "green-a-pair",
               "green-a-triple", "green-a-end"} <= families
    dt = time.perf_counter() - t0
    ok = ok and dt < 600
    report(4, "all five Green relation families Proved", ok, dt, " ".join(counts))
    assert ok


def test_criterion_5_roundtrip():
    t0 = time.perf_counter()
    ok = True
    counts = []
    for m, n in ((1, 1), (1, 2)):
        sig = AlgebraSignature(m, n)
        rep = run_suite("roundtrip", sig)
        counts.append(f"({m},{n}):{rep['counts']['Proved']}/{len(rep['instances'])}")
        ok &= rep["status"] == "Proved" and len(rep["instances"]) == 3 * sig.N
    dt = time.perf_counter() - t0
    report(5, "e, f, k recovered from the Green generators", ok, dt, " ".join(counts))
    assert ok


def test_criterion_6_bracket_identity():
    t0 = time.perf_counter()
    rep = run_prop6(samples=20, seed=DEFAULT_SEED)
    admissible = [i for i in rep["instances"] if i["family"] == "bracket-identity"]
    ok = len(admissible) == 6 and all(i["status"] == "Proved" and i["samples"] >= 20 for i in admissible)
    rejected = {(r["parities"]["B"], r["parities"]["C"]) for r in rep["rejected"]}
    ok &= len(rep["rejected"]) == 2 and rejected == {("odd", "odd")}
    # all-even, unit weights against the graded Jacobi identity computed here directly
    A, B, C = (Element.letter(Letter.abstract(x, 0)) for x in "ABC")
    lhs, rhs = verify.bracket_identity_sides((0, 0, 0), 1, 1, 1)
    jac_l = sbr(A, sbr(B, C))
    jac_r = sbr(sbr(A, B), C) + sbr(B, sbr(A, C))
    ok &= lhs == jac_l and rhs == jac_r and jac_l == jac_r
    ok &= any(i["family"] == "jacobi" and i["status"] == "Proved" for i in rep["instances"])
    dt = time.perf_counter() - t0
    report(6, "bracket identity on 6 admissible parity triples, odd/odd rejected, Jacobi match",
           ok, dt, f"samples/triple={rep['samples']} seed={rep['seed']}")
    assert ok


def test_criterion_7_mutation():
    t0 = time.perf_counter()
    sig = AlgebraSignature(1, 1)
    rs = rewrite_system(sig, 12)
    results = [check_instance(mutated_theorem_instance(sig, "green-a-pair", i), rs) for i in (1, 2)]
    results.append(check_instance(mutated_theorem_instance(sig, "green-a-triple", 1, 1, 1), rs))
    ok = all(r["status"] == "Refuted" and r.get("witness") not in (None, "", "0") for r in results)
    dt = time.perf_counter() - t0
    report(7, "2 -> 3 mutations Refuted with nonzero witness at (1,1)", ok, dt,
           f"witness[{results[0]['key']}]={results[0].get('witness')}")
    assert ok


def test_criterion_8_confluence():
    t0 = time.perf_counter()
    sig = AlgebraSignature(1, 1)
    rs = rewrite_system(sig, 12)
    rng = random.Random(8)
    mismatches = 0
    for _ in range(100):
        x = random_element(sig, rng, max_len=rs.closed_to)
        expected = rs.reduce(x)
        for _ in range(2):
            if random_order_reduce(x, rs, rng) != expected:
                mismatches += 1
    dt = time.perf_counter() - t0
    ok = mismatches == 0 and rs.confluent
    report(8, "100 random elements reduce independently of rule order", ok, dt,
           f"rules={len(rs)} closed_to={rs.closed_to}")
    assert ok


def _run_all(workers: int, m: int, n: int) -> str:
    cmd = [sys.executable, "-m", "ospgreen", "verify", "all", "-m", str(m), "-n", str(n),
           "--json", "--workers", str(workers)]
    proc = subprocess.run(cmd, capture_output=True, text=True, timeout=600)
    assert proc.returncode == 0, proc.stderr
    return proc.stdout


def _strip_timing(text: str) -> str:
    out = re.sub(r',\n  "timing": \{.*\}\n\}\n?$', "\n}\n", text, flags=re.S)
    assert '"timing"' not in out
    return out


def test_criterion_9_determinism():
    t0 = time.perf_counter()
    ok = True
    for m, n in ((1, 1), (1, 2)):
        one, eight = _run_all(1, m, n), _run_all(8, m, n)
        ok &= _strip_timing(one).encode() == _strip_timing(eight).encode()
        a, b = json.loads(one), json.loads(eight)
        a.pop("timing"), b.pop("timing")
        ok &= a == b
    dt = time.perf_counter() - t0
    report(9, "verify all: --workers 1 and --workers 8 byte-identical modulo timing", ok, dt)
    assert ok
