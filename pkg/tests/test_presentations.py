from fractions import Fraction

import pytest

from ospgreen.presentations import (B44_CARTAN, L_from_k, Presentation, cartan_matrix,
                                    chevalley_from_green, chevalley_presentation, green_from_chevalley,
                                    green_presentation, green_relation_count, root_assignment)
from ospgreen.scalars import Q
from ospgreen.superalg import AlgebraSignature, Element

SIGS = [AlgebraSignature(*s) for s in ((1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (1, 3))]


def texts(pres):
    return {r.name: r.text for r in pres.relations}


# Cartan matrix

def test_cartan_b44():
    assert cartan_matrix(AlgebraSignature(4, 4)) == B44_CARTAN


def test_cartan_small():
    assert cartan_matrix(AlgebraSignature(1, 1)) == ((0, 1), (1, -1))


@pytest.mark.parametrize("sig", SIGS, ids=str)
def test_cartan_shape(sig):
    A = cartan_matrix(sig)
    N = sig.N
    assert len(A) == N and all(len(row) == N for row in A)
    for i in range(N):
        for j in range(N):
            assert A[i][j] == A[j][i]
            if abs(i - j) > 1:
                assert A[i][j] == 0
    # the odd simple root has a zero diagonal entry, the short root at N has -1
    assert A[sig.m - 1][sig.m - 1] == 0
    assert A[N - 1][N - 1] == -1


# relation lists

def test_relation_counts_at_22():
    sig = AlgebraSignature(2, 2)
    assert len(chevalley_presentation(sig, False).relations) == 74
    assert len(chevalley_presentation(sig, True).relations) == 80
    assert len(green_presentation(sig, False).relations) == 82
    assert len(green_presentation(sig, True).relations) == 100


@pytest.mark.parametrize("sig", SIGS, ids=str)
def test_green_count_matches_enumeration(sig):
    assert len(green_presentation(sig, True).relations) == green_relation_count(sig)


def test_mixed_serre_relation():
    rel = chevalley_presentation(AlgebraSignature(2, 2), True).relation("e-serre-mixed")
    assert rel.text == "{[e2, e1]_q, [e2, e3]_qb}"


def test_no_mixed_serre_at_m1():
    names = texts(chevalley_presentation(AlgebraSignature(1, 2), True))
    assert not any("mixed" in n for n in names)


@pytest.mark.parametrize("sig", SIGS, ids=str)
def test_inverse_pairs_present(sig):
    names = texts(chevalley_presentation(sig, True))
    for i in range(1, sig.N + 1):
        assert names[f"CK-kkb[{i}]"] == f"k{i}*kb{i} - 1"
        assert names[f"CK-kbk[{i}]"] == f"kb{i}*k{i} - 1"


def test_classical_quartic():
    names = texts(chevalley_presentation(AlgebraSignature(1, 1), False))
    assert names["e-serre-quartic"] == "[e2, [e2, [e2, e1]]]"
    assert names["f-serre-quartic"] == "[f2, [f2, [f2, f1]]]"


def test_green_relation_texts():
    sig = AlgebraSignature(1, 1)
    deformed = texts(green_presentation(sig, True))
    assert deformed["green-a-pair[1]"] == "[[a-1, a+1]] + 2*(L1 - Lb1)/(q - qb)"
    assert deformed["green-a-end[+]"] == "[[a+1, a+2], a+2]_qb"
    assert deformed["green-L-inverse[2]"] == "L2*Lb2 - 1"
    classical = texts(green_presentation(sig, False))
    assert classical["green-triple[1,1,1,+]"] == "[[[[a+1, a-1]], a+1]] - 2*a+1"
    assert classical["green-triple[1,1,1,-]"] == "[[[[a-1, a+1]], a-1]] + 2*a-1"
    assert classical["green-end[+]"] == "[[a+1, a+2], a+2]"


@pytest.mark.parametrize("sig", SIGS, ids=str)
def test_relations_are_homogeneous(sig):
    for deformed in (False, True):
        for pres in (chevalley_presentation(sig, deformed), green_presentation(sig, deformed)):
            for rel in pres.relations:
                assert rel.element.parity() in ("even", "odd"), rel.name


def test_duplicate_names_rejected():
    pres = chevalley_presentation(AlgebraSignature(1, 1), True)
    with pytest.raises(ValueError):
        Presentation(pres.signature, True, "chevalley", pres.generators, pres.relations[:1] * 2)


def test_to_json():
    data = green_presentation(AlgebraSignature(1, 1), True).to_json()
    assert data["signature"] == {"m": 1, "n": 1} and data["deformed"]
    assert {"name": "a-1", "parity": "odd"} in data["generators"]
    assert len(data["relations"]) == 25


# conversions

def test_green_from_chevalley_unrolled():
    sig = AlgebraSignature(1, 1)
    s = green_from_chevalley(sig, 1, -1, deformed=True)
    e1, e2 = sig.gen("e", 1), sig.gen("e", 2)
    assert s.sqrt2 == 1
    assert s.element == e1 * e2 - (e2 * e1).scale(Q)
    assert s.render() == "sqrt2*[e1, e2]_q"


def test_green_from_chevalley_at_N():
    sig = AlgebraSignature(2, 1)
    s = green_from_chevalley(sig, 3, -1, deformed=True)
    assert s.sqrt2 == 1 and s.element == sig.gen("e", 3)
    plus = green_from_chevalley(sig, 3, 1, deformed=True)
    assert plus.sqrt2 == 1 and plus.element == -sig.gen("f", 3)


def test_chevalley_from_green():
    sig = AlgebraSignature(1, 1)
    eN = chevalley_from_green(sig, "e", 2, deformed=True)
    assert eN.sqrt2 == -1 and eN.element == sig.gen("a-", 2)
    hN = chevalley_from_green(sig, "h", 2, deformed=False)
    am, ap = sig.gen("a-", 2), sig.gen("a+", 2)
    assert hN.element == (am * ap - ap * am).scale(Fraction(-1, 2))
    assert chevalley_from_green(sig, "k", 2, deformed=True).element == sig.gen("L", 2)
    assert chevalley_from_green(sig, "k", 1, deformed=True).element == sig.gen("L", 1) * sig.gen("Lb", 2)


def test_L_from_k():
    sig = AlgebraSignature(1, 2)
    assert L_from_k(sig, 1).element == sig.gen("k", 1) * sig.gen("k", 2) * sig.gen("k", 3)
    assert L_from_k(sig, 3).element == sig.gen("k", 3)


# roots

def test_root_assignment():
    ra = root_assignment(AlgebraSignature(1, 1))
    assert ra["generators"]["a+1"] == (-1, 0)
    assert ra["generators"]["a-2"] == (0, 1)
    roots = ra["roots"]
    assert (2, 0) in roots and (-2, 0) in roots and (0, 2) not in roots
    assert len(roots) == 10 == len(set(roots))


@pytest.mark.parametrize("sig", SIGS, ids=str)
def test_root_count(sig):
    N, m = sig.N, sig.m
    assert len(root_assignment(sig)["roots"]) == 2 * N * (N - 1) + 2 * N + 2 * m
