import itertools

import pytest

from ospgreen import matrixrep
from ospgreen.matrixrep import (CLASSICAL_FAMILIES, DimensionError, ExactMatrix, basis_matrix,
                                block_pattern, in_osp, labels, supercommutator, verify_classical)
from ospgreen.scalars import Sqrt2
from ospgreen.superalg import AlgebraSignature

SIGS = [AlgebraSignature(*s) for s in ((1, 1), (1, 2), (2, 1), (2, 2))]
R2 = "sqrt2"


def all_basis(sig):
    return [basis_matrix(sig, i, s) for i in range(1, sig.N + 1) for s in (1, -1)]


def test_labels_ascending():
    assert labels(AlgebraSignature(1, 1)) == [-2, -1, 0, 1, 2]
    assert labels(AlgebraSignature(2, 1)) == [-2, -1, 0, 1, 2, 3, 4]


def test_basis_examples():
    sig = AlgebraSignature(1, 1)
    am1 = basis_matrix(sig, 1, -1)
    assert am1.parity == 1
    assert sorted(am1.matrix.nonzero_entries()) == [(0, 1, R2), (2, 0, "-" + R2)]
    ap2 = basis_matrix(sig, 2, 1)
    assert ap2.parity == 0
    assert sorted(ap2.matrix.nonzero_entries()) == [(-2, 0, "-" + R2), (0, -1, R2)]


def test_supercommutator_examples():
    sig = AlgebraSignature(1, 1)
    c = supercommutator(basis_matrix(sig, 1, -1), basis_matrix(sig, 1, 1))
    assert c.parity == 0
    assert sorted(c.matrix.nonzero_entries()) == [(1, 1, "2"), (2, 2, "-2")]
    c = supercommutator(basis_matrix(sig, 2, -1), basis_matrix(sig, 2, 1))
    assert sorted(c.matrix.nonzero_entries()) == [(-2, -2, "-2"), (-1, -1, "2")]
    x = basis_matrix(sig, 2, 1)
    assert supercommutator(x, x).matrix.is_zero()


def test_index_guard():
    with pytest.raises(IndexError):
        basis_matrix(AlgebraSignature(1, 1), 3, 1)


@pytest.mark.parametrize("sig", SIGS, ids=str)
def test_basis_in_green_pattern(sig):
    for M in all_basis(sig):
        pat = block_pattern(M.matrix, sig)
        assert "L" in pat
        assert ("odd" if M.parity else "even") in pat
        assert in_osp(M.matrix, sig)


@pytest.mark.parametrize("sig", SIGS, ids=str)
def test_bracket_block_structure(sig):
    for x, y in itertools.product(all_basis(sig), repeat=2):
        c = supercommutator(x, y)
        if c.matrix.is_zero():
            continue
        assert in_osp(c.matrix, sig)
        assert ("odd" if c.parity else "even") in block_pattern(c.matrix, sig)


def test_exact_matrix_arithmetic():
    sig = AlgebraSignature(1, 2)
    a, b, c = (M.matrix for M in all_basis(sig)[:3])
    assert (a @ b) @ c == a @ (b @ c)
    assert a @ (b + c) == a @ b + a @ c
    assert (a - a).is_zero()
    assert a.scale(Sqrt2(0, 1)).scale(Sqrt2(0, 1)) == a.scale(2)
    assert ExactMatrix.zeros(sig).dim == 2 * sig.n + 1 + 2 * sig.m


@pytest.mark.parametrize("family", CLASSICAL_FAMILIES)
@pytest.mark.parametrize("sig", SIGS, ids=str)
def test_classical_family(sig, family):
    rep = verify_classical(sig, family)
    assert rep["status"] == "Proved", rep.get("witness")
    assert rep["instances"] > 0 and rep["failed"] == 0
    assert rep["labels"] == labels(sig)


def test_dimension_guard():
    with pytest.raises(DimensionError, match="smaller"):
        verify_classical(AlgebraSignature(7, 7), "span")


def test_unknown_family():
    with pytest.raises(ValueError, match="unknown family"):
        verify_classical(AlgebraSignature(1, 1), "bogus")


def test_refuted_witness(monkeypatch):
    def broken(R):
        a = R.a[(1, 1)].matrix
        yield "ok", a, a
        yield "bad", a, a.scale(2)

    monkeypatch.setitem(matrixrep._FAMILIES, "span", broken)
    rep = verify_classical(AlgebraSignature(1, 1), "span")
    assert rep["status"] == "Refuted" and rep["failed"] == 1
    assert rep["witness"]["instance"] == "bad"
    assert rep["witness"]["lhs"] and rep["witness"]["rhs"]
    assert rep["failed_instances"] == ["bad"]
