import random

import pytest

from ospgreen import verify
from ospgreen.presentations import cartan_matrix, chevalley_presentation
from ospgreen.rewrite import (CompletionError, OrientationError, RewriteRule, RewriteSystem, build_rules,
                              complete, default_bound, normal_form, verify_identity)
from ospgreen.rewrite import _check_oriented
from ospgreen.scalars import Q, QScalar
from ospgreen.superalg import AlgebraSignature, Element, word_key, word_parity
from ospgreen.verify import (check_instance, mutated_theorem_instance, rewrite_system, run_suite,
                             theorem_instances)

from conftest import random_element, random_order_reduce


def word(sig, *names):
    out = []
    for nm in names:
        kind = nm.rstrip("0123456789")
        out.append(sig.letter(kind, int(nm[len(kind):])))
    return tuple(out)


@pytest.fixture(scope="module")
def rs12():
    return rewrite_system(AlgebraSignature(1, 2), 12)


# oriented Cartan-Kac rules

def test_ef_rule_odd(sig11):
    rs = build_rules(chevalley_presentation(sig11, True))
    rule = rs.rules[word(sig11, "e1", "f1")]
    e1, f1, k1, kb1 = (sig11.gen(k, 1) for k in ("e", "f", "k", "kb"))
    assert rule.rhs == -(f1 * e1) + (k1 - kb1) / (Q - Q ** -1)
    assert rule.render().startswith("e1*f1 -> -f1*e1 + (k1 - kb1)/(q - q^-1)")


def test_ek_rules_carry_cartan_weights():
    for sig in (AlgebraSignature(1, 1), AlgebraSignature(2, 1)):
        A = cartan_matrix(sig)
        rs = build_rules(chevalley_presentation(sig, True))
        for i in range(1, sig.N + 1):
            for j in range(1, sig.N + 1):
                ej, ki, fj, kbi = sig.gen("e", j), sig.gen("k", i), sig.gen("f", j), sig.gen("kb", i)
                assert rs.rules[word(sig, f"e{j}", f"k{i}")].rhs == (ki * ej).scale(Q ** -A[i - 1][j - 1])
                assert rs.rules[word(sig, f"k{i}", f"f{j}")].rhs == (fj * ki).scale(Q ** -A[i - 1][j - 1])
                assert rs.rules[word(sig, f"e{j}", f"kb{i}")].rhs == (kbi * ej).scale(Q ** A[i - 1][j - 1])


def test_k1e1_commute_at_11(sig11):
    rs = build_rules(chevalley_presentation(sig11, True))
    assert rs.rules[word(sig11, "e1", "k1")].rhs == sig11.gen("k", 1) * sig11.gen("e", 1)


def test_far_e_commutation_at_22():
    sig = AlgebraSignature(2, 2)
    rs = build_rules(chevalley_presentation(sig, True))
    rule = rs.rules[word(sig, "e3", "e1")]
    assert rule.rhs == sig.gen("e", 1) * sig.gen("e", 3)


def test_orientation_check():
    sig = AlgebraSignature(1, 1)
    bad = RewriteRule(word(sig, "f1"), sig.gen("e", 1), "bad")
    with pytest.raises(OrientationError, match="bad"):
        _check_oriented(bad)


# normal forms

def test_normal_form_examples(sig11, rs11):
    k1, kb1, e1, f1 = (sig11.gen(k, 1) for k in ("k", "kb", "e", "f"))
    assert normal_form(k1 * kb1, rs11)[0] == Element.one()
    assert normal_form(e1 * f1 + f1 * e1, rs11)[0] == (k1 - kb1) / (Q - Q ** -1)
    assert normal_form(Element.zero(), rs11)[0].is_zero()


def test_trace(sig11, rs11):
    e1, f1 = sig11.gen("e", 1), sig11.gen("f", 1)
    nf, lines = normal_form(e1 * f1 + f1 * e1, rs11, trace=True)
    assert nf == rs11.reduce(e1 * f1 + f1 * e1)
    assert lines and "CK-ef[1,1]" in lines[0]


def test_rules_decrease_order_and_keep_parity(rs11, rs12):
    for rs in (rs11, rs12):
        for rule in rs.sorted_rules():
            p = word_parity(rule.lhs)
            for w in rule.rhs.terms:
                assert word_key(w) < word_key(rule.lhs)
                assert word_parity(w) == p
            assert rs.is_irreducible(rule.lhs[1:]) and rs.is_irreducible(rule.lhs[:-1])


def test_normal_forms_irreducible(sig11, rs11):
    rng = random.Random(3)
    for _ in range(30):
        nf = rs11.reduce(random_element(sig11, rng, 10))
        assert all(rs11.is_irreducible(w) for w in nf.terms)


# completion

def test_inverse_overlap_resolves(sig11):
    k1, kb1 = sig11.gen("k", 1), sig11.gen("kb", 1)
    rs = RewriteSystem(degree_bound=3)
    queue: list = []
    rs.add_relation(k1 * kb1 - 1, "kkb", queue)
    rs.add_relation(kb1 * k1 - 1, "kbk", queue)
    rs = complete(rs, 3)
    assert len(rs) == 2 and rs.confluent
    assert rs.reduce(k1 * kb1 * k1) == k1


def test_empty_completion():
    rs = complete(RewriteSystem(), 5)
    assert len(rs) == 0 and rs.confluent and rs.closed_to == 5


def test_regression_rule_count_12_bound_8():
    rs = complete(build_rules(chevalley_presentation(AlgebraSignature(1, 2), True)), 8)
    assert len(rs) == 89 and rs.closed_to == 8


@pytest.mark.parametrize("mn,rules", [((1, 1), 36), ((1, 2), 91), ((2, 1), 87)])
def test_full_completion_is_finite(mn, rules):
    rs = rewrite_system(AlgebraSignature(*mn), 20)
    assert rs.confluent and len(rs) == rules


def test_rule_ceiling():
    rs = build_rules(chevalley_presentation(AlgebraSignature(1, 2), True))
    rs.max_rules = len(rs) + 2
    with pytest.raises(CompletionError, match="ceiling"):
        complete(rs, 8)


def test_fingerprint_is_deterministic():
    sig = AlgebraSignature(2, 1)
    a = complete(build_rules(chevalley_presentation(sig, True)), 6)
    b = complete(build_rules(chevalley_presentation(sig, True)), 6)
    assert a.fingerprint() == b.fingerprint() and len(a.fingerprint()) == 16


def test_default_bound(sig11):
    e1 = sig11.gen("e", 1)
    assert default_bound(e1 * e1 * e1, e1) == 10
    assert default_bound() == 4


@pytest.mark.parametrize("mn", [(1, 1), (1, 2)])
def test_random_order_confluence(mn):
    sig = AlgebraSignature(*mn)
    rs = rewrite_system(sig, 12)
    rng = random.Random(mn[1])
    for _ in range(25):
        x = random_element(sig, rng, 9)
        assert random_order_reduce(x, rs, rng) == rs.reduce(x)


# verdicts

def test_identical_sides(sig11, rs11):
    x = sig11.gen("e", 1) * sig11.gen("f", 2)
    v = verify_identity(x, x, rs11)
    assert v.status == "Proved" and v.reduction_steps == 0


def test_pair_relation_at_N_is_one_step(sig11, rs11):
    inst = next(i for i in theorem_instances(sig11) if i.key == "green-a-pair[2]")
    out = check_instance(inst, rs11)
    assert out["status"] == "Proved" and out["reduction_steps"] == 1


def test_mutation_is_refuted(sig11, rs11):
    out = check_instance(mutated_theorem_instance(sig11, "green-a-pair", 2), rs11)
    assert out["status"] == "Refuted"
    assert out["witness"] == "(k2 - kb2)/(q - q^-1)"


def test_inconclusive_beyond_closed_range():
    sig = AlgebraSignature(2, 1)
    rep = run_suite("theorem", sig, degree_bound=2)
    inc = [i for i in rep["instances"] if i["status"] == "Inconclusive"]
    assert inc and not rep["confluent"] and rep["counts"]["Refuted"] == 0
    assert all(i["witness"] and i["bound_used"] == 2 for i in inc)


def test_proved_is_monotone_in_bound():
    sig = AlgebraSignature(2, 1)
    previous: set = set()
    for bound in (2, 3, 4, 6, 8):
        rep = run_suite("theorem", sig, degree_bound=bound)
        proved = {i["key"] for i in rep["instances"] if i["status"] == "Proved"}
        assert previous <= proved
        previous = proved
    assert len(previous) == 56
