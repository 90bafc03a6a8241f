import random

import pytest

from nclift import (Alphabet, CircuitBuilder, MatrixPoint, Scalar,
                    SquareMatrix, Word, circuit_equiv_brute,
                    circuit_equiv_random, eval_matrix, expand)
from nclift.randcircuits import (perturb_mul_order, random_circuit,
                                 swap_add_children)

PIT_P = 1_000_000_007
X3 = Alphabet("X", 3)


def _pair_xy_yx():
    b1 = CircuitBuilder(X3, PIT_P, name="xy")
    c1 = b1.finish(b1.mul(b1.var(0), b1.var(1)))
    b2 = CircuitBuilder(X3, PIT_P, name="yx")
    c2 = b2.finish(b2.mul(b2.var(1), b2.var(0)))
    return c1, c2


def test_brute_distinct_with_least_witness():
    c1, c2 = _pair_xy_yx()
    v = circuit_equiv_brute(c1, c2)
    assert v.result == "distinct"
    assert isinstance(v.witness, Word)
    assert v.witness.letters == (0, 1)      # length-lex first difference
    assert expand(c1).coeff(v.witness) != expand(c2).coeff(v.witness)
    assert not v.is_equal


def test_brute_equal_on_commuted_addition():
    b1 = CircuitBuilder(X3, PIT_P)
    c1 = b1.finish(b1.add(b1.var(0), b1.var(1)))
    b2 = CircuitBuilder(X3, PIT_P)
    c2 = b2.finish(b2.add(b2.var(1), b2.var(0)))
    v = circuit_equiv_brute(c1, c2)
    assert v.is_equal
    assert v.witness is None


def test_brute_budget_is_inconclusive():
    c1, c2 = _pair_xy_yx()
    v = circuit_equiv_brute(c1, c2, max_terms=0)
    assert v.result == "inconclusive-budget"
    assert not v.is_equal


def test_random_distinct_with_reusable_point():
    c1, c2 = _pair_xy_yx()
    v = circuit_equiv_random(c1, c2, trials=10, seed=3)
    assert v.result == "distinct"
    assert isinstance(v.witness, MatrixPoint)
    mats = {i: SquareMatrix([[Scalar(e, PIT_P) for e in row]
                             for row in rows])
            for i, rows in v.witness.mats}
    assert eval_matrix(c1, mats) != eval_matrix(c2, mats)


def test_random_dimension_floor():
    c1, c2 = _pair_xy_yx()
    # Degree 2 needs dimension at least 2.
    with pytest.raises(ValueError):
        circuit_equiv_random(c1, c2, dim=1)
    assert circuit_equiv_random(c1, c2, dim=2, seed=0).result == "distinct"


def test_random_equal_on_identical_series():
    b1 = CircuitBuilder(X3, PIT_P)
    c1 = b1.finish(b1.mul(b1.add(b1.var(0), b1.var(1)), b1.var(2)))
    b2 = CircuitBuilder(X3, PIT_P)
    c2 = b2.finish(b2.add(b2.mul(b2.var(0), b2.var(2)),
                          b2.mul(b2.var(1), b2.var(2))))
    assert circuit_equiv_random(c1, c2, trials=10, seed=1).is_equal
    assert circuit_equiv_brute(c1, c2).is_equal


def test_random_never_contradicts_brute():
    rng = random.Random(404)
    X8 = Alphabet("X", 8)
    agree = 0
    for i in range(25):
        base = random_circuit(X8, PIT_P, rng, max_gates=12, max_degree=6)
        if i % 2 == 0:
            other = swap_add_children(base, rng)
        else:
            other = perturb_mul_order(base, rng)
        if other is None:
            continue
        brute = circuit_equiv_brute(base, other)
        rand = circuit_equiv_random(base, other, trials=10, dim=4,
                                    seed=1000 + i)
        assert brute.result in ("equal", "distinct")
        if rand.result == "distinct":
            assert brute.result == "distinct"
        if brute.result == "equal":
            assert rand.result == "equal"
        agree += 1
    assert agree >= 15


def test_modulus_mismatch_rejected():
    b1 = CircuitBuilder(X3, PIT_P)
    c1 = b1.finish(b1.var(0))
    b2 = CircuitBuilder(X3, 7)
    c2 = b2.finish(b2.var(0))
    with pytest.raises(ValueError):
        circuit_equiv_brute(c1, c2)
