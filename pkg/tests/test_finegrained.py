from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from causalgap import catalog
from causalgap.dist import DiscreteDistribution, marginalize, observed_marginal, random_model, uniform_over
from causalgap.errors import UnknownVariable, ZeroProbabilityEvent
from causalgap.finegrained import EQ1, FineGrainedInequality, Term, fine_grained_lhs_eq1, tilde_p, tilde_p_prime

Q = Fraction(1, 4)


def test_witness_tables():
    assert dict(tilde_p().mass) == {(0, 0, 0, 0): Q, (0, 1, 1, 0): Q, (1, 0, 0, 0): Q, (1, 1, 0, 1): Q}
    assert dict(tilde_p_prime().mass) == {(0, 0, 0, 0): Q, (0, 1, 1, 0): Q, (1, 0, 2, 0): Q, (1, 1, 2, 1): Q}
    for p in (tilde_p(), tilde_p_prime()):
        for v in ("A", "D"):
            assert dict(marginalize(p, {v}).mass) == {(0,): Fraction(1, 2), (1,): Fraction(1, 2)}


@pytest.mark.parametrize("p", [tilde_p(), tilde_p_prime()])
def test_witnesses_violate_eq1(p):
    lhs, rhs = fine_grained_lhs_eq1(p)
    assert lhs == pytest.approx(2.0, abs=1e-9) and rhs == pytest.approx(1.0, abs=1e-9)
    assert EQ1.violated_by(p)


def test_independent_bits_satisfy_eq1():
    p = uniform_over(tuple((n, 2) for n in "ADEF"), product((0, 1), repeat=4))
    lhs, rhs = fine_grained_lhs_eq1(p)
    assert lhs == pytest.approx(0.0, abs=1e-12) and rhs == pytest.approx(1.0)
    assert not EQ1.violated_by(p)


def test_eq1_errors():
    with pytest.raises(UnknownVariable):
        fine_grained_lhs_eq1(uniform_over((("A", 2), ("D", 2)), [(0, 0)]))
    a_fixed = uniform_over(tuple((n, 2) for n in "ADEF"), [(0, 0, 0, 0), (0, 1, 1, 1)])
    with pytest.raises(ZeroProbabilityEvent):
        fine_grained_lhs_eq1(a_fixed)


def test_inequality_validation():
    with pytest.raises(ValueError):
        FineGrainedInequality("bad", "A", (0, 1), (Term(1, {"A"}, {"D"}, set(), 0),), {"D"})
    with pytest.raises(ValueError):
        FineGrainedInequality("bad", "A", (0, 1), (Term(1, {"E"}, {"D"}, set(), 2),), {"D"})
    with pytest.raises(ValueError):
        Term(2, {"E"}, {"D"}, set(), 0)


@pytest.mark.parametrize("name", ["hlp-15", "hlp-16", "hlp-20"])
def test_eq1_holds_on_classical_models(name):
    g = catalog.get(name).graph
    for seed in range(40):
        p = observed_marginal(random_model(g, 2, seed, denominator=16))
        lhs, rhs = fine_grained_lhs_eq1(p, g)
        assert lhs <= rhs + 1e-9


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([2, 3]))
def test_eq1_holds_with_larger_alphabets(seed, card):
    g = catalog.get("hlp-15").graph
    cards = {"A": 2, "B": card, "C": card, "D": 2, "E": card, "F": card}
    p = observed_marginal(random_model(g, cards, seed, denominator=12))
    lhs, rhs = fine_grained_lhs_eq1(p, g)
    assert lhs <= rhs + 1e-9
