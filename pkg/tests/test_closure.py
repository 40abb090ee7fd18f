import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from permrand import (
    AveragingMartingale, BettingStrategy, Constant, ExplicitPrefix, FavorBit, FillingBound,
    FromPermutation, Identity, PairSwap, PolynomialNat, Pseudorandom, RuleScanner, Savings,
    average_report, averaging_value, compose_with_scanner, fairness_check,
    fairness_lemma_check, success_transfer_demo, t_independence_check,
)
from permrand.bits import strings, strings_upto
from permrand.constructions import BlockRearrangement
from permrand.errors import BudgetExceeded, PreconditionError
from permrand.random_descriptors import random_martingale

from oracles import brute_average, brute_consistent

P2 = PolynomialNat((2, 1))
first_bit = FavorBit("1", F(3, 2), stop=1)


def strategy(s, b, **kw):
    return BettingStrategy(FromPermutation(s), b, FillingBound(s), **kw)


def swap_example():
    return strategy(PairSwap(), first_bit)


def test_constant_b_averages_to_itself():
    for s in (Identity(), PairSwap(), BlockRearrangement(P2)):
        G = strategy(s, Constant(F(5, 3)))
        for w in strings_upto(3):
            assert averaging_value(G, w) == F(5, 3)


def test_identity_collapses_to_b():
    b = random_martingale(random.Random(2), 6)
    G = strategy(Identity(), b)
    for w in strings_upto(5):
        assert averaging_value(G, w) == b.value(w)


def test_pair_swap_example_values():
    G = swap_example()
    assert averaging_value(G, "1") == 1
    assert averaging_value(G, "01") == F(3, 2)
    rep = average_report(G, "01")
    assert rep.t == 2 and rep.consistent_count == 1


def test_pair_swap_t_independence():
    G = swap_example()
    assert t_independence_check(G, "1", 2, 3)
    assert averaging_value(G, "1", 3) == 1


def test_pair_swap_fairness_lemma():
    G = swap_example()
    assert averaging_value(G, "0") + averaging_value(G, "1") == 2 * averaging_value(G, "")
    assert fairness_lemma_check(G, 4).ok


def test_rearrangement_fairness_lemma():
    b = random_martingale(random.Random(8), 10)
    assert fairness_lemma_check(strategy(BlockRearrangement(P2), b), 3).ok


def test_polynomial_bound_for_pair_swap():
    G = BettingStrategy(FromPermutation(PairSwap()), first_bit, PolynomialNat((1, 1)))
    assert averaging_value(G, "01") == F(3, 2)


def test_certificate_rejects_non_filling_bound():
    with pytest.raises(PreconditionError):
        BettingStrategy(FromPermutation(PairSwap()), first_bit, PolynomialNat((0, 1)))


def test_t_below_bound_rejected():
    with pytest.raises(PreconditionError):
        averaging_value(swap_example(), "1", t=1)


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        averaging_value(swap_example(), "1", t=12, budget=2 ** 10)


def test_averaging_node_is_a_martingale():
    b = random_martingale(random.Random(4), 8)
    D = AveragingMartingale(BettingStrategy(RuleScanner("adaptive-pairs"), b, PolynomialNat((1, 1))))
    assert fairness_check(D, 4).ok


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from(["identity", "swap", "rearrange", "adaptive"]))
def test_matches_brute_force_oracle(seed, which):
    b = random_martingale(random.Random(seed), 9)
    if which == "adaptive":
        G = BettingStrategy(RuleScanner("adaptive-pairs"), b, PolynomialNat((1, 1)))
    else:
        G = strategy({"identity": Identity(), "swap": PairSwap(),
                      "rearrange": BlockRearrangement(P2)}[which], b)
    for w in strings_upto(3):
        t = G.g(len(w))
        assert averaging_value(G, w) == brute_average(G.scanner.query, b.value, w, t)
        assert averaging_value(G, w, t + 2) == averaging_value(G, w)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_average_dominates_minimum(seed):
    b = random_martingale(random.Random(seed), 9)
    G = strategy(BlockRearrangement(P2), b)
    for w in strings_upto(3):
        t = G.g(len(w))
        c = min(b.value(a) for a in strings(t) if brute_consistent(G.scanner.query, a, w))
        assert averaging_value(G, w) >= c


# --- success transfer -------------------------------------------------------

def test_success_transfer_for_path_follower():
    z = Pseudorandom(21)
    V = FromPermutation(PairSwap())
    y = compose_with_scanner(z, V, 24)
    b = Savings(FavorBit(y, F(3, 2), stop=len(y)))
    G = BettingStrategy(V, b, FillingBound(PairSwap()))
    rep = success_transfer_demo(G, z, 4, max_prefix=20)
    assert rep.found
    assert rep.D_value >= 4
    assert rep.w == z.prefix(rep.r)


def test_success_transfer_constant_fails_within_budget():
    G = strategy(PairSwap(), Constant())
    rep = success_transfer_demo(G, Pseudorandom(1), 2, max_prefix=10)
    assert not rep.found


def test_success_transfer_identity_doubler():
    G = strategy(Identity(), Savings(FavorBit("0", F(3, 2))))
    rep = success_transfer_demo(G, ExplicitPrefix(), 2, max_prefix=12)
    assert rep.found and rep.D_value >= 2
    assert rep.r <= 8


def test_success_transfer_through_rearrangement():
    s = BlockRearrangement(P2)
    z = Pseudorandom(5)
    V = FromPermutation(s)
    y = compose_with_scanner(z, V, 20)
    G = BettingStrategy(V, Savings(FavorBit(y, F(3, 2), stop=20)), FillingBound(s))
    rep = success_transfer_demo(G, z, 3, max_prefix=16)
    assert rep.found and rep.D_value >= 3
