"""
The averaging martingale
========================

Turn a scanned strategy back into an ordinary one by averaging over all
runs consistent with what has been seen.
"""
from fractions import Fraction as F

from permrand import (
    BettingStrategy, FavorBit, FillingBound, FromPermutation, PairSwap, average_report,
    fairness_lemma_check, t_independence_check,
)

# Bet 3/2 on a 1 at the first read; the pair swap reads position 1 first.
G = BettingStrategy(FromPermutation(PairSwap()), FavorBit("1", F(3, 2), stop=1),
                    FillingBound(PairSwap()))
for w in ["", "0", "1", "00", "01", "10", "11"]:
    rep = average_report(G, w)
    print(repr(w), rep.value, "over", rep.consistent_count, "consistent runs")

print(fairness_lemma_check(G, 4))
print("longer runs give the same value:", t_independence_check(G, "01", 2, 5))
