"""
Martingales as descriptor trees
===============================

Build a few betting strategies, check that they are fair, and watch the
savings account bank each doubling.
"""
from fractions import Fraction as F

from permrand import (
    Constant, Delayed, FavorBit, Periodic, Savings, capital_trace, fairness_check, weighted_sum,
)

# A strategy that always stakes on 0 at odds 3/2.
favor0 = FavorBit("0", F(3, 2))
print(fairness_check(favor0, 8))

# Mix it with a copy that waits two steps, plus a constant.
mix = weighted_sum([Constant(), Delayed(favor0, 2)])
print("mix on 0000:", mix.value("0000"))

# The savings form never drops more than 2 below any earlier value.
s = Savings(favor0)
for n, v in capital_trace(s, Periodic("001"), 9):
    print(n, v, s.accounts(Periodic("001").prefix(n)))
