"""
Leftmost paths and a dishonest permutation
==========================================

The leftmost non-ascending path defeats a given martingale.  The dishonest
permutation occasionally pulls positions far forward, which is what lets
delayed copies be scheduled.
"""
from fractions import Fraction as F

from permrand import Delayed, FavorBit, WeightedSum
from permrand.constructions import DishonestPermutation, leftmost_path, p_k

L = WeightedSum((FavorBit("0", F(3, 2)), Delayed(FavorBit("1", F(3, 2)), 2)))
z = leftmost_path(L, 10)
print(z, [str(L.value(z[:m])) for m in range(11)])

s = DishonestPermutation()
print([s.forward(n) for n in range(20)])
for k in range(4):
    w = s.witnesses(k, 10 ** 4)[:5]
    print(k, w, [p_k(k, s.forward(n)) for n in w])
