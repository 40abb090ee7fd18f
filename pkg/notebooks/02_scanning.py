"""
Scanning functions and filling
==============================

A scanner chooses which position to read next.  Here we compare the
identity order, the pair swap and a block rearrangement.
"""
from permrand import (
    FromPermutation, Identity, PairSwap, PolynomialNat, Pseudorandom, compose_with_scanner,
    filling_bound, filling_check,
)
from permrand.constructions import BlockRearrangement

z = Pseudorandom(7)
for name, s in [("identity", Identity()), ("pair-swap", PairSwap()),
                ("rearrangement", BlockRearrangement(PolynomialNat((2, 1))))]:
    v = FromPermutation(s)
    print(name, compose_with_scanner(z, v, 16))
    bounds = [filling_bound(s, n) for n in range(1, 9)]
    print("  least filling bound for n=1..8:", bounds)

# One step short of the bound, the check names a run that misses a position.
print(filling_check(FromPermutation(PairSwap()), lambda n: n, 1))
