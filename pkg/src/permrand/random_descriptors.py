"""Seeded generators of random descriptor trees for property checks."""
from __future__ import annotations

import random

from .bits import strings_upto
from .martingale import Constant, Delayed, FavorBit, Martingale, Savings, StakeTable, WeightedSum
from .rational import Fraction


def random_factor(rng: random.Random, denom: int = 8) -> Fraction:
    """A factor rho with 0 < rho < 2, on a grid of step 1/denom."""
    return Fraction(rng.randint(1, 2 * denom - 1), denom)


def random_table(rng: random.Random, depth: int, denom: int = 8) -> StakeTable:
    factors = {x: random_factor(rng, denom) for x in strings_upto(depth - 1)}
    return StakeTable.from_factors(factors, depth, initial=Fraction(rng.randint(1, 4), rng.randint(1, 3)))


def random_leaf(rng: random.Random, depth: int) -> Martingale:
    kind = rng.choice(("constant", "favor", "favor", "table"))
    if kind == "constant":
        return Constant(Fraction(rng.randint(1, 5), rng.randint(1, 3)))
    if kind == "favor":
        pattern = "".join(rng.choice("01") for _ in range(rng.randint(1, 3)))
        start = rng.randint(0, 2)
        stop = rng.choice((None, start + rng.randint(1, max(1, depth))))
        return FavorBit(pattern, random_factor(rng), start, stop)
    return random_table(rng, depth)


def random_martingale(rng: random.Random, depth: int, levels: int = 3) -> Martingale:
    """A random tree of at most ``levels`` composition layers.

    Stake tables are built with the given depth, so the result can be
    evaluated on every string of length <= depth.
    """
    if levels <= 0 or rng.random() < 0.3:
        return random_leaf(rng, depth)
    kind = rng.choice(("delayed", "sum", "savings"))
    if kind == "delayed":
        return Delayed(random_martingale(rng, depth, levels - 1), rng.randint(0, depth))
    if kind == "savings":
        return Savings(random_martingale(rng, depth, levels - 1))
    return WeightedSum(tuple(random_martingale(rng, depth, levels - 1)
                             for _ in range(rng.randint(1, 3))))
