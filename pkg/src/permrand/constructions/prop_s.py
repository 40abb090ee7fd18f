"""Delayed copies, delay points, the leftmost non-ascending path, and a dishonest permutation.

The resource bounds of the original construction are replaced by
explicitly supplied polynomials; everything else is carried out exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt
from typing import Optional, Sequence

from ..bits import CachedOracle
from ..errors import PreconditionError
from ..martingale import Delayed, Martingale, WeightedSum
from ..scan import Permutation
from .polynomial import PolynomialNat


def leftmost_path(L: Martingale, length: int) -> str:
    """Z↾length with Z(m) = 0 iff L(Z↾m 0) <= L(Z↾m)."""
    z = ""
    for _ in range(length):
        z += "0" if L.value(z + "0") <= L.value(z) else "1"
    return z


@dataclass(frozen=True, eq=False)
class LeftmostPath(CachedOracle):
    """The leftmost non-ascending path of L as an infinite sequence."""

    martingale: Martingale = None
    kind = "leftmost-path"

    def _next_bit(self, prefix):
        L = self.martingale
        return "0" if L.value(prefix + "0") <= L.value(prefix) else "1"

    def to_doc(self):
        return {"kind": self.kind, "martingale": self.martingale.to_doc()}


# --- delay points -----------------------------------------------------------


@dataclass
class DelayPoints:
    points: list
    exhausted: bool = False
    searched_to: int = 0

    def to_doc(self):
        return {"points": list(self.points), "exhausted": self.exhausted,
                "searched_to": self.searched_to}


def delay_points(b_list: Sequence[Martingale], q_list: Sequence[PolynomialNat],
                 s: Permutation, k_max: int, budget: int = 10 ** 5) -> DelayPoints:
    """n_0 = 0 and n_{k+1} = least n > n_k with q_k(S(n) + 1) <= n.

    ``q_list[k]`` plays the time bound for the partial sum of the first
    k + 1 delayed copies; ``b_list`` only fixes how many copies there are.
    The search stops at ``budget`` and flags the list as exhausted.
    """
    if len(q_list) < k_max or len(b_list) < k_max + 1:
        raise PreconditionError("need k_max + 1 martingales and k_max polynomials")
    for k, q in enumerate(q_list[:k_max]):
        # q_k(n) >= n + 2 for all n iff it holds at 0 and 1 (natural coefficients)
        if q(0) < 2 or q(1) < 3:
            raise PreconditionError(f"q_{k} must satisfy q(n) >= n + 2")
    points = [0]
    n = 0
    for k in range(k_max):
        q = q_list[k]
        n = points[-1] + 1
        while n <= budget and q(s.forward(n) + 1) > n:
            n += 1
        if n > budget:
            return DelayPoints(points, True, budget)
        points.append(n)
    return DelayPoints(points, False, n)


def delayed_sum(b_list: Sequence[Martingale], points: Sequence[int]) -> WeightedSum:
    """L = sum_r 2^-r B_{r, n_r} truncated after the known delay points."""
    return WeightedSum(tuple(Delayed(b, n) for b, n in zip(b_list, points)))


# --- dishonest permutation --------------------------------------------------


def pair(k: int, i: int) -> int:
    """Cantor pairing."""
    return (k + i) * (k + i + 1) // 2 + i


def unpair(n: int) -> tuple[int, int]:
    s = (isqrt(8 * n + 1) - 1) // 2
    i = n - s * (s + 1) // 2
    return s - i, i


def p_k(k: int, u: int) -> int:
    """k (u^k + 1)."""
    return k * (u ** k + 1)


@dataclass(frozen=True, eq=False)
class DishonestPermutation(Permutation):
    """Row k = {<k,i>} is a finite cycle <k,0> -> <k,1> -> ... -> <k,i*> -> <k,0>.

    i* is least with p_k(<k,0>) <= <k,i*>; positions past it are fixed. So
    S(<k,i*>) = <k,0> is far below its argument, infinitely often for every
    polynomial in the family.
    """

    _cycle: dict = field(default_factory=dict, init=False, repr=False)
    kind = "dishonest"

    def threshold(self, k: int) -> int:
        return p_k(k, pair(k, 0))

    def cycle_end(self, k: int) -> int:
        """i*, found by bisection since pair(k, i) is increasing in i."""
        if k not in self._cycle:
            t = self.threshold(k)
            lo, hi = 0, 1
            while pair(k, hi) < t:
                lo, hi = hi, 2 * hi
            while lo < hi:
                mid = (lo + hi) // 2
                if pair(k, mid) >= t:
                    hi = mid
                else:
                    lo = mid + 1
            self._cycle[k] = lo
        return self._cycle[k]

    def forward(self, n):
        k, i = unpair(n)
        end = self.cycle_end(k)
        if i < end:
            return pair(k, i + 1)
        if i == end:
            return pair(k, 0)
        return n

    def inverse(self, n):
        k, i = unpair(n)
        end = self.cycle_end(k)
        if i == 0:
            return pair(k, end)
        if i <= end:
            return pair(k, i - 1)
        return n

    def witnesses(self, k: int, limit: int) -> list[int]:
        """All n < limit with p_k(S(n)) <= n."""
        return [n for n in range(limit) if p_k(k, self.forward(n)) <= n]

    def to_doc(self):
        return {"kind": self.kind}


def dishonest_permutation(n: int) -> int:
    return _DISHONEST.forward(n)


def dishonest_inverse(n: int) -> int:
    return _DISHONEST.inverse(n)


_DISHONEST = DishonestPermutation()
