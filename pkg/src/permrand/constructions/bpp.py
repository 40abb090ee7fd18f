"""Interleaving, block rearrangement, and the bin and predictor martingales.

The set A and the randomized algorithm R are replaced by
:class:`SyntheticBPP`, whose error sets are explicit, so the error bound
that the argument relies on can be checked by enumeration.
"""
from __future__ import annotations

import hashlib
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Callable, Optional

from ..bits import CachedOracle, Permuted, Pseudorandom, SequenceOracle, parity, strings
from ..errors import BudgetExceeded, PreconditionError
from ..martingale import Martingale
from ..rational import Fraction, format_q
from ..scan import Permutation
from .polynomial import PolynomialNat

DEFAULT_P = PolynomialNat((6, 4))
DEFAULT_BUDGET = 2 ** 20

TARGETS: dict[str, Callable[[str], str]] = {
    "parity": parity,
    "zero": lambda x: "0",
}


# --- interleaving -------------------------------------------------------------


def interleave_Z(A: Callable[[str], str], B: SequenceOracle, length: int) -> str:
    """Z(2n) = B(n), Z(2n+1) = A(Z↾2n+1)."""
    z = ""
    while len(z) < length:
        m = len(z)
        z += B.bit(m // 2) if m % 2 == 0 else A(z)
    return z


@dataclass(frozen=True, eq=False)
class Interleaved(CachedOracle):
    target: str = "parity"
    b: SequenceOracle = None
    kind = "interleaved"

    def __post_init__(self):
        if self.target not in TARGETS:
            raise PreconditionError(f"unknown target {self.target!r}")

    def _next_bit(self, prefix):
        m = len(prefix)
        return self.b.bit(m // 2) if m % 2 == 0 else TARGETS[self.target](prefix)

    def to_doc(self):
        return {"kind": self.kind, "target": self.target, "b": self.b.to_doc()}


# --- block layout and rearrangement ----------------------------------------


def _least(pred) -> int:
    """Least n >= 0 with pred(n), for pred monotone in n."""
    hi = 1
    while not pred(hi):
        hi *= 2
    lo = 0
    while lo < hi:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


@dataclass(frozen=True, eq=False)
class BlockLayout:
    """Block n of the rearranged sequence: p(n) bits of B, then one A-bit.

    It occupies positions [P(n) + n, P(n+1) + n], where P(n) = sum_{k<n} p(k),
    and carries B(P(n)), ..., B(P(n+1) - 1).
    """

    p: PolynomialNat

    def start(self, n: int) -> int:
        return self.p.prefix_sum(n) + n

    def a_position(self, n: int) -> int:
        return self.p.prefix_sum(n + 1) + n

    def b_range(self, n: int) -> tuple[int, int]:
        return self.p.prefix_sum(n), self.p.prefix_sum(n + 1)

    def block_of(self, r: int) -> int:
        return _least(lambda n: self.a_position(n) >= r)

    def b_block_of(self, j: int) -> int:
        """Block holding B(j)."""
        return _least(lambda n: self.p.prefix_sum(n + 1) > j)

    def to_doc(self):
        return {"kind": "block-layout", "p": self.p.to_doc()}


@dataclass(frozen=True, eq=False)
class BlockRearrangement(Permutation):
    """S with Zhat(r) = Z(S(r)) for the block layout of p."""

    p: PolynomialNat
    kind = "block-rearrangement"

    @property
    def layout(self) -> BlockLayout:
        return BlockLayout(self.p)

    def forward(self, r):
        lay = self.layout
        n = lay.block_of(r)
        m = r - lay.start(n)
        if m < self.p(n):
            return 2 * (self.p.prefix_sum(n) + m)
        return 2 * n + 1

    def inverse(self, s):
        lay = self.layout
        if s % 2:
            return lay.a_position(s // 2)
        j = s // 2
        return j + lay.b_block_of(j)

    def to_doc(self):
        return {"kind": self.kind, "p": self.p.to_doc()}


def rearrangement_permutation(p: PolynomialNat, r: int) -> int:
    return BlockRearrangement(p).forward(r)


def rearrangement_inverse(p: PolynomialNat, s: int) -> int:
    return BlockRearrangement(p).inverse(s)


# --- synthetic randomized algorithm ----------------------------------------


@dataclass(frozen=True, eq=False)
class SyntheticBPP:
    """A(x) and R(x, y) = A(x) xor bad(x, y) with explicit error sets.

    For |x| = 2n+1 the error set of x holds ``bad_count(n)`` strings y of
    length p(n): those with int(y) xor key < bad_count(n). With rule
    ``"keyed"`` the key depends on x, with ``"shared"`` only on n (so all
    x share one error set), and ``"none"`` makes R always correct.
    ``bad_count`` defaults to the largest size allowed by error probability
    2^(-4n-2).
    """

    p: PolynomialNat = DEFAULT_P
    rule: str = "keyed"
    bad_count: Optional[int] = None
    seed: int = 0
    target: str = "parity"
    _keys: dict = field(default_factory=dict, init=False, repr=False)
    kind = "synthetic-bpp"

    def __post_init__(self):
        if self.rule not in ("keyed", "shared", "none"):
            raise PreconditionError(f"unknown bad-set rule {self.rule!r}")
        if self.target not in TARGETS:
            raise PreconditionError(f"unknown target {self.target!r}")
        if self.p(0) < 1:
            raise PreconditionError("p(0) >= 1 is needed so the predictor sees B(0..n) in time")

    def A(self, x: str) -> str:
        return TARGETS[self.target](x)

    def allowed_errors(self, n: int) -> int:
        e = self.p(n) - 4 * n - 2
        return 2 ** e if e >= 0 else 0

    def errors_at(self, n: int) -> int:
        if self.rule == "none":
            return 0
        k = self.allowed_errors(n) if self.bad_count is None else self.bad_count
        return min(k, 2 ** self.p(n))

    def _key(self, n: int, x: str) -> int:
        tag = x if self.rule == "keyed" else f"block{n}"
        if tag not in self._keys:
            h = hashlib.sha256(f"{self.seed}:{self.rule}:{tag}".encode()).digest()
            self._keys[tag] = int.from_bytes(h, "big")
        return self._keys[tag] % (2 ** self.p(n))

    def is_error(self, x: str, y: str) -> bool:
        n = _input_block(x)
        if len(y) != self.p(n):
            raise PreconditionError(f"expected {self.p(n)} random bits for |x| = {len(x)}, got {len(y)}")
        return (int(y or "0", 2) ^ self._key(n, x)) < self.errors_at(n)

    def R(self, x: str, y: str) -> str:
        a = self.A(x)
        return ("1" if a == "0" else "0") if self.is_error(x, y) else a

    def error_set(self, x: str) -> list[int]:
        """Random strings (as ints) on which R errs at x, read off the rule."""
        n = _input_block(x)
        key = self._key(n, x)
        return sorted(key ^ j for j in range(self.errors_at(n)))

    def block_bad_set(self, n: int) -> list[int]:
        """Union of the error sets over all x of length 2n+1."""
        bad = set()
        for x in strings(2 * n + 1):
            bad.update(self.error_set(x))
        return sorted(bad)

    def certificate_violation(self, n: int, budget: int = DEFAULT_BUDGET) -> Optional[str]:
        """Exhaustively count errors per x; return the first x exceeding the bound."""
        _check_budget(self, n, budget)
        allowed = self.allowed_errors(n)
        for x in strings(2 * n + 1):
            a = self.A(x)
            if sum(self.R(x, y) != a for y in strings(self.p(n))) > allowed:
                return x
        return None

    def to_doc(self):
        return {"kind": self.kind, "p": list(self.p.coefficients), "rule": self.rule,
                "bad_count": self.bad_count, "seed": self.seed, "target": self.target}


def _input_block(x: str) -> int:
    if len(x) % 2 == 0:
        raise PreconditionError("R takes inputs of odd length 2n+1")
    return (len(x) - 1) // 2


def _check_budget(alg: SyntheticBPP, n: int, budget: int) -> None:
    needed = 2 ** alg.p(n) * 2 ** (2 * n + 1)
    if needed > budget:
        raise BudgetExceeded(f"block {n} needs {needed} evaluations of R, budget {budget}",
                             needed, budget)


def bad_block_measure(alg: SyntheticBPP, n: int, budget: int = DEFAULT_BUDGET) -> Fraction:
    """Fraction of y in {0,1}^p(n) on which R errs for some x of length 2n+1.

    Computed by running R on every (x, y) pair.
    """
    _check_budget(alg, n, budget)
    xs = [(x, alg.A(x)) for x in strings(2 * n + 1)]
    count = sum(1 for y in strings(alg.p(n)) if any(alg.R(x, y) != a for x, a in xs))
    return Fraction(count, 2 ** alg.p(n))


def y_is_bad(alg: SyntheticBPP, n: int, y: str) -> bool:
    """Does y make R err on some input of length 2n+1?"""
    return any(alg.R(x, y) != alg.A(x) for x in strings(2 * n + 1))


# --- martingales on B and on the rearranged sequence -------------------------


@dataclass(frozen=True, eq=False)
class BinMartingale(Martingale):
    """Bets on B. Bin n holds 2^(-n-1) and, during B-block n, stakes it evenly
    on the random strings that make R err somewhere on inputs of length 2n+1.

    A bin whose block contains no bad string keeps its capital untouched.
    Bins are untouched before their block and frozen after it.
    """

    alg: SyntheticBPP = None
    _bad: dict = field(default_factory=dict, init=False, repr=False)
    kind = "bin"

    def bad_set(self, n: int) -> list[int]:
        if n not in self._bad:
            self._bad[n] = self.alg.block_bad_set(n)
        return self._bad[n]

    def bin_capital(self, x: str, n: int) -> Fraction:
        c = Fraction(1, 2 ** (n + 1))
        lo, hi = self.alg.p.prefix_sum(n), self.alg.p.prefix_sum(n + 1)
        if len(x) <= lo:
            return c
        bad = self.bad_set(n)
        if not bad:
            return c
        u = x[lo:hi]
        rest = (hi - lo) - len(u)
        head = int(u, 2) if u else 0
        count = bisect_left(bad, (head + 1) << rest) - bisect_left(bad, head << rest)
        return c * 2 ** len(u) * count / len(bad)

    def _value(self, x):
        total = Fraction(0)
        n = 0
        while self.alg.p.prefix_sum(n) < len(x):
            total += self.bin_capital(x, n)
            n += 1
        # bins n, n+1, ... are untouched: sum_{m>=n} 2^(-m-1)
        return total + Fraction(1, 2 ** n)

    def to_doc(self):
        return {"kind": self.kind, "alg": self.alg.to_doc()}


def bin_martingale(alg: SyntheticBPP) -> BinMartingale:
    return BinMartingale(alg)


@dataclass(frozen=True, eq=False)
class PredictorMartingale(Martingale):
    """Bets on the rearranged sequence.

    It does not bet on the p(n) random bits of block n. At the A-position
    of the block it rebuilds Z(0)..Z(2n) from what it has read, runs R with
    the block's random bits, and stakes half its capital on the answer.
    """

    alg: SyntheticBPP = None
    kind = "predictor"

    @property
    def permutation(self) -> BlockRearrangement:
        return BlockRearrangement(self.alg.p)

    def predict(self, x: str, n: int) -> str:
        lay = BlockLayout(self.alg.p)
        y = x[lay.start(n): lay.a_position(n)]
        s = self.permutation
        z = "".join(x[s.inverse(pos)] for pos in range(2 * n + 1))
        return self.alg.R(z, y)

    def _value(self, x):
        lay = BlockLayout(self.alg.p)
        v = Fraction(1)
        n = 0
        while lay.a_position(n) < len(x):
            a = lay.a_position(n)
            v *= Fraction(3, 2) if x[a] == self.predict(x[:a], n) else Fraction(1, 2)
            n += 1
        return v

    def to_doc(self):
        return {"kind": self.kind, "alg": self.alg.to_doc()}


def predictor_martingale(alg: SyntheticBPP) -> PredictorMartingale:
    return PredictorMartingale(alg)


# --- end-to-end run ---------------------------------------------------------


@dataclass
class BlockRow:
    n: int
    y: str
    is_bad: bool
    y_in_bad_set: bool
    H_factor: Fraction
    bin_capital: Fraction
    bin_gain: Fraction

    def to_doc(self):
        return {"n": self.n, "y": self.y, "is_bad": self.is_bad,
                "y_in_bad_set": self.y_in_bad_set, "H_factor": format_q(self.H_factor),
                "bin_capital": format_q(self.bin_capital), "bin_gain": format_q(self.bin_gain)}


@dataclass
class PipelineReport:
    blocks: list
    zhat: str
    H_capital: Fraction
    layout_matches: bool

    def to_doc(self):
        return {"blocks": [b.to_doc() for b in self.blocks], "zhat": self.zhat,
                "H_capital": format_q(self.H_capital), "layout_matches": self.layout_matches}


def run_pipeline(alg: SyntheticBPP, blocks: int, b: Optional[SequenceOracle] = None) -> PipelineReport:
    """Build Z from A and B, rearrange it, and play H and the bins on k blocks."""
    b = b if b is not None else Pseudorandom(alg.seed)
    z = Interleaved(alg.target, b)
    s = BlockRearrangement(alg.p)
    lay = s.layout
    length = lay.start(blocks)
    zhat = Permuted(z, s).prefix(length)

    direct = "".join(b.prefix(lay.b_range(n)[1])[lay.b_range(n)[0]:] + z.bit(2 * n + 1)
                     for n in range(blocks))

    H = PredictorMartingale(alg)
    bins = BinMartingale(alg)
    bprefix = b.prefix(lay.b_range(blocks)[0]) if blocks else ""
    rows = []
    for n in range(blocks):
        a = lay.a_position(n)
        y = zhat[lay.start(n): a]
        zn = z.prefix(2 * n + 1)
        cap = bins.bin_capital(bprefix[: lay.b_range(n)[1]], n)
        rows.append(BlockRow(
            n=n, y=y,
            is_bad=alg.R(zn, y) != alg.A(zn),
            y_in_bad_set=y_is_bad(alg, n, y),
            H_factor=H.value(zhat[: a + 1]) / H.value(zhat[:a]),
            bin_capital=cap,
            bin_gain=cap * 2 ** (n + 1),
        ))
    return PipelineReport(rows, zhat, H.value(zhat), direct == zhat)
