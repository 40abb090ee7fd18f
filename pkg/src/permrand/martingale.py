"""Martingales as descriptor trees with exact rational values.

A martingale here is any object with ``value(x) -> Fraction`` on bit
strings. The node kinds below compose into trees; every node memoizes its
values, which is safe because nodes are immutable once built.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .bits import SequenceOracle, check_bits, strings, strings_upto
from .errors import DescriptorError, OutOfDepth, PreconditionError
from .rational import Fraction, as_fraction, format_q

ONE = Fraction(1)


@dataclass(frozen=True, eq=False)
class Martingale:
    """Base node. Subclasses implement ``_value``."""

    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)
    kind = "abstract"

    def value(self, x: str) -> Fraction:
        try:
            return self._cache[x]
        except KeyError:
            pass
        v = self._value(x)
        self._cache[x] = v
        return v

    __call__ = value

    def _value(self, x: str) -> Fraction:
        raise NotImplementedError

    def to_doc(self) -> dict:
        raise DescriptorError(f"{type(self).__name__} has no document form", self)


def _check_factor(factor) -> Fraction:
    rho = as_fraction(factor)
    if not 0 < rho < 2:
        raise PreconditionError(f"betting factor must satisfy 0 < rho < 2, got {rho}")
    return rho


@dataclass(frozen=True, eq=False)
class Constant(Martingale):
    c: Fraction = ONE
    kind = "constant"

    def __post_init__(self):
        object.__setattr__(self, "c", as_fraction(self.c))
        if self.c <= 0:
            raise PreconditionError("constant martingale must be positive")

    def _value(self, x):
        return self.c

    def to_doc(self):
        return {"kind": self.kind, "c": format_q(self.c)}


@dataclass(frozen=True, eq=False)
class StakeTable(Martingale):
    """Explicit values at every string of length <= depth.

    Nothing forces the table to be fair or positive; that is what
    :func:`fairness_check` is for. Missing entries surface as
    :class:`DescriptorError` on evaluation.
    """

    values: dict = field(default_factory=dict)
    depth: int = 0
    kind = "stake-table"

    def __post_init__(self):
        if self.depth < 0:
            raise PreconditionError("depth must be >= 0")
        clean = {}
        for x, v in self.values.items():
            check_bits(x)
            if len(x) > self.depth:
                raise DescriptorError(f"entry {x!r} deeper than declared depth {self.depth}", self)
            clean[x] = as_fraction(v)
        object.__setattr__(self, "values", clean)

    @classmethod
    def from_factors(cls, factors: dict, depth: int, initial=1) -> "StakeTable":
        """Fair table from per-node factors: M(x0) = rho_x M(x), M(x1) = (2 - rho_x) M(x).

        Nodes missing from ``factors`` do not bet.
        """
        values = {"": as_fraction(initial)}
        for x in strings_upto(depth - 1):
            rho = _check_factor(factors.get(x, ONE))
            values[x + "0"] = values[x] * rho
            values[x + "1"] = values[x] * (2 - rho)
        return cls(values=values, depth=depth)

    @classmethod
    def tabulate(cls, m: Martingale, depth: int) -> "StakeTable":
        return cls(values={x: m.value(x) for x in strings_upto(depth)}, depth=depth)

    def _value(self, x):
        if len(x) > self.depth:
            raise OutOfDepth(f"stake table of depth {self.depth} queried at length {len(x)}", self)
        try:
            return self.values[x]
        except KeyError:
            raise DescriptorError(f"stake table has no entry for {x!r}", self) from None

    def to_doc(self):
        return {"kind": self.kind, "depth": self.depth,
                "values": {x: format_q(v) for x, v in sorted(self.values.items(),
                                                              key=lambda kv: (len(kv[0]), kv[0]))}}


@dataclass(frozen=True, eq=False)
class FavorBit(Martingale):
    """Bets factor rho on a predicted bit at each position in [start, stop).

    The predicted bit at position m is ``pattern[m % len(pattern)]``, so
    ``FavorBit("0")`` always favors 0 and ``FavorBit(y, stop=len(y))``
    follows the finite path y and stops betting after it.
    """

    pattern: str = "0"
    factor: Fraction = Fraction(3, 2)
    start: int = 0
    stop: Optional[int] = None
    initial: Fraction = ONE
    kind = "favor-bit"

    def __post_init__(self):
        if not self.pattern:
            raise PreconditionError("pattern must be non-empty")
        check_bits(self.pattern)
        object.__setattr__(self, "factor", _check_factor(self.factor))
        object.__setattr__(self, "initial", as_fraction(self.initial))
        if self.initial <= 0:
            raise PreconditionError("initial capital must be positive")

    def bets_at(self, m: int) -> bool:
        return m >= self.start and (self.stop is None or m < self.stop)

    def _value(self, x):
        v = self.initial
        win, lose = self.factor, 2 - self.factor
        for m, b in enumerate(x):
            if self.bets_at(m):
                v *= win if b == self.pattern[m % len(self.pattern)] else lose
        return v

    def to_doc(self):
        doc = {"kind": self.kind, "pattern": self.pattern, "factor": format_q(self.factor),
               "start": self.start, "stop": self.stop}
        if self.initial != 1:
            doc["initial"] = format_q(self.initial)
        return doc


@dataclass(frozen=True, eq=False)
class Delayed(Martingale):
    """Capital 1 until length n, then B's betting factors: B(x)/B(x↾n)."""

    child: Martingale = None
    n: int = 0
    kind = "delayed"

    def __post_init__(self):
        if self.child is None:
            raise PreconditionError("delayed needs a child martingale")
        if self.n < 0:
            raise PreconditionError("delay must be >= 0")

    def _value(self, x):
        if len(x) <= self.n:
            return ONE
        base = self.child.value(x[: self.n])
        if base <= 0:
            raise DescriptorError(f"child is not positive at {x[:self.n]!r}", self.child)
        return self.child.value(x) / base

    def to_doc(self):
        return {"kind": self.kind, "n": self.n, "child": self.child.to_doc()}


@dataclass(frozen=True, eq=False)
class WeightedSum(Martingale):
    """sum_r 2^-r child_r + 2^-k_max, the tail standing for copies not yet started."""

    children: tuple = ()
    kind = "weighted-sum"

    def __post_init__(self):
        if not self.children:
            raise PreconditionError("weighted sum needs at least one child")
        object.__setattr__(self, "children", tuple(self.children))

    @property
    def k_max(self) -> int:
        return len(self.children) - 1

    @property
    def tail(self) -> Fraction:
        return Fraction(1, 2 ** self.k_max)

    def _value(self, x):
        total = self.tail
        for r, child in enumerate(self.children):
            total += Fraction(child.value(x), 2 ** r)
        return total

    def to_doc(self):
        return {"kind": self.kind, "children": [c.to_doc() for c in self.children]}


@dataclass(frozen=True, eq=False)
class Savings(Martingale):
    """Two-account savings transform of a positive martingale.

    The betting account starts at 1 and follows the child's relative
    stakes. Whenever it reaches 2 or more, everything above 1 moves to the
    savings account, which never decreases. The sum of both accounts is
    the value.
    """

    child: Martingale = None
    kind = "savings"

    def __post_init__(self):
        if self.child is None:
            raise PreconditionError("savings needs a child martingale")

    def accounts(self, x: str) -> tuple[Fraction, Fraction]:
        """(savings, betting account) after reading x."""
        key = ("acct", x)
        if key in self._cache:
            return self._cache[key]
        if not x:
            result = (Fraction(0), ONE)
        else:
            s, a = self.accounts(x[:-1])
            prev, cur = self.child.value(x[:-1]), self.child.value(x)
            if prev <= 0 or cur <= 0:
                raise DescriptorError(f"child is not positive along {x!r}", self.child)
            a = a * cur / prev
            if a >= 2:
                s, a = s + a - 1, ONE
            result = (s, a)
        self._cache[key] = result
        return result

    def _value(self, x):
        s, a = self.accounts(x)
        return s + a

    def to_doc(self):
        return {"kind": self.kind, "child": self.child.to_doc()}


# --- operations -------------------------------------------------------------


def delayed(b: Martingale, n: int) -> Delayed:
    return Delayed(b, n)


def weighted_sum(children: Sequence[Martingale], k_max: Optional[int] = None) -> WeightedSum:
    children = tuple(children)
    if not children:
        raise PreconditionError("weighted sum needs at least one child")
    if k_max is not None and k_max != len(children) - 1:
        raise PreconditionError(f"expected {k_max + 1} children for k_max={k_max}, got {len(children)}")
    return WeightedSum(children)


def savings_transform(m: Martingale) -> Savings:
    return Savings(m)


@dataclass
class FairnessReport:
    ok: bool
    depth: int
    nodes_checked: int = 0
    violation: Optional[str] = None
    reason: Optional[str] = None
    node: Optional[str] = None

    def to_doc(self) -> dict:
        return {"ok": self.ok, "depth": self.depth, "nodes_checked": self.nodes_checked,
                "violation": self.violation, "reason": self.reason, "node": self.node}


def fairness_check(m: Martingale, depth: int) -> FairnessReport:
    """Check 2 M(x) = M(x0) + M(x1) and positivity for all |x| < depth.

    Strings are visited in length-lexicographic order and the first
    failure is reported. Evaluation errors (e.g. a malformed stake table)
    are reported with the offending node rather than raised.
    """
    if depth < 0:
        raise PreconditionError("depth must be >= 0")
    checked = 0
    for n in range(depth):
        for x in strings(n):
            try:
                v, v0, v1 = m.value(x), m.value(x + "0"), m.value(x + "1")
            except DescriptorError as err:
                node = err.node.kind if err.node is not None else None
                return FairnessReport(False, depth, checked, x, f"evaluation failed: {err}", node)
            for y, val in ((x, v), (x + "0", v0), (x + "1", v1)):
                if val <= 0:
                    return FairnessReport(False, depth, checked, y, f"non-positive value {format_q(val)}")
            if 2 * v != v0 + v1:
                return FairnessReport(
                    False, depth, checked, x,
                    f"2*{format_q(v)} != {format_q(v0)} + {format_q(v1)}")
            checked += 1
    return FairnessReport(True, depth, checked)


def capital_trace(m: Martingale, z: SequenceOracle, steps: int) -> list[tuple[int, Fraction]]:
    """M(Z↾n) for n = 0..steps."""
    if steps < 0:
        raise PreconditionError("steps must be >= 0")
    prefix = z.prefix(steps)
    return [(n, m.value(prefix[:n])) for n in range(steps + 1)]


def trace_csv(m: Martingale, z: SequenceOracle, steps: int) -> str:
    prefix = z.prefix(steps)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["step", "prefix", "numerator", "denominator"])
    for n, v in capital_trace(m, z, steps):
        w.writerow([n, prefix[:n], v.numerator, v.denominator])
    return buf.getvalue()


def does_not_bet_at(m: Martingale, n: int) -> bool:
    """True iff M(x0) = M(x1) for every x of length n."""
    return all(m.value(x + "0") == m.value(x + "1") for x in strings(n))


def iter_nodes(m: Martingale) -> Iterable[Martingale]:
    yield m
    for attr in ("child",):
        sub = getattr(m, attr, None)
        if isinstance(sub, Martingale):
            yield from iter_nodes(sub)
    for sub in getattr(m, "children", ()) or ():
        yield from iter_nodes(sub)
