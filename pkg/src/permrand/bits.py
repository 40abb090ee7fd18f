"""Bit strings and infinite sequences.

Finite bit strings are plain ``str`` objects over ``"01"``; slicing gives
``x↾n`` and ``str.startswith`` gives the prefix relation. Infinite
sequences are :class:`SequenceOracle` objects answering one position at a
time.
"""
from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .errors import DescriptorError

BITS = "01"


def check_bits(x: str) -> str:
    if not isinstance(x, str) or x.strip(BITS):
        raise ValueError(f"not a bit string: {x!r}")
    return x


def is_prefix(alpha: str, beta: str) -> bool:
    """alpha ⊑ beta."""
    return beta.startswith(alpha)


def prefixes(x: str) -> Iterator[str]:
    """All prefixes of x, shortest first, including ε and x itself."""
    for n in range(len(x) + 1):
        yield x[:n]


def strings(n: int) -> Iterator[str]:
    """All bit strings of length n in lexicographic order."""
    for t in itertools.product(BITS, repeat=n):
        yield "".join(t)


def strings_upto(n: int) -> Iterator[str]:
    """All bit strings of length at most n, shorter ones first."""
    for m in range(n + 1):
        yield from strings(m)


def extensions(alpha: str, length: int) -> Iterator[str]:
    """All β ⊒ alpha with |β| = length (empty if length < |alpha|)."""
    for tail in strings(length - len(alpha)) if length >= len(alpha) else ():
        yield alpha + tail


def parity(x: str) -> str:
    return str(x.count("1") % 2)


# --- sequence oracles ------------------------------------------------------


class SequenceOracle:
    """A total map position -> bit, queried lazily.

    Subclasses implement :meth:`bit`; answers must never change.
    """

    kind = "abstract"

    def bit(self, n: int) -> str:
        raise NotImplementedError

    def __call__(self, n: int) -> str:
        return self.bit(n)

    def prefix(self, n: int) -> str:
        return "".join(self.bit(i) for i in range(n))

    def to_doc(self) -> dict:
        raise DescriptorError(f"{type(self).__name__} has no document form", self)


@dataclass(frozen=True, eq=False)
class ExplicitPrefix(SequenceOracle):
    """Given bits followed by a constant default bit."""

    bits: str = ""
    default: str = "0"
    kind = "explicit-prefix"

    def __post_init__(self):
        check_bits(self.bits)
        if self.default not in ("0", "1"):
            raise ValueError("default must be a single bit")

    def bit(self, n):
        return self.bits[n] if n < len(self.bits) else self.default

    def to_doc(self):
        return {"kind": self.kind, "bits": self.bits, "default": self.default}


@dataclass(frozen=True, eq=False)
class Periodic(SequenceOracle):
    """pattern repeated forever, e.g. ``Periodic("01")`` is 0101..."""

    pattern: str
    kind = "periodic"

    def __post_init__(self):
        if not self.pattern:
            raise ValueError("empty pattern")
        check_bits(self.pattern)

    def bit(self, n):
        return self.pattern[n % len(self.pattern)]

    def to_doc(self):
        return {"kind": self.kind, "pattern": self.pattern}


@dataclass(frozen=True, eq=False)
class Pseudorandom(SequenceOracle):
    """Seeded hash bits. Stands in for a highly random sequence."""

    seed: int = 0
    kind = "pseudorandom"

    def bit(self, n):
        digest = hashlib.sha256(f"permrand:{self.seed}:{n}".encode()).digest()
        return str(digest[0] & 1)

    def to_doc(self):
        return {"kind": self.kind, "seed": self.seed}


@dataclass(frozen=True, eq=False)
class FunctionOracle(SequenceOracle):
    """Wrap an arbitrary callable (not serializable)."""

    rule: Callable[[int], str]
    kind = "function"

    def bit(self, n):
        b = self.rule(n)
        return str(int(b)) if not isinstance(b, str) else b


@dataclass(frozen=True, eq=False)
class CachedOracle(SequenceOracle):
    """Base for oracles whose bit n depends on the bits before it.

    Bits are computed left to right and memoized; the cache is an
    implementation detail and never changes an answer.
    """

    _bits: list = field(default_factory=list, init=False, repr=False)

    def _next_bit(self, prefix: str) -> str:
        raise NotImplementedError

    def prefix(self, n):
        while len(self._bits) < n:
            self._bits.append(self._next_bit("".join(self._bits)))
        return "".join(self._bits[:n])

    def bit(self, n):
        return self.prefix(n + 1)[n]


@dataclass(frozen=True, eq=False)
class Permuted(SequenceOracle):
    """Z∘S, i.e. position r answers Z(S(r))."""

    base: SequenceOracle
    permutation: object
    kind = "permuted"

    def bit(self, n):
        return self.base.bit(self.permutation.forward(n))

    def to_doc(self):
        return {"kind": self.kind, "base": self.base.to_doc(),
                "permutation": self.permutation.to_doc()}
