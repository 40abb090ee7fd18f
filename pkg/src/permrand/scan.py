"""Permutations of positions, scanning functions, and the relations between them.

A scanning function maps a run (the string of answers received so far) to
the next position to query. A permutation S becomes the oblivious scanner
V_S(α) = S(|α|).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .bits import SequenceOracle, check_bits
from .errors import BudgetExceeded, DescriptorError, OutOfDepth, PreconditionError

DEFAULT_BUDGET = 2 ** 20


# --- permutations -------------------------------------------------------------


class Permutation:
    """A bijection of the naturals, with its inverse."""

    kind = "abstract"

    def forward(self, n: int) -> int:
        raise NotImplementedError

    def inverse(self, n: int) -> int:
        raise NotImplementedError

    def __call__(self, n: int) -> int:
        return self.forward(n)

    def to_doc(self) -> dict:
        raise DescriptorError(f"{type(self).__name__} has no document form", self)


class Identity(Permutation):
    kind = "identity"

    def forward(self, n):
        return n

    inverse = forward

    def to_doc(self):
        return {"kind": self.kind}


class PairSwap(Permutation):
    """0<->1, 2<->3, ..."""

    kind = "pair-swap"

    def forward(self, n):
        return n ^ 1

    inverse = forward

    def to_doc(self):
        return {"kind": self.kind}


@dataclass(frozen=True, eq=False)
class TablePermutation(Permutation):
    """Explicit bijection of [0, size); identity outside."""

    table: tuple
    kind = "table"

    def __post_init__(self):
        table = tuple(int(v) for v in self.table)
        if sorted(table) != list(range(len(table))):
            raise DescriptorError("table is not a bijection of [0, N)", self)
        inv = [0] * len(table)
        for n, v in enumerate(table):
            inv[v] = n
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "_inv", tuple(inv))

    @classmethod
    def from_pairs(cls, pairs: dict, size: Optional[int] = None) -> "TablePermutation":
        size = size if size is not None else 1 + max(max(pairs), max(pairs.values()), -1)
        return cls(tuple(pairs.get(n, n) for n in range(size)))

    @property
    def size(self) -> int:
        return len(self.table)

    def forward(self, n):
        return self.table[n] if n < len(self.table) else n

    def inverse(self, n):
        return self._inv[n] if n < len(self._inv) else n

    def to_doc(self):
        return {"kind": self.kind, "pairs": [[n, v] for n, v in enumerate(self.table)]}


def check_bijection(s: Permutation, size: int) -> Optional[int]:
    """First n < size where the round trips fail, or None."""
    for n in range(size):
        if s.inverse(s.forward(n)) != n or s.forward(s.inverse(n)) != n:
            return n
    return None


# --- scanning functions -------------------------------------------------------


class ScanningFunction:
    """Maps a run α to the position queried at step |α|.

    ``oblivious`` is True when the query depends only on |α|; brute-force
    checks then need to look at a single run per length.
    """

    kind = "abstract"
    oblivious = False

    def query(self, alpha: str) -> int:
        raise NotImplementedError

    def __call__(self, alpha: str) -> int:
        return self.query(alpha)

    def query_bound(self, t: int) -> Optional[int]:
        """Largest position any run of length t may query, if declared."""
        return None

    def to_doc(self) -> dict:
        raise DescriptorError(f"{type(self).__name__} has no document form", self)


@dataclass(frozen=True, eq=False)
class FromPermutation(ScanningFunction):
    permutation: Permutation
    kind = "from-permutation"
    oblivious = True

    def query(self, alpha):
        return self.permutation.forward(len(alpha))

    def to_doc(self):
        return {"kind": self.kind, "permutation": self.permutation.to_doc()}


@dataclass(frozen=True, eq=False)
class TableScanner(ScanningFunction):
    """Queries listed explicitly for every run shorter than depth."""

    table: dict = field(default_factory=dict)
    depth: int = 0
    kind = "table"

    def __post_init__(self):
        clean = {}
        for alpha, pos in self.table.items():
            check_bits(alpha)
            if len(alpha) >= self.depth:
                raise DescriptorError(f"run {alpha!r} not shorter than depth {self.depth}", self)
            clean[alpha] = int(pos)
        object.__setattr__(self, "table", clean)

    def query(self, alpha):
        if len(alpha) >= self.depth:
            raise OutOfDepth(f"table scanner of depth {self.depth} queried at run {alpha!r}", self)
        try:
            return self.table[alpha]
        except KeyError:
            raise DescriptorError(f"table scanner has no entry for {alpha!r}", self) from None

    def to_doc(self):
        return {"kind": self.kind, "depth": self.depth,
                "table": dict(sorted(self.table.items(), key=lambda kv: (len(kv[0]), kv[0])))}


def _adaptive_pairs(alpha: str) -> int:
    # Pair j = {2j, 2j+1}; after a 1 the next pair is read high position first.
    i = len(alpha)
    j, second = divmod(i, 2)
    flip = j > 0 and alpha[2 * j - 1] == "1"
    first = 2 * j + (1 if flip else 0)
    return first ^ 1 if second else first


BUILTIN_RULES: dict[str, tuple[Callable[[str], int], Callable[[int], int]]] = {
    "adaptive-pairs": (_adaptive_pairs, lambda t: t + 1),
}


@dataclass(frozen=True, eq=False)
class RuleScanner(ScanningFunction):
    """Programmatic scanner with a declared query bound.

    Named rules come from ``BUILTIN_RULES`` and serialize by name; ad hoc
    callables work but have no document form.
    """

    name: str = ""
    rule: Optional[Callable[[str], int]] = None
    bound: Optional[Callable[[int], int]] = None
    kind = "rule"

    def __post_init__(self):
        if self.rule is None:
            if self.name not in BUILTIN_RULES:
                raise DescriptorError(f"unknown scanner rule {self.name!r}", self)
            rule, bound = BUILTIN_RULES[self.name]
            object.__setattr__(self, "rule", rule)
            object.__setattr__(self, "bound", bound)
        if self.bound is None:
            raise PreconditionError("programmatic scanners must declare a query bound")

    def query(self, alpha):
        pos = self.rule(alpha)
        limit = self.bound(len(alpha))
        if pos > limit:
            raise DescriptorError(f"rule queried {pos} beyond its declared bound {limit}", self)
        return pos

    def query_bound(self, t):
        return self.bound(t)

    def to_doc(self):
        if self.name not in BUILTIN_RULES:
            return super().to_doc()
        return {"kind": self.kind, "name": self.name}


def permutation_to_scanner(s: Permutation) -> FromPermutation:
    return FromPermutation(s)


def run_queries(v: ScanningFunction, alpha: str) -> list[int]:
    """The queries V(α↾0), ..., V(α↾(|α|-1))."""
    return [v.query(alpha[:i]) for i in range(len(alpha))]


def check_non_repetition(v: ScanningFunction, depth: int) -> Optional[str]:
    """First run (length <= depth) whose last query repeats an earlier one."""
    stack = [("", frozenset())]
    while stack:
        alpha, seen = stack.pop()
        q = v.query(alpha)
        if q in seen:
            return alpha
        if len(alpha) < depth:
            seen = seen | {q}
            stack.append((alpha + "1", seen))
            stack.append((alpha + "0", seen))
    return None


def compose_with_scanner(z: SequenceOracle, v: ScanningFunction, n: int) -> str:
    """(Z∘V)↾n via Y(i) = Z(V(Y↾i))."""
    y = ""
    for _ in range(n):
        y += z.bit(v.query(y))
    return y


def compose_with_permutation(z: SequenceOracle, s: Permutation, n: int) -> str:
    """(Z∘S)↾n positionwise."""
    return "".join(z.bit(s.forward(i)) for i in range(n))


def consistent(v: ScanningFunction, alpha: str, w: str) -> bool:
    """α ∼_V w: every query of the run below |w| was answered as w says."""
    for j in range(len(alpha)):
        x = v.query(alpha[:j])
        if x < len(w) and w[x] != alpha[j]:
            return False
    return True


# --- filling ------------------------------------------------------------------


@dataclass
class FillingReport:
    ok: bool
    n: int
    run_length: int
    witness_run: Optional[str] = None
    missed_position: Optional[int] = None
    runs_enumerated: int = 0

    def to_doc(self) -> dict:
        return {"ok": self.ok, "n": self.n, "run_length": self.run_length,
                "witness_run": self.witness_run, "missed_position": self.missed_position,
                "runs_enumerated": self.runs_enumerated}


def filling_check(v: ScanningFunction, g: Callable[[int], int], n: int,
                  budget: int = DEFAULT_BUDGET) -> FillingReport:
    """Does every run of length g(n) query every position below n?

    Runs are explored in lexicographic order, so a failing report carries
    the lexicographically least witness. Oblivious scanners ask the same
    questions on every run, so only the all-zero run is inspected.
    """
    length = g(n)
    if length < 0:
        raise PreconditionError("g(n) must be a natural number")
    if v.oblivious:
        alpha = "0" * length
        missed = _first_missed(run_queries(v, alpha), n)
        if missed is None:
            return FillingReport(True, n, length, runs_enumerated=1)
        return FillingReport(False, n, length, alpha, missed, 1)
    if 2 ** length > budget:
        raise BudgetExceeded(f"filling check needs 2^{length} runs, budget {budget}",
                             2 ** length, budget)
    visited = 0
    # DFS in 0-first order; a subtree whose prefix already covers [0, n) cannot fail.
    stack = [("", frozenset())]
    while stack:
        alpha, seen = stack.pop()
        if len(alpha) == length:
            visited += 1
            missed = _first_missed(seen, n)
            if missed is not None:
                return FillingReport(False, n, length, alpha, missed, visited)
            continue
        if _first_missed(seen, n) is None:
            visited += 2 ** (length - len(alpha))
            continue
        seen = seen | {v.query(alpha)}
        stack.append((alpha + "1", seen))
        stack.append((alpha + "0", seen))
    return FillingReport(True, n, length, runs_enumerated=visited)


def _first_missed(queried, n: int) -> Optional[int]:
    queried = set(queried)
    for r in range(n):
        if r not in queried:
            return r
    return None


def filling_bound(s: Permutation, n: int) -> int:
    """Least g with V_S g-filling at n: 1 + max_{r<n} S^-1(r) (0 for n = 0)."""
    if n <= 0:
        return 0
    return 1 + max(s.inverse(r) for r in range(n))


@dataclass(frozen=True, eq=False)
class FillingBound:
    """The function n -> filling_bound(S, n), usable wherever g is expected."""

    permutation: Permutation
    kind = "filling-bound"

    def __call__(self, n: int) -> int:
        return filling_bound(self.permutation, n)

    def to_doc(self):
        return {"kind": self.kind, "permutation": self.permutation.to_doc()}
