"""Betting strategies (V, B) and the averaging martingale D on the scanned sequence.

D(w) averages B over all runs of length t that are consistent with w.
With t at least g(|w|) the value does not depend on t, D is a martingale,
and a strategy that keeps B above c from some point along Z∘V pushes
D above c along Z.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .bits import SequenceOracle, extensions, strings
from .errors import BudgetExceeded, PreconditionError
from .martingale import Martingale
from .rational import Fraction, format_q
from .scan import ScanningFunction, compose_with_scanner, filling_check, run_queries

DEFAULT_BUDGET = 2 ** 20


@dataclass(frozen=True, eq=False)
class BettingStrategy:
    """A scanner, a martingale on its runs, and a filling bound g.

    Construction validates that V is g-filling for every n up to
    ``certified_to`` and that g(n) >= n there.
    """

    scanner: ScanningFunction
    martingale: Martingale
    g: Callable[[int], int]
    certified_to: int = 6
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        for n in range(self.certified_to + 1):
            if self.g(n) < n:
                raise PreconditionError(f"filling bound must satisfy g(n) >= n; g({n}) = {self.g(n)}")
            report = filling_check(self.scanner, self.g, n, self.budget)
            if not report.ok:
                raise PreconditionError(
                    f"scanner is not g-filling at n={n}: run {report.witness_run!r} "
                    f"misses position {report.missed_position}")

    def to_doc(self) -> dict:
        return {"kind": "strategy", "scanner": self.scanner.to_doc(),
                "martingale": self.martingale.to_doc(), "g": self.g.to_doc(),
                "certified_to": self.certified_to}


@dataclass
class AverageReport:
    w: str
    t: int
    value: Fraction
    runs_enumerated: int
    consistent_count: int

    def to_doc(self):
        return {"w": self.w, "t": self.t, "value": format_q(self.value),
                "runs_enumerated": self.runs_enumerated,
                "consistent_count": self.consistent_count}


def average_report(G: BettingStrategy, w: str, t: Optional[int] = None,
                   budget: Optional[int] = None) -> AverageReport:
    """2^(|w|-t) * sum of B(α) over runs |α| = t with α ∼_V w.

    The run tree is walked depth first and a branch is dropped as soon as
    it contradicts w, since consistency is inherited by prefixes.
    """
    budget = G.budget if budget is None else budget
    need = G.g(len(w))
    t = need if t is None else t
    if t < need:
        raise PreconditionError(f"t = {t} is below g(|w|) = {need}")
    if 2 ** t > budget:
        raise BudgetExceeded(f"averaging at t={t} needs 2^{t} runs, budget {budget}", 2 ** t, budget)
    V, B = G.scanner, G.martingale
    total = Fraction(0)
    visited = consistent_count = 0
    stack = [""]
    while stack:
        alpha = stack.pop()
        if len(alpha) == t:
            consistent_count += 1
            total += B.value(alpha)
            continue
        visited += 1
        x = V.query(alpha)
        for b in "10":
            if x >= len(w) or w[x] == b:
                stack.append(alpha + b)
    value = total * Fraction(2 ** len(w), 2 ** t)
    return AverageReport(w, t, value, visited + consistent_count, consistent_count)


def averaging_value(G: BettingStrategy, w: str, t: Optional[int] = None,
                    budget: Optional[int] = None) -> Fraction:
    return average_report(G, w, t, budget).value


@dataclass(frozen=True, eq=False)
class AveragingMartingale(Martingale):
    """D as a martingale node, always evaluated at t = g(|w|)."""

    strategy: BettingStrategy = None
    kind = "averaging"

    def _value(self, w):
        return averaging_value(self.strategy, w)

    def to_doc(self):
        doc = self.strategy.to_doc()
        doc["kind"] = self.kind
        return doc


def t_independence_check(G: BettingStrategy, w: str, t1: int, t2: int,
                         budget: Optional[int] = None) -> bool:
    if not G.g(len(w)) <= t1 < t2:
        raise PreconditionError("need g(|w|) <= t1 < t2")
    return averaging_value(G, w, t1, budget) == averaging_value(G, w, t2, budget)


@dataclass
class LemmaReport:
    ok: bool
    depth: int
    nodes_checked: int
    violation: Optional[str] = None
    detail: Optional[str] = None

    def to_doc(self):
        return {"ok": self.ok, "depth": self.depth, "nodes_checked": self.nodes_checked,
                "violation": self.violation, "detail": self.detail}


def fairness_lemma_check(G: BettingStrategy, depth: int,
                         budget: Optional[int] = None) -> LemmaReport:
    """D(w0) + D(w1) = 2 D(w) for every |w| < depth."""
    D = AveragingMartingale(G)
    if budget is not None:
        D = AveragingMartingale(BettingStrategy(G.scanner, G.martingale, G.g, 0, budget))
    checked = 0
    for n in range(depth):
        for w in strings(n):
            d, d0, d1 = D.value(w), D.value(w + "0"), D.value(w + "1")
            if d0 + d1 != 2 * d:
                return LemmaReport(False, depth, checked, w,
                                   f"{format_q(d0)} + {format_q(d1)} != 2*{format_q(d)}")
            checked += 1
    return LemmaReport(True, depth, checked)


@dataclass
class SuccessReport:
    found: bool
    c: Fraction
    alpha: Optional[str] = None
    r: Optional[int] = None
    w: Optional[str] = None
    D_value: Optional[Fraction] = None
    checked_to: Optional[int] = None

    def to_doc(self):
        return {"found": self.found, "c": format_q(self.c), "alpha": self.alpha, "r": self.r,
                "w": self.w, "D_value": None if self.D_value is None else format_q(self.D_value),
                "checked_to": self.checked_to}


def success_transfer_demo(G: BettingStrategy, Z: SequenceOracle, c, max_prefix: int,
                          budget: Optional[int] = None) -> SuccessReport:
    """Look for a prefix α of Z∘V past which B stays >= c, then evaluate D on Z.

    For each prefix α of Z∘V up to ``max_prefix``, r = 1 + the largest query
    of the run, and every β ⊒ α up to length g(r) is checked for B(β) >= c.
    Those are exactly the runs D(Z↾r) averages over, so a hit yields
    D(Z↾r) >= c. Finding nothing within the budget says nothing about
    success in the limit.
    """
    c = Fraction(c)
    budget = G.budget if budget is None else budget
    y = compose_with_scanner(Z, G.scanner, max_prefix)
    B = G.martingale
    for ell in range(max_prefix + 1):
        alpha = y[:ell]
        queries = run_queries(G.scanner, alpha)
        r = 1 + max(queries) if queries else 0
        horizon = G.g(r)
        if 2 ** (horizon - ell) > budget:
            raise BudgetExceeded(f"checking extensions up to length {horizon} exceeds budget",
                                 2 ** (horizon - ell), budget)
        if all(B.value(beta) >= c
               for m in range(ell, horizon + 1) for beta in extensions(alpha, m)):
            w = Z.prefix(r)
            return SuccessReport(True, c, alpha, r, w, averaging_value(G, w, budget=budget), horizon)
    return SuccessReport(False, c, checked_to=max_prefix)
