from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import PreconditionError


@dataclass(frozen=True, eq=False)
class PolynomialNat:
    """Non-constant polynomial with natural coefficients, lowest degree first.

    ``PolynomialNat((2, 1))`` is n + 2.
    """

    coefficients: tuple
    _sums: list = field(default_factory=lambda: [0], init=False, repr=False)
    kind = "polynomial"

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        if any(c < 0 for c in coeffs):
            raise PreconditionError("coefficients must be natural numbers")
        if not any(coeffs[1:]):
            raise PreconditionError("polynomial must be non-constant")
        object.__setattr__(self, "coefficients", coeffs)

    def __call__(self, n: int) -> int:
        v = 0
        for c in reversed(self.coefficients):
            v = v * n + c
        return v

    def prefix_sum(self, n: int) -> int:
        """sum_{k<n} p(k)."""
        sums = self._sums
        while len(sums) <= n:
            sums.append(sums[-1] + self(len(sums) - 1))
        return sums[n]

    def __eq__(self, other):
        return isinstance(other, PolynomialNat) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        terms = [f"{c}" if d == 0 else f"{c}n" if d == 1 else f"{c}n^{d}"
                 for d, c in enumerate(self.coefficients) if c]
        return "PolynomialNat(" + " + ".join(reversed(terms)) + ")"

    def to_doc(self):
        return {"kind": self.kind, "coefficients": list(self.coefficients)}
