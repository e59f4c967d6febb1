"""Exact Bernoulli numbers from the z/(e^z - 1) generating function."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from ..errors import CapacityError, ValidationError

#: largest index kept in the shared table
TABLE_LIMIT = 40

_cache: list[Fraction] = [Fraction(1)]


def bernoulli(n: int) -> Fraction:
    """n-th Bernoulli number as an exact rational (B_1 = -1/2 convention).

    Computed once via the recurrence sum_{j=0..m} C(m+1, j) B_j = 0 and
    cached; indices above TABLE_LIMIT raise a CapacityError.
    """
    if n < 0:
        raise ValidationError("Bernoulli index must be >= 0")
    if n > TABLE_LIMIT:
        raise CapacityError(f"Bernoulli table capped at B_{TABLE_LIMIT}")
    while len(_cache) <= n:
        m = len(_cache)
        s = sum(comb(m + 1, j) * _cache[j] for j in range(m))
        _cache.append(-s / (m + 1))
    return _cache[n]


@dataclass(frozen=True)
class BernoulliTable:
    """Immutable slice B_0..B_n of exact Bernoulli numbers."""

    values: tuple[Fraction, ...]

    @classmethod
    def up_to(cls, n: int) -> "BernoulliTable":
        return cls(tuple(bernoulli(i) for i in range(n + 1)))

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i]

    def __len__(self) -> int:
        return len(self.values)

    def real(self, i: int) -> float:
        return float(self.values[i])
