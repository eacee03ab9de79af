"""The gain game: worth of a coalition is its highest safe collusion gain.

Colluders reveal their valuations to each other and all declare the
coalition's maximum ``b^S``.  The resulting joint gain is

    worth(S) = (n - s) / n^2 * sum_{i in S} (b^S - v_i)

Coalitions are frozensets of 1-based canonical agent indices.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable

from .errors import InvalidCoalition
from .valuations import ValuationProfile, common_denominator

Coalition = frozenset


@dataclass(frozen=True)
class GainGame:
    profile: ValuationProfile

    @classmethod
    def from_values(cls, values: Iterable[Any]) -> "GainGame":
        return cls(ValuationProfile.from_values(values))

    @property
    def n(self) -> int:
        return self.profile.n

    @property
    def values(self) -> tuple[Fraction, ...]:
        return self.profile.values

    def v(self, i: int) -> Fraction:
        return self.profile.values[i - 1]

    @property
    def grand_coalition(self) -> frozenset[int]:
        return frozenset(range(1, self.n + 1))

    def coalition(self, members: Iterable[int]) -> frozenset[int]:
        """Validate ``members`` and return them as a frozenset."""
        s = frozenset(members)
        bad = [i for i in s if not (isinstance(i, int) and 1 <= i <= self.n)]
        if bad:
            raise InvalidCoalition(f"agents {sorted(bad)} not in 1..{self.n}")
        return s

    def worth(self, members: Iterable[int]) -> Fraction:
        s = self.coalition(members)
        if not s:
            return Fraction(0)
        vals = self.values
        b = vals[min(s) - 1]
        n = self.n
        return Fraction(n - len(s), n * n) * sum(b - vals[i - 1] for i in s)

    def per_capita_worth(self, members: Iterable[int]) -> Fraction:
        s = self.coalition(members)
        return self.worth(s) / len(s) if s else Fraction(0)

    def marginal_contribution(self, members: Iterable[int], i: int) -> Fraction:
        """Closed-form ``worth(S + {i}) - worth(S)``; zero when ``S`` is empty."""
        s = self.coalition(members)
        self.coalition([i])
        if i in s:
            raise InvalidCoalition(f"agent {i} already belongs to the coalition")
        if not s:
            return Fraction(0)
        n, size = self.n, len(s)
        vals = self.values
        b = vals[min(s) - 1]
        vi = vals[i - 1]
        spread = sum(b - vals[k - 1] for k in s)
        return (
            Fraction(n - size - 1, n * n) * max(size * (vi - b), b - vi)
            - spread / (n * n)
        )

    def adjacent_worth_difference(self, j: int, members: Iterable[int]) -> Fraction:
        """``worth(S + {j}) - worth(S + {j+1})`` for ``S`` avoiding j and j+1."""
        n = self.n
        if not 1 <= j < n:
            raise InvalidCoalition(f"j must be in 1..{n - 1}, got {j}")
        s = self.coalition(members)
        if j in s or j + 1 in s:
            raise InvalidCoalition(f"coalition must exclude agents {j} and {j + 1}")
        size = len(s)
        gap = self.values[j - 1] - self.values[j]
        if any(k <= j for k in s):
            return -Fraction(n - size - 1, n * n) * gap
        return Fraction((n - size - 1) * size, n * n) * gap

    def scaled_worth_table(self) -> tuple[list[int], int]:
        """Integer worths of all ``2^n`` coalitions and their common scale.

        Returns ``(table, scale)`` with ``worth(S) == table[mask(S)] / scale``,
        where bit ``i - 1`` of the mask marks agent ``i``.  Used by the
        enumeration oracles, which would otherwise spend most of their time
        normalizing fractions.
        """
        n = self.n
        den = common_denominator(self.values)
        ints = [int(v * den) for v in self.values]
        size = 1 << n
        table = [0] * size
        sums = [0] * size
        pop = [0] * size
        for mask in range(1, size):
            low = mask & -mask
            idx = low.bit_length() - 1
            rest = mask ^ low
            sums[mask] = sums[rest] + ints[idx]
            pop[mask] = pop[rest] + 1
            s = pop[mask]
            # lowest index holds the coalition maximum in canonical order
            table[mask] = (n - s) * (s * ints[idx] - sums[mask])
        return table, den * n * n


def mask_of(members: Iterable[int]) -> int:
    m = 0
    for i in members:
        m |= 1 << (i - 1)
    return m
