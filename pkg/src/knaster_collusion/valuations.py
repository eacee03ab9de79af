"""Valuation profiles in canonical (weakly decreasing) order.

All monetary quantities are :class:`fractions.Fraction` instances, so every
downstream computation is exact.  Agents are addressed by 1-based canonical
position; the caller's labels are kept alongside for reporting.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Any, Hashable, Iterable, Sequence

from .errors import DegenerateProfile, InvalidProfile


def to_fraction(value: Any) -> Fraction:
    """Convert ``value`` to an exact Fraction.

    Strings are parsed as decimal or ``p/q`` literals, so ``"0.1"`` is 1/10.
    Floats are converted through their shortest repr for the same reason.
    """
    if isinstance(value, bool):
        raise InvalidProfile(f"not a valuation: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise InvalidProfile(f"non-finite valuation: {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidProfile(f"cannot parse valuation {value!r}") from exc
    raise InvalidProfile(f"unsupported valuation type: {type(value).__name__}")


@dataclass(frozen=True)
class ValuationProfile:
    """Agent valuations sorted so that ``values[0] >= values[1] >= ...``.

    ``labels[i]`` is the caller's label for canonical agent ``i + 1``.
    Build instances with :func:`canonicalize` or :meth:`from_values`.
    """

    values: tuple[Fraction, ...]
    labels: tuple[Hashable, ...]

    def __post_init__(self) -> None:
        if not self.values:
            raise InvalidProfile("profile must contain at least one agent")
        if len(self.values) != len(self.labels):
            raise InvalidProfile("values and labels differ in length")
        if any(a < b for a, b in zip(self.values, self.values[1:])):
            raise InvalidProfile("values are not weakly decreasing")
        if len(set(self.labels)) != len(self.labels):
            raise InvalidProfile("labels must be unique")

    @property
    def n(self) -> int:
        return len(self.values)

    def v(self, i: int) -> Fraction:
        """Valuation of canonical agent ``i`` (1-based)."""
        if not 1 <= i <= self.n:
            raise IndexError(f"agent {i} out of range 1..{self.n}")
        return self.values[i - 1]

    def label(self, i: int) -> Hashable:
        return self.labels[i - 1]

    def index_of(self, label: Hashable) -> int:
        try:
            return self.labels.index(label) + 1
        except ValueError:
            raise KeyError(label) from None

    def is_constant(self) -> bool:
        return self.values[0] == self.values[-1]

    def items(self) -> list[tuple[Hashable, Fraction]]:
        return list(zip(self.labels, self.values))

    @classmethod
    def from_values(cls, values: Iterable[Any]) -> "ValuationProfile":
        """Canonicalize a bare value list, labelling agents 1..n in input order."""
        return canonicalize(list(enumerate(values, start=1)))


def canonicalize(raw: Sequence[tuple[Hashable, Any]]) -> ValuationProfile:
    """Sort ``(label, value)`` pairs by decreasing value.

    Ties are broken by ascending label, so the lowest-labelled agent among
    the maxima becomes agent 1 and buys the object.

    >>> p = canonicalize([("A", 6), ("B", 10), ("C", 3)])
    >>> p.labels, [int(x) for x in p.values]
    (('B', 'A', 'C'), [10, 6, 3])
    """
    if not raw:
        raise InvalidProfile("profile must contain at least one agent")
    pairs = [(label, to_fraction(value)) for label, value in raw]
    labels = [label for label, _ in pairs]
    if len(set(labels)) != len(labels):
        raise InvalidProfile("labels must be unique")
    try:
        pairs.sort(key=lambda lv: (-lv[1], lv[0]))
    except TypeError as exc:
        raise InvalidProfile("labels must be mutually comparable") from exc
    return ValuationProfile(
        values=tuple(v for _, v in pairs), labels=tuple(lab for lab, _ in pairs)
    )


def adjacent_differences(profile: ValuationProfile) -> list[Fraction]:
    """Return ``(v_j - v_{j+1})`` for ``j = 1..n-1``; all entries are >= 0."""
    if profile.n < 2:
        raise DegenerateProfile("adjacent differences need at least two agents")
    vals = profile.values
    return [a - b for a, b in zip(vals, vals[1:])]


def common_denominator(values: Iterable[Fraction]) -> int:
    return math.lcm(*(x.denominator for x in values))
