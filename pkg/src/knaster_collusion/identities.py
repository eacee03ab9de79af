"""Binomial-ratio identities behind the closed-form coefficients."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb


@dataclass(frozen=True)
class IdentityCheck:
    j: int
    t: int
    lhs1: Fraction
    rhs1: Fraction
    lhs2: Fraction
    rhs2: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs1 == self.rhs1 and self.lhs2 == self.rhs2


def ratio_sum(t: int, m: int, weighted: bool = False) -> Fraction:
    """``sum_{s=1}^{t} [s] C(t, s) / C(m, s)``; empty when ``t < 1``."""
    return sum(
        (Fraction((s if weighted else 1) * comb(t, s), comb(m, s)) for s in range(1, t + 1)),
        Fraction(0),
    )


def identity_sums(j: int, t: int) -> IdentityCheck:
    """
    >>> identity_sums(1, 2).holds
    True
    """
    if j < 1 or t < 1:
        raise ValueError("j and t must be >= 1")
    return IdentityCheck(
        j=j,
        t=t,
        lhs1=ratio_sum(t, j + t),
        rhs1=Fraction(t, j + 1),
        lhs2=ratio_sum(t, j + t, weighted=True),
        rhs2=Fraction(t * (j + t + 1), (j + 1) * (j + 2)),
    )


def gap_from_binomial_sums(n: int, j: int) -> Fraction:
    """``phi_j - phi_{j+1}`` in the indicator game of column ``j``, assembled
    from the raw binomial-ratio sums before any simplification.

    Should equal ``c(n, j)``.
    """
    if not 1 <= j < n:
        raise ValueError(f"j must be in 1..{n - 1}")
    tail = n - j - 1
    return (
        ratio_sum(tail, n - 1, weighted=True)
        - ratio_sum(n - 2, n - 1)
        + ratio_sum(tail, n - 1)
    ) / (n * n)


def verify_identities(max_jt: int = 30) -> list[IdentityCheck]:
    return [identity_sums(j, t) for j in range(1, max_jt + 1) for t in range(1, max_jt + 1)]
