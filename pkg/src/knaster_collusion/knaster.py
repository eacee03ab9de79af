"""Truthful Knaster allocation of a single indivisible object."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidMisreport
from .valuations import ValuationProfile


@dataclass(frozen=True)
class KnasterAllocation:
    """Outcome of the Knaster procedure, all lists in canonical order.

    Agent 1 (``winner``) receives the object and pays its valuation into the
    common pool; ``compensations`` are the net money transfers and sum to 0.
    """

    profile: ValuationProfile
    initial_shares: tuple[Fraction, ...]
    surplus: Fraction
    adjusted_shares: tuple[Fraction, ...]
    compensations: tuple[Fraction, ...]
    winner: int = 1


def allocate(profile: ValuationProfile) -> KnasterAllocation:
    n = profile.n
    vals = profile.values
    total = sum(vals, Fraction(0))
    v1 = vals[0]
    initial = tuple(v / n for v in vals)
    surplus = v1 - total / n
    adjusted = tuple(e + surplus / n for e in initial)
    comp = (adjusted[0] - v1,) + adjusted[1:]
    return KnasterAllocation(profile, initial, surplus, adjusted, comp)


def single_misreport_deltas(
    profile: ValuationProfile, k: int, eps: Fraction
) -> list[Fraction]:
    """Payoff change when agent ``k`` alone declares ``v_k + eps``.

    Agent ``k`` gains ``(n-1) eps / n^2``; every other agent, including the
    winner, loses ``eps / n^2``.  Requires ``0 < eps < v_1 - v_k``.
    """
    n = profile.n
    if not 2 <= k <= n:
        raise InvalidMisreport(f"misreporting agent must be in 2..{n}, got {k}")
    eps = Fraction(eps)
    if not 0 < eps < profile.v(1) - profile.v(k):
        raise InvalidMisreport(
            f"eps must lie strictly between 0 and v_1 - v_k = {profile.v(1) - profile.v(k)}"
        )
    loss = eps / (n * n)
    deltas = [-loss] * n
    deltas[k - 1] = (n - 1) * loss
    return deltas
