"""Coalitions of maximal total and per-capita collusion gain.

For a fixed size ``s`` the best coalition ``S_s`` is agent 1 together with
the ``s - 1`` lowest-valuation agents.  ``Delta(s)`` and ``delta(s)`` are the
total and per-capita increments when moving from ``S_{s-1}`` to ``S_s``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DegenerateBounds, DegenerateProfile, InvalidSize
from .gain_game import GainGame


def _check_size(game: GainGame, s: int, low: int = 1) -> None:
    if not low <= s <= game.n:
        raise InvalidSize(f"size must be in {low}..{game.n}, got {s}")


def best_members(n: int, s: int) -> frozenset[int]:
    if s == 1:
        return frozenset({1})
    return frozenset({1, *range(n + 2 - s, n + 1)})


def best_of_size(game: GainGame, s: int) -> tuple[frozenset[int], Fraction]:
    """``S_s`` and its worth ``(n - s)/n^2 * sum_{i in S_s, i != 1} (v_1 - v_i)``."""
    _check_size(game, s)
    n = game.n
    members = best_members(n, s)
    v1 = game.v(1)
    spread = sum((v1 - game.v(i) for i in members if i != 1), Fraction(0))
    return members, Fraction(n - s, n * n) * spread


def delta_total(game: GainGame, s: int) -> Fraction:
    """``v(S_s) - v(S_{s-1})`` in closed form, for ``2 <= s <= n``."""
    _check_size(game, s, low=2)
    n = game.n
    entrant = game.v(n + 2 - s)
    tail = sum((entrant - game.v(i) for i in range(n + 3 - s, n + 1)), Fraction(0))
    return ((n - 2 * s + 2) * (game.v(1) - entrant) - tail) / (n * n)


def delta_percapita(game: GainGame, s: int) -> Fraction:
    """``v(S_s)/s - v(S_{s-1})/(s-1)`` in closed form, for ``2 <= s <= n``."""
    _check_size(game, s, low=2)
    n = game.n
    entrant = game.v(n + 2 - s)
    tail = sum((entrant - game.v(i) for i in range(n + 3 - s, n + 1)), Fraction(0))
    return ((n + s - s * s) * (game.v(1) - entrant) - n * tail) / (n * n * s * (s - 1))


def delta_percapita_from_totals(game: GainGame, s: int) -> Fraction:
    """``delta(s)`` rebuilt from the total increments ``Delta(2..s)``."""
    _check_size(game, s, low=2)
    big = delta_total(game, s)
    if s == 2:
        return big / 2
    earlier = sum((delta_total(game, j) - big for j in range(2, s)), Fraction(0))
    return (big - earlier) / (s * (s - 1))


def optimal_sizes(game: GainGame) -> tuple[int, int]:
    """``(s*, s**)``: the largest sizes of maximal total / per-capita gain.

    ``Delta`` is non-increasing, so ``s*`` is the last ``s`` with
    ``Delta(s) >= 0``.  ``delta`` changes sign at most once, so ``s**`` is
    the end of its initial non-negative run.
    """
    n = game.n
    if n < 2:
        raise DegenerateProfile("optimal sizes need n >= 2")
    s_star = 1
    for s in range(2, n + 1):
        if delta_total(game, s) >= 0:
            s_star = s
        else:
            break
    s_double = 1
    for s in range(2, n + 1):
        if delta_percapita(game, s) >= 0:
            s_double = s
        else:
            break
    return s_star, s_double


@dataclass(frozen=True)
class BoundsReport:
    s_star: int
    s_double_star: int
    order_ok: bool
    total_ok: bool
    percapita_ok: bool
    # None when the corresponding hypothesis does not apply
    even_half_ok: Optional[bool] = None
    plateau_ok: Optional[bool] = None

    @property
    def bounds_ok(self) -> tuple[bool, bool, bool]:
        return self.order_ok, self.total_ok, self.percapita_ok

    @property
    def all_ok(self) -> bool:
        extras = [x for x in (self.even_half_ok, self.plateau_ok) if x is not None]
        return all(self.bounds_ok) and all(extras)


def check_bounds(game: GainGame) -> BoundsReport:
    """Check ``2 <= s** <= s*``, ``s* <= floor(n/2 + 1)`` and ``s** <= ceil(sqrt n)``.

    Two sharper bounds are checked when their hypotheses hold:

    * ``n`` even and ``v_{n/2+1} != v_n`` gives ``s* <= n/2``;
    * ``v_1 = v_{n+2-l} > v_n`` for some ``l <= n/2 + 1`` gives ``s* < l``.
    """
    n = game.n
    if n < 2 or game.v(1) == game.v(n):
        raise DegenerateBounds("bounds only hold when v_1 != v_n")
    s_star, s2 = optimal_sizes(game)
    ceil_sqrt = math.isqrt(n - 1) + 1
    even_half_ok = None
    if n % 2 == 0 and game.v(n // 2 + 1) != game.v(n):
        even_half_ok = s_star <= n // 2
    plateau_ok = None
    for ell in range(2, n // 2 + 2):
        if game.v(1) == game.v(n + 2 - ell) > game.v(n):
            plateau_ok = (plateau_ok is not False) and s_star < ell
    return BoundsReport(
        s_star=s_star,
        s_double_star=s2,
        order_ok=s2 <= s_star,
        total_ok=2 <= s_star <= n // 2 + 1,
        percapita_ok=2 <= s2 <= ceil_sqrt,
        even_half_ok=even_half_ok,
        plateau_ok=plateau_ok,
    )


@dataclass(frozen=True)
class SizeEntry:
    s: int
    coalition: frozenset[int]
    worth: Fraction
    per_capita: Fraction


@dataclass(frozen=True)
class CoalitionAnalysis:
    per_size: tuple[SizeEntry, ...]
    deltas: tuple[Fraction, ...]  # Delta(2..n)
    small_deltas: tuple[Fraction, ...]  # delta(2..n)
    s_star: int
    s_double_star: int
    bounds: Optional[BoundsReport]


def analyze(game: GainGame) -> CoalitionAnalysis:
    n = game.n
    if n < 2:
        raise DegenerateProfile("coalition analysis needs n >= 2")
    per_size = []
    for s in range(1, n + 1):
        members, w = best_of_size(game, s)
        per_size.append(SizeEntry(s, members, w, w / s))
    s_star, s2 = optimal_sizes(game)
    bounds = None if game.profile.is_constant() else check_bounds(game)
    return CoalitionAnalysis(
        per_size=tuple(per_size),
        deltas=tuple(delta_total(game, s) for s in range(2, n + 1)),
        small_deltas=tuple(delta_percapita(game, s) for s in range(2, n + 1)),
        s_star=s_star,
        s_double_star=s2,
        bounds=bounds,
    )


class Criterion(enum.Enum):
    TOTAL = "total"
    PER_CAPITA = "percapita"


@dataclass(frozen=True)
class FormationStep:
    agent: int
    increment: Fraction
    accepted: bool


@dataclass(frozen=True)
class FormationTrace:
    criterion: Criterion
    threshold: Fraction
    steps: tuple[FormationStep, ...]
    final_coalition: frozenset[int]
    final_worth: Fraction


def form_coalition(
    game: GainGame, criterion: Criterion = Criterion.TOTAL, threshold=0
) -> FormationTrace:
    """Greedy formation: agents 1 and n pair up, then n-1, n-2, ... are invited.

    Under ``TOTAL`` an invitee joins while ``Delta > threshold``; under
    ``PER_CAPITA`` it joins unless ``delta < -threshold``.  The first
    rejection ends the process.
    """
    n = game.n
    if n < 2:
        raise DegenerateProfile("coalition formation needs n >= 2")
    criterion = Criterion(criterion)
    threshold = Fraction(threshold)
    if threshold < 0:
        raise ValueError("threshold must be non-negative")
    increment = delta_total if criterion is Criterion.TOTAL else delta_percapita
    steps = [FormationStep(n, increment(game, 2), True)]
    size = 2
    for agent in range(n - 1, 1, -1):
        inc = increment(game, size + 1)
        if criterion is Criterion.TOTAL:
            ok = inc > threshold
        else:
            ok = inc >= -threshold
        steps.append(FormationStep(agent, inc, ok))
        if not ok:
            break
        size += 1
    members = best_members(n, size)
    return FormationTrace(criterion, threshold, tuple(steps), members, game.worth(members))
