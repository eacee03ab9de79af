"""Shapley value of the gain game.

Three independent routes are provided:

* :func:`shapley_bruteforce` enumerates every coalition (exponential).
* :func:`shapley_closed_form` multiplies the coefficient matrix ``Psi`` by
  the vector of adjacent valuation differences (quadratic).
* :func:`shapley_fast` walks down the ranking using the fact that column
  ``j`` of ``Psi`` takes one value on rows ``1..j`` and another below (linear).

Column ``j`` of ``Psi`` is ``a_j`` on rows ``1..j`` and ``b_j`` on the rest,
with ``a_j - b_j = c(n, j) = (2n - 3j - j^2) / (2n (j+1) (j+2))`` and
``j a_j + (n - j) b_j = 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from operator import mul
from typing import Hashable

from .errors import DegenerateProfile, InvalidCoalition, OracleTooLarge
from .gain_game import GainGame
from .valuations import ValuationProfile, adjacent_differences, common_denominator

DEFAULT_ORACLE_CAP = 20


def psi_gap(n: int, j: int) -> Fraction:
    """``c(n, j)``: the jump between the two values of column ``j``."""
    return Fraction(2 * n - 3 * j - j * j, 2 * n * (j + 1) * (j + 2))


@dataclass(frozen=True)
class PsiMatrix:
    """The ``n x (n-1)`` coefficient matrix, stored by its two column values.

    ``upper[j-1]`` is the value on rows ``1..j`` of column ``j`` and
    ``lower[j-1]`` the value on rows ``j+1..n``.
    """

    n: int
    gaps: tuple[Fraction, ...]
    upper: tuple[Fraction, ...]
    lower: tuple[Fraction, ...]

    def entry(self, i: int, j: int) -> Fraction:
        """``psi_ij`` with 1-based row ``i`` and column ``j``."""
        return self.upper[j - 1] if i <= j else self.lower[j - 1]

    def row(self, i: int) -> list[Fraction]:
        return list(self.lower[: i - 1]) + list(self.upper[i - 1 :])

    @cached_property
    def entries(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(self.row(i)) for i in range(1, self.n + 1))


def psi_matrix(n: int) -> PsiMatrix:
    """
    >>> [str(x) for x in psi_matrix(5).gaps]
    ['1/10', '0', '-1/25', '-3/50']
    """
    if n < 2:
        raise DegenerateProfile("the coefficient matrix needs n >= 2")
    gaps = tuple(psi_gap(n, j) for j in range(1, n))
    upper = tuple((n - j) * c / n for j, c in enumerate(gaps, start=1))
    lower = tuple(-j * c / n for j, c in enumerate(gaps, start=1))
    return PsiMatrix(n, gaps, upper, lower)


def solve_column(n: int, j: int) -> tuple[Fraction, Fraction]:
    """Solve ``a - b = c(n, j)``, ``j a + (n - j) b = 0`` by Cramer's rule.

    Independent of :func:`psi_matrix`, which uses the solved form directly.
    """
    c = psi_gap(n, j)
    (p, q), (r, t) = (1, -1), (j, n - j)
    rhs = (c, Fraction(0))
    det = p * t - q * r
    a = (rhs[0] * t - q * rhs[1]) / det
    b = (p * rhs[1] - r * rhs[0]) / det
    return a, b


def indicator_profile(n: int, j: int) -> ValuationProfile:
    """Valuation 1 for agents ``1..j`` and 0 for the rest.

    The Shapley value of this profile's gain game is column ``j`` of ``Psi``.
    """
    return ValuationProfile.from_values([1] * j + [0] * (n - j))


@dataclass(frozen=True)
class ShapleyResult:
    """Shapley values in canonical order, with labels for reporting."""

    profile: ValuationProfile
    values: tuple[Fraction, ...]
    method: str = field(default="", compare=False)

    def by_label(self) -> dict[Hashable, Fraction]:
        return dict(zip(self.profile.labels, self.values))

    def __getitem__(self, i: int) -> Fraction:
        """Value of canonical agent ``i`` (1-based)."""
        return self.values[i - 1]

    def __len__(self) -> int:
        return len(self.values)


def _zero(game: GainGame, method: str) -> ShapleyResult:
    return ShapleyResult(game.profile, (Fraction(0),) * game.n, method)


def shapley_closed_form(game: GainGame) -> ShapleyResult:
    """Full matrix-vector product ``Psi . d``, O(n^2) multiplications.

    Rows are scaled to a common integer denominator first so the inner
    products run on plain integers.
    """
    n = game.n
    if n == 1:
        return _zero(game, "closed")
    psi = psi_matrix(n)
    diffs = adjacent_differences(game.profile)
    psi_den = common_denominator(psi.upper + psi.lower)
    upper = [int(x * psi_den) for x in psi.upper]
    lower = [int(x * psi_den) for x in psi.lower]
    val_den = common_denominator(diffs)
    d = [int(x * val_den) for x in diffs]
    scale = psi_den * val_den
    phi = []
    for i in range(1, n + 1):
        row = lower[: i - 1] + upper[i - 1 :]
        phi.append(Fraction(sum(map(mul, row, d)), scale))
    return ShapleyResult(game.profile, tuple(phi), "closed")


def shapley_fast(game: GainGame) -> ShapleyResult:
    """Linear-time evaluation.

    ``phi_1`` is the sum of ``a_j d_j``; moving from row ``i`` to ``i + 1``
    only flips column ``i`` from ``a_i`` to ``b_i``, so
    ``phi_{i+1} = phi_i - c(n, i) d_i``.  Runs of equal valuations leave the
    value unchanged and share one Fraction object.
    """
    n = game.n
    if n == 1:
        return _zero(game, "fast")
    diffs = adjacent_differences(game.profile)
    # t_j = c(n, j) d_j / n, so a_j d_j = (n - j) t_j and c(n, j) d_j = n t_j
    terms = {j: psi_gap(n, j) * dj / n for j, dj in enumerate(diffs, start=1) if dj}
    if not terms:
        return _zero(game, "fast")
    den = common_denominator(terms.values())
    scaled = {j: t.numerator * (den // t.denominator) for j, t in terms.items()}
    num = sum((n - j) * t for j, t in scaled.items())
    current = Fraction(num, den)
    phi = [current]
    for i in range(1, n):
        t = scaled.get(i)
        if t:
            num -= n * t
            current = Fraction(num, den)
        phi.append(current)
    return ShapleyResult(game.profile, tuple(phi), "fast")


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise OracleTooLarge(f"enumeration over 2^{n} coalitions exceeds cap n <= {cap}")


def shapley_bruteforce(game: GainGame, cap: int = DEFAULT_ORACLE_CAP) -> ShapleyResult:
    """Definitional Shapley value: weighted marginal contributions over all
    coalitions not containing the player.

    Weights ``s! (n-s-1)! / n!`` are kept exact by summing integer numerators
    and dividing by ``n!`` once at the end.
    """
    n = game.n
    _check_cap(n, cap)
    table, scale = game.scaled_worth_table()
    weight = [math.factorial(s) * math.factorial(n - s - 1) for s in range(n)]
    popcount = [bin(m).count("1") for m in range(1 << n)]
    denom = math.factorial(n) * scale
    phi = []
    for i in range(n):
        bit = 1 << i
        total = 0
        for mask in range(1 << n):
            if mask & bit:
                continue
            total += weight[popcount[mask]] * (table[mask | bit] - table[mask])
        phi.append(Fraction(total, denom))
    return ShapleyResult(game.profile, tuple(phi), "bruteforce")


def shapley_adjacent_gap(game: GainGame, j: int, cap: int = DEFAULT_ORACLE_CAP) -> Fraction:
    """``phi_j - phi_{j+1}`` by enumerating coalitions that avoid both players."""
    n = game.n
    if not 1 <= j < n:
        raise InvalidCoalition(f"j must be in 1..{n - 1}, got {j}")
    _check_cap(n, cap)
    table, scale = game.scaled_worth_table()
    weight = [math.factorial(s) * math.factorial(n - s - 2) for s in range(n - 1)]
    bj, bk = 1 << (j - 1), 1 << j
    total = 0
    for mask in range(1 << n):
        if mask & (bj | bk):
            continue
        s = bin(mask).count("1")
        total += weight[s] * (table[mask | bj] - table[mask | bk])
    return Fraction(total, math.factorial(n - 1) * scale)
