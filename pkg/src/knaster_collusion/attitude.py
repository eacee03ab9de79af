"""Ranking positions whose Shapley sign is fixed by ``n`` alone.

A position is collusion averse when its row of ``Psi`` is entirely
non-positive (so its Shapley value is never positive, whatever the
valuations), and collusion prone when the row is entirely non-negative.

The averse block sits where ``c(n, j) = 2n - 3j - j^2`` changes sign.  Its
positive root ``x = (-3 + sqrt(8n + 9)) / 2`` is an integer exactly on the
ladder ``n = n_k = (k^2 + k - 2) / 2``; there the block is the two weakly
averse positions ``k - 1, k``.  Otherwise it is the single strongly averse
position ``floor(x) + 1``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DegenerateProfile, InvariantViolation
from .gain_game import GainGame
from .shapley import psi_matrix, shapley_fast


class Attitude(enum.Enum):
    STRONGLY_AVERSE = "strongly_averse"
    WEAKLY_AVERSE = "weakly_averse"
    WEAKLY_PRONE_AND_AVERSE = "weakly_prone_and_averse"
    STRONGLY_PRONE = "strongly_prone"
    WEAKLY_PRONE = "weakly_prone"
    NEITHER = "neither"

    @property
    def averse(self) -> bool:
        return self in (
            Attitude.STRONGLY_AVERSE,
            Attitude.WEAKLY_AVERSE,
            Attitude.WEAKLY_PRONE_AND_AVERSE,
        )

    @property
    def prone(self) -> bool:
        return self in (
            Attitude.STRONGLY_PRONE,
            Attitude.WEAKLY_PRONE,
            Attitude.WEAKLY_PRONE_AND_AVERSE,
        )


@dataclass(frozen=True)
class AttitudeReport:
    n: int
    per_position: tuple[Attitude, ...]
    k: int  # ladder index: n_k <= n < n_{k+1}

    @property
    def averse_set(self) -> tuple[int, ...]:
        return tuple(i for i, a in enumerate(self.per_position, start=1) if a.averse)


class LadderKind(enum.Enum):
    TWO_WEAK = "two_weak"
    ONE_STRONG = "one_strong"


@dataclass(frozen=True)
class LadderEntry:
    n: int
    kind: LadderKind
    positions: tuple[int, ...]


def n_of_k(k: int) -> int:
    if k < 1:
        raise ValueError("k must be >= 1")
    return (k * k + k - 2) // 2


def sign_root(n: int) -> tuple[int, bool]:
    """``(floor(x), x is integral)`` for the root ``x = (-3 + sqrt(8n+9)) / 2``.

    Exact: uses the integer square root of ``8n + 9``.
    """
    disc = 8 * n + 9
    r = math.isqrt(disc)
    return (r - 3) // 2, r * r == disc


def ladder_index(n: int) -> int:
    """The ``k`` with ``n_k <= n < n_{k+1}``."""
    root, _ = sign_root(n)
    return root + 1


def classify_casework(n: int) -> AttitudeReport:
    """Classification from the position of the sign root alone."""
    if n < 2:
        raise DegenerateProfile("attitudes need n >= 2")
    root, integral = sign_root(n)
    tags = [Attitude.NEITHER] * n
    if n == 2:
        tags = [Attitude.WEAKLY_PRONE_AND_AVERSE] * 2
    elif integral:
        tags[root - 1] = tags[root] = Attitude.WEAKLY_AVERSE
    else:
        tags[root] = Attitude.STRONGLY_AVERSE
    return AttitudeReport(n, tuple(tags), root + 1)


def _row_attitude(row: list) -> Attitude:
    nonpos = all(x <= 0 for x in row)
    nonneg = all(x >= 0 for x in row)
    if nonpos and nonneg:
        return Attitude.WEAKLY_PRONE_AND_AVERSE
    if nonpos:
        return Attitude.STRONGLY_AVERSE if all(x < 0 for x in row) else Attitude.WEAKLY_AVERSE
    if nonneg:
        return Attitude.STRONGLY_PRONE if all(x > 0 for x in row) else Attitude.WEAKLY_PRONE
    return Attitude.NEITHER


def classify_by_signs(n: int) -> AttitudeReport:
    """Classification by scanning every row of ``psi_matrix(n)``."""
    psi = psi_matrix(n)
    tags = tuple(_row_attitude(psi.row(i)) for i in range(1, n + 1))
    return AttitudeReport(n, tags, ladder_index(n))


def classify(n: int) -> AttitudeReport:
    """Classify every position, cross-checking the two derivations."""
    report = classify_casework(n)
    scanned = classify_by_signs(n)
    if report != scanned:
        raise InvariantViolation(
            f"n={n}: casework {report.per_position} != sign scan {scanned.per_position}"
        )
    return report


def ladder(max_n: int) -> list[LadderEntry]:
    if max_n < 2:
        raise DegenerateProfile("ladder needs max_n >= 2")
    entries = []
    for n in range(2, max_n + 1):
        rep = classify_casework(n)
        kind = LadderKind.TWO_WEAK if len(rep.averse_set) == 2 else LadderKind.ONE_STRONG
        entries.append(LadderEntry(n, kind, rep.averse_set))
    return entries


@dataclass(frozen=True)
class UnimodalityResult:
    ok: bool
    first_averse: int
    last_averse: int


def unimodality_check(game: GainGame, strict: bool = False) -> UnimodalityResult:
    """Shapley values fall down to the averse block and rise after it.

    Weak monotonicity by default; ``strict=True`` demands strict steps,
    which is only expected when all adjacent valuations differ.
    """
    n = game.n
    if n < 2:
        raise DegenerateProfile("unimodality needs n >= 2")
    averse = classify_casework(n).averse_set
    first, last = averse[0], averse[-1]
    phi = shapley_fast(game).values
    if strict:
        down = all(phi[i] > phi[i + 1] for i in range(first - 1))
        up = all(phi[i] < phi[i + 1] for i in range(last - 1, n - 1))
    else:
        down = all(phi[i] >= phi[i + 1] for i in range(first - 1))
        up = all(phi[i] <= phi[i + 1] for i in range(last - 1, n - 1))
    return UnimodalityResult(down and up, first, last)
