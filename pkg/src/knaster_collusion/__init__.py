"""Collusion analysis for the Knaster fair-division procedure.

Exact (rational) computation of the Knaster allocation, the gain game of
colluding agents, its Shapley value, the positions that always lose from
collusion, and the coalitions of maximal total or per-capita gain.
"""
from .attitude import Attitude, AttitudeReport, LadderEntry, LadderKind, classify, ladder, n_of_k, unimodality_check
from .coalitions import (
    CoalitionAnalysis,
    Criterion,
    FormationTrace,
    analyze,
    best_of_size,
    check_bounds,
    delta_percapita,
    delta_total,
    form_coalition,
    optimal_sizes,
)
from .errors import (
    CollusionError,
    DegenerateBounds,
    DegenerateProfile,
    InvalidCoalition,
    InvalidMisreport,
    InvalidProfile,
    InvalidSize,
    InvariantViolation,
    OracleTooLarge,
)
from .gain_game import GainGame
from .identities import IdentityCheck, identity_sums
from .knaster import KnasterAllocation, allocate, single_misreport_deltas
from .shapley import (
    PsiMatrix,
    ShapleyResult,
    psi_matrix,
    shapley_adjacent_gap,
    shapley_bruteforce,
    shapley_closed_form,
    shapley_fast,
)
from .valuations import ValuationProfile, adjacent_differences, canonicalize

__version__ = "0.1.0"
