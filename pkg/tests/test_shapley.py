from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from knaster_collusion import (
    GainGame,
    OracleTooLarge,
    psi_matrix,
    shapley_adjacent_gap,
    shapley_bruteforce,
    shapley_closed_form,
    shapley_fast,
)
from knaster_collusion.errors import DegenerateProfile
from knaster_collusion.shapley import indicator_profile, psi_gap, solve_column

from oracles import permutation_shapley

EXAMPLE_PSI = [
    ["0.080", "0", "-0.016", "-0.012"],
    ["-0.020", "0", "-0.016", "-0.012"],
    ["-0.020", "0", "-0.016", "-0.012"],
    ["-0.020", "0", "0.024", "-0.012"],
    ["-0.020", "0", "0.024", "0.048"],
]
METHODS = [shapley_closed_form, shapley_fast, shapley_bruteforce]


def test_psi_matrix_worked_example():
    psi = psi_matrix(5)
    assert [list(row) for row in psi.entries] == [[F(x) for x in row] for row in EXAMPLE_PSI]
    assert list(psi.gaps) == [F("0.1"), 0, F("-0.04"), F("-0.06")]


def test_psi_matrix_two_agents():
    assert psi_matrix(2).entries == ((0,), (0,))


def test_psi_matrix_needs_two():
    with pytest.raises(DegenerateProfile):
        psi_matrix(1)


@pytest.mark.parametrize("method", METHODS)
@pytest.mark.parametrize(
    "values, expected",
    [
        ((10, 6, 3, 2, 1), ("0.292", "-0.108", "-0.108", "-0.068", "-0.008")),
        ((10, 9, 8, 4, 1), ("-0.020", "-0.120", "-0.120", "0.040", "0.220")),
    ],
)
def test_worked_examples(method, values, expected):
    assert shapley_closed_form(GainGame.from_values(values)).values == tuple(F(x) for x in expected)
    assert method(GainGame.from_values(values)).values == tuple(F(x) for x in expected)


def test_three_agents_against_permutations():
    expected = (F(1, 54), F(-1, 27), F(1, 54))
    assert tuple(permutation_shapley([F(3), F(2), F(1)])) == expected
    for method in METHODS:
        assert method(GainGame.from_values([3, 2, 1])).values == expected


@pytest.mark.parametrize("method", METHODS)
def test_single_agent_and_constant(method):
    assert method(GainGame.from_values([4])).values == (0,)
    assert method(GainGame.from_values([7] * 6)).values == (0,) * 6


@pytest.mark.parametrize("a, b", [(9, 2), (3, 3), (0, -5)])
def test_null_profile_on_ladder(a, b):
    g = GainGame.from_values([a, a, b, b, b])
    assert shapley_closed_form(g).values == (0,) * 5
    assert shapley_bruteforce(g).values == (0,) * 5


@pytest.mark.parametrize("n", range(1, 7))
def test_bruteforce_matches_permutation_formula(n, rng):
    for _ in range(5):
        g = GainGame.from_values([rng.randint(0, 30) for _ in range(n)])
        assert list(shapley_bruteforce(g).values) == permutation_shapley(list(g.values))


@pytest.mark.parametrize("n", range(2, 9))
def test_three_routes_agree(n, rng):
    for _ in range(20):
        g = GainGame.from_values([rng.randint(0, 100) for _ in range(n)])
        brute = shapley_bruteforce(g)
        assert shapley_closed_form(g) == brute
        assert shapley_fast(g) == brute


def test_rational_valuations():
    g = GainGame.from_values([F(7, 3), F(1, 2), F(-5, 7), F(1, 2)])
    assert shapley_closed_form(g) == shapley_fast(g) == shapley_bruteforce(g)


def test_adjacent_gap_examples():
    assert shapley_adjacent_gap(GainGame.from_values([10, 6, 3, 2, 1]), 2) == 0
    assert shapley_adjacent_gap(GainGame.from_values([3, 2, 1]), 1) == F(1, 18)
    flat = GainGame.from_values([2] * 5)
    assert all(shapley_adjacent_gap(flat, j) == 0 for j in range(1, 5))


@pytest.mark.parametrize("n", range(2, 8))
def test_adjacent_gap_consistency(n, rng):
    for _ in range(5):
        g = GainGame.from_values([rng.randint(0, 50) for _ in range(n)])
        phi = shapley_fast(g)
        for j in range(1, n):
            assert shapley_adjacent_gap(g, j) == phi[j] - phi[j + 1]


def test_oracle_cap():
    g = GainGame.from_values(range(6))
    with pytest.raises(OracleTooLarge):
        shapley_bruteforce(g, cap=5)
    with pytest.raises(OracleTooLarge):
        shapley_adjacent_gap(g, 1, cap=5)
    assert shapley_bruteforce(g, cap=6) == shapley_fast(g)


@pytest.mark.parametrize("n", range(2, 51))
def test_psi_column_structure(n):
    psi = psi_matrix(n)
    for j in range(1, n):
        column = [psi.entry(i, j) for i in range(1, n + 1)]
        a, b = psi.upper[j - 1], psi.lower[j - 1]
        assert sum(column) == 0
        assert column == [a] * j + [b] * (n - j)
        assert a - b == psi_gap(n, j) == F(2 * n - 3 * j - j * j, 2 * n * (j + 1) * (j + 2))
        assert j * a + (n - j) * b == 0
        assert (a, b) == solve_column(n, j)


@pytest.mark.parametrize("n", range(2, 9))
def test_columns_are_indicator_game_values(n):
    psi = psi_matrix(n)
    for j in range(1, n):
        phi = shapley_bruteforce(GainGame(indicator_profile(n, j))).values
        assert list(phi) == [psi.entry(i, j) for i in range(1, n + 1)]


def test_coefficients_without_division_by_n_do_not_match_enumeration():
    """The unscaled coefficients (n-j) c and -j c are off by exactly n."""
    n, j = 5, 1
    phi = shapley_bruteforce(GainGame(indicator_profile(n, j))).values
    unscaled = (n - j) * psi_gap(n, j)
    assert phi[0] != unscaled
    assert phi[0] * n == unscaled


int_games = st.lists(st.integers(0, 100), min_size=2, max_size=7).map(GainGame.from_values)


@settings(max_examples=60)
@given(int_games)
def test_efficiency_and_symmetry(g):
    phi = shapley_fast(g).values
    assert sum(phi) == 0
    for i in range(g.n - 1):
        if g.values[i] == g.values[i + 1]:
            assert phi[i] == phi[i + 1]
    assert shapley_bruteforce(g).values == phi


@given(int_games, st.fractions(min_value=F(1, 10), max_value=10))
def test_positive_scaling(g, lam):
    scaled = GainGame.from_values([lam * v for v in g.values])
    phi, phi_scaled = shapley_fast(g).values, shapley_fast(scaled).values
    assert phi_scaled == tuple(lam * x for x in phi)
    assert [x > 0 for x in phi] == [x > 0 for x in phi_scaled]
    assert [x < 0 for x in phi] == [x < 0 for x in phi_scaled]


def test_results_keep_labels():
    from knaster_collusion import canonicalize

    g = GainGame(canonicalize([("x", 2), ("y", 10), ("z", 1)]))
    by_label = shapley_fast(g).by_label()
    assert list(by_label) == ["y", "x", "z"]
    assert by_label == dict(zip(["y", "x", "z"], shapley_bruteforce(g).values))


def test_null_profile_needs_block_boundary_at_zero_column():
    # n = 5 lies on the ladder; the zero column is j = 2, so only a split
    # after agent 2 gives an all-zero value.  A split after agent 3 does not.
    assert psi_gap(5, 2) == 0
    assert shapley_fast(GainGame.from_values([4, 4, 1, 1, 1])).values == (0,) * 5
    assert shapley_fast(GainGame.from_values([4, 4, 4, 1, 1])).values != (0,) * 5
