from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from knaster_collusion import InvalidMisreport, ValuationProfile, allocate, canonicalize, single_misreport_deltas


def test_worked_example_allocation():
    a = allocate(ValuationProfile.from_values([10, 6, 3, 2, 1]))
    assert a.surplus == F(28, 5)
    assert a.adjusted_shares == tuple(F(x, 25) for x in (78, 58, 43, 38, 33))
    assert a.compensations == (F(-172, 25),) + tuple(F(x, 25) for x in (58, 43, 38, 33))
    # independent summations
    assert sum(a.compensations) == 0
    assert sum(a.adjusted_shares) == 10
    assert a.winner == 1


def test_constant_profile_has_no_surplus():
    a = allocate(ValuationProfile.from_values([5, 5, 5]))
    assert a.surplus == 0
    assert a.adjusted_shares == (F(5, 3),) * 3


def test_single_agent_keeps_object():
    a = allocate(ValuationProfile.from_values([7]))
    assert a.adjusted_shares == (7,)
    assert a.surplus == 0
    assert a.compensations == (0,)


def recompute_deltas(profile, k, eps):
    """Oracle: rerun the allocation on the altered declarations and subtract."""
    before = dict(zip(profile.labels, allocate(profile).adjusted_shares))
    altered = [(lab, v + eps if i == k else v) for i, (lab, v) in enumerate(profile.items(), start=1)]
    q = canonicalize(altered)
    after = dict(zip(q.labels, allocate(q).adjusted_shares))
    return [after[lab] - before[lab] for lab in profile.labels]


def test_misreport_example_n5():
    p = ValuationProfile.from_values([10, 6, 3, 2, 1])
    expected = [F(-1, 25), F(-1, 25), F(4, 25), F(-1, 25), F(-1, 25)]
    assert recompute_deltas(p, 3, F(1)) == expected
    assert single_misreport_deltas(p, 3, 1) == expected


def test_misreport_two_agents():
    p = ValuationProfile.from_values([9, 1])
    eps = F(3)
    assert recompute_deltas(p, 2, eps) == [-eps / 4, eps / 4]
    assert single_misreport_deltas(p, 2, eps) == [-eps / 4, eps / 4]


@pytest.mark.parametrize("k, eps", [(1, 1), (3, 0), (3, 7), (3, 8), (6, 1)])
def test_misreport_rejects_out_of_range(k, eps):
    p = ValuationProfile.from_values([10, 6, 3, 2, 1])
    with pytest.raises(InvalidMisreport):
        single_misreport_deltas(p, k, eps)


profiles = st.lists(st.integers(0, 60), min_size=1, max_size=10).map(ValuationProfile.from_values)


@given(profiles)
def test_allocation_invariants(p):
    a = allocate(p)
    n = p.n
    assert sum(a.compensations) == 0
    assert sum(a.adjusted_shares) == p.values[0]
    assert all(V >= v / n for V, v in zip(a.adjusted_shares, p.values))
    assert a.surplus >= 0
    assert (a.surplus == 0) == p.is_constant()


@given(profiles)
def test_envy_structure(p):
    c = allocate(p).compensations
    for j in range(2, p.n + 1):
        for k in range(j + 1, p.n + 1):
            if p.v(k) < p.v(j):
                assert c[k - 1] < c[j - 1]


@given(profiles.filter(lambda p: p.n >= 2 and p.v(p.n) < p.v(1)), st.data())
def test_misreport_matches_recompute(p, data):
    k = data.draw(st.sampled_from([i for i in range(2, p.n + 1) if p.v(i) < p.v(1)]))
    room = p.v(1) - p.v(k)
    eps = room * F(data.draw(st.integers(1, 99)), 100)
    deltas = single_misreport_deltas(p, k, eps)
    assert sum(deltas) == 0
    assert deltas == recompute_deltas(p, k, eps)
