import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_partitions
from twotorsion.census import (
    RECURRENCE_LIMIT,
    CensusError,
    asymptotic_report,
    exponent_of_order,
    partition_count,
    partition_table,
    partitions_of,
    run_census,
)
from twotorsion.homology import torsion_signature


def test_partition_count_small():
    assert partition_count(0) == 1
    assert partition_count(10) == 42
    assert partition_count(16) == 231
    assert partition_table(6) == [1, 1, 2, 3, 5, 7, 11]
    with pytest.raises(ValueError):
        partition_count(-1)


@pytest.mark.parametrize("n", range(1, 41))
def test_partition_count_matches_enumeration(n):
    assert partition_count(n) == len(brute_partitions(n))


def test_partitions_of_order_and_count():
    assert [G.exponents for G in partitions_of(3)] == [(3,), (2, 1), (1, 1, 1)]
    for n in range(1, 20):
        groups = [G.exponents for G in partitions_of(n)]
        assert groups == sorted(brute_partitions(n), reverse=True)


def test_partition_count_switches_to_series():
    # the recurrence and the series agree at the switch-over point
    from sympy.functions.combinatorial.numbers import partition

    assert partition_count(RECURRENCE_LIMIT) == int(partition(RECURRENCE_LIMIT))
    big = partition_count(2 ** 20)
    assert big == int(partition(2 ** 20))


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=300))
def test_partition_count_monotone_and_bounded(n):
    # p(n) >= p(n-1) and p(n) <= 2^(n-1)
    assert partition_count(n - 1) <= partition_count(n) <= 2 ** (n - 1)


def test_exponent_of_order():
    assert exponent_of_order(2) == 1
    assert exponent_of_order(64) == 6
    for bad in (0, 1, 3, 12, 96):
        with pytest.raises(CensusError):
            exponent_of_order(bad)


def test_census_e1():
    rep = run_census(2, 1)
    assert rep.group_count == 1
    assert rep.realized[0].torsion == (2,)
    assert rep.distinctness_certified


def test_census_e6():
    rep = run_census(2, 6)
    assert rep.group_count == 11
    assert rep.distinctness_certified
    for entry in rep.realized:
        assert entry.torsion == torsion_signature(entry.group.invariant_factors())
        assert entry.num_vertices <= 2 * 3 * 6


def test_census_workers_agree():
    serial = run_census(2, 5)
    pooled = run_census(2, 5, workers=2)
    assert serial == pooled


def test_census_without_verification():
    rep = run_census(3, 4, verify=False)
    assert rep.group_count == 5
    assert all(entry.torsion is None for entry in rep.realized)
    assert not rep.distinctness_certified


def test_census_rejects_bad_input():
    with pytest.raises(CensusError):
        run_census(1, 3)
    with pytest.raises(CensusError):
        run_census(2, 0)


def test_asymptotic_rows():
    rows = {r.d: r for r in asymptotic_report(4)}
    assert rows[2].groups == 5
    assert rows[2].vertices == 50
    assert rows[4].groups == 231
    assert rows[4].vertices == 100
    assert rows[4].ratio == pytest.approx(rows[4].log2_groups / 4)


def test_asymptotic_ratio_increases():
    rows = asymptotic_report(20)
    ratios = [r.ratio for r in rows]
    assert all(a < b for a, b in zip(ratios, ratios[1:]))
    # pi(2) = 2 has log2 1 < 2^(1/2); from d = 2 on the bound holds
    assert not rows[0].doubly_exponential
    assert all(r.doubly_exponential for r in rows[1:])
