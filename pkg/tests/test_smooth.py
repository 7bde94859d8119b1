"""Restricted smooth sets and the scaling table."""

from __future__ import annotations

import math
import random

import pytest

from legendre_census import (
    ContractError,
    SmoothSetSpec,
    count_smooth,
    enumerate_smooth,
    factorize,
    smoothness_scaling_table,
)
from oracles import oracle_smooth_set


class TestSpec:
    def test_validation(self):
        with pytest.raises(ContractError):
            SmoothSetSpec(0, 10)
        with pytest.raises(ContractError):
            SmoothSetSpec(10, 1)
        with pytest.raises(ContractError):
            SmoothSetSpec(10, 10, 0)


class TestEnumerate:
    def test_examples(self):
        assert enumerate_smooth(SmoothSetSpec(100, 20)) == [1, 17]
        assert enumerate_smooth(SmoothSetSpec(100, 20, 17)) == [1]
        assert enumerate_smooth(SmoothSetSpec(16, 1000)) == [1]

    def test_golden_count_10k(self):
        elements = enumerate_smooth(SmoothSetSpec(10_000, 100))
        assert len(elements) == 22
        assert count_smooth(SmoothSetSpec(10_000, 100)) == 22
        assert 4913 in elements  # 17**3

    def test_matches_brute_force(self):
        for x, y, q in ((500, 50, 1), (2000, 100, 1), (3000, 120, 17), (10_000, 100, 41), (1500, 90, 15)):
            assert enumerate_smooth(SmoothSetSpec(x, y, q)) == oracle_smooth_set(x, y, q)

    def test_closure_of_elements(self):
        spec = SmoothSetSpec(10**6, 200, 15)
        for n in enumerate_smooth(spec):
            for p, _ in factorize(n).factors:
                assert p <= spec.y and p % 8 == 1 and spec.q % p != 0

    def test_ascending_no_duplicates(self):
        elements = enumerate_smooth(SmoothSetSpec(10**6, 150))
        assert elements == sorted(set(elements))

    def test_multiplicative_closure(self):
        spec = SmoothSetSpec(10**5, 120)
        elements = enumerate_smooth(spec)
        members = set(elements)
        rng = random.Random(3)
        for _ in range(300):
            a, b = rng.choice(elements), rng.choice(elements)
            if a * b <= spec.x:
                assert a * b in members


class TestCount:
    def test_count_equals_enumeration_on_seeded_specs(self):
        rng = random.Random(42)
        for _ in range(50):
            spec = SmoothSetSpec(rng.randint(1, 10**5), rng.randint(2, 300), rng.choice((1, 3, 17, 105, 41)))
            assert count_smooth(spec) == len(enumerate_smooth(spec))

    def test_monotonicity(self):
        assert count_smooth(SmoothSetSpec(10**4, 100)) <= count_smooth(SmoothSetSpec(10**5, 100))
        assert count_smooth(SmoothSetSpec(10**4, 50)) <= count_smooth(SmoothSetSpec(10**4, 100))
        # adding a prime = 1 mod 8 below y to q can only shrink the set
        assert count_smooth(SmoothSetSpec(10**4, 100, 17)) <= count_smooth(SmoothSetSpec(10**4, 100))


class TestScalingTable:
    def test_example_row(self):
        a = math.log(20) / math.log(math.log(100))
        (row,) = smoothness_scaling_table([100], [a])
        assert row.count == 2
        assert row.observed_exponent == pytest.approx(math.log(2) / math.log(100), abs=1e-12)
        assert row.theorem_exponent_lower == pytest.approx(1 - 1 / a)
        assert row.theorem_exponent_upper == row.theorem_exponent_lower

    def test_empty_and_shape(self):
        assert smoothness_scaling_table([], [2.0]) == []
        rows = smoothness_scaling_table([100, 1000, 10_000], [2.0, 3.0])
        assert len(rows) == 6

    def test_x_one_has_no_exponent(self):
        (row,) = smoothness_scaling_table([1], [2.0])
        assert row.count == 1 and row.observed_exponent is None
