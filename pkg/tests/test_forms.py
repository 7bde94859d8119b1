"""Quadratic forms: evaluation, representability, reduction, representation."""

from __future__ import annotations

import math
import random

import pytest

from legendre_census import (
    BinaryQuadraticForm,
    ContractError,
    UnimodularTransform,
    almost_square_decomposition,
    evaluate_form,
    is_representable,
    least_discriminant,
    reduce_form,
    represent,
    sqrt_mod_4q,
)
from oracles import oracle_sqrt_mod


class TestEvaluate:
    def test_examples(self):
        assert evaluate_form(BinaryQuadraticForm(1, 0, 1), 2, 1) == 5
        assert evaluate_form(BinaryQuadraticForm(7, -3, 2), 0, 0) == 0
        assert evaluate_form(BinaryQuadraticForm(5, 4, 1), 1, 0) == 5

    def test_exact_at_large_operands(self):
        big = 10**12
        form = BinaryQuadraticForm(big, big, big)
        assert evaluate_form(form, big, big) == 3 * big**3


class TestTransform:
    def test_determinant_enforced(self):
        with pytest.raises(ContractError):
            UnimodularTransform(1, 1, 1, 1)

    def test_inverse(self):
        t = UnimodularTransform(0, -1, 1, 2)
        inv = t.inverse()
        x, y = inv.apply(*t.apply(3, -7))
        assert (x, y) == (3, -7)


class TestIsRepresentable:
    def test_examples(self):
        assert is_representable(5, -4)
        assert is_representable(3, -3)
        assert not is_representable(3, -5)

    def test_sign_agnostic(self):
        assert is_representable(3, 13)  # 13 = 1 mod 12, and 5**2 = 25 = 13 mod 12

    def test_rejects_bad_q(self):
        with pytest.raises(ContractError):
            is_representable(0, 5)


class TestReduce:
    def test_examples(self):
        reduced, t = reduce_form(BinaryQuadraticForm(5, 4, 1))
        assert (reduced.a, reduced.b, reduced.c) == (1, 0, 1)
        assert t.alpha * t.delta - t.beta * t.gamma == 1
        identity_case, t2 = reduce_form(BinaryQuadraticForm(1, 0, 1))
        assert (identity_case.a, identity_case.b, identity_case.c) == (1, 0, 1)
        assert (t2.alpha, t2.beta, t2.gamma, t2.delta) == (1, 0, 0, 1)
        untouched, _ = reduce_form(BinaryQuadraticForm(2, 2, 3))
        assert (untouched.a, untouched.b, untouched.c) == (2, 2, 3)

    def test_rejects_indefinite(self):
        with pytest.raises(ContractError):
            reduce_form(BinaryQuadraticForm(1, 5, 1))
        with pytest.raises(ContractError):
            reduce_form(BinaryQuadraticForm(-1, 0, -1))

    def test_transform_maps_input_to_output(self):
        form = BinaryQuadraticForm(5, 4, 1)
        reduced, t = reduce_form(form)
        for x, y in ((1, 0), (0, 1), (2, -3), (7, 5)):
            assert evaluate_form(form, *t.apply(x, y)) == evaluate_form(reduced, x, y)

    def test_boundary_tiebreaks(self):
        # b = -a normalizes to b = a; a = c forces b >= 0
        r1, _ = reduce_form(BinaryQuadraticForm(2, -2, 3))
        assert (r1.a, r1.b, r1.c) == (2, 2, 3)
        r2, _ = reduce_form(BinaryQuadraticForm(3, -1, 3))
        assert (r2.a, r2.b, r2.c) == (3, 1, 3)
        assert r1.is_reduced and r2.is_reduced

    def test_random_reduction_soundness(self):
        rng = random.Random(1)
        for _ in range(2000):
            a = rng.randint(1, 10**4)
            b = rng.randint(-(10**4), 10**4)
            c = rng.randint(1, 10**4)
            form = BinaryQuadraticForm(a, b, c)
            if form.discriminant >= 0:
                continue
            reduced, t = reduce_form(form)
            assert reduced.discriminant == form.discriminant
            assert reduced.is_reduced
            assert 3 * reduced.a * reduced.c <= -reduced.discriminant
            assert abs(reduced.b) <= reduced.a
            x, y = rng.randint(-40, 40), rng.randint(-40, 40)
            assert evaluate_form(form, *t.apply(x, y)) == evaluate_form(reduced, x, y)


class TestRepresent:
    def test_examples(self):
        rep = represent(5, 4)
        assert (rep.form.a, rep.form.b, rep.form.c) == (1, 0, 1)
        assert evaluate_form(rep.form, rep.x, rep.y) == 5
        assert math.gcd(rep.x, rep.y) == 1
        rep2 = represent(3, 3)
        assert (rep2.form.a, rep2.form.b, rep2.form.c) == (1, 1, 1)
        assert evaluate_form(rep2.form, rep2.x, rep2.y) == 3

    def test_not_representable_raises(self):
        with pytest.raises(ContractError):
            represent(3, 5)

    def test_contract_over_grid(self):
        for q in range(1, 80):
            for d in range(1, 80):
                if not is_representable(q, -d):
                    continue
                rep = represent(q, d)
                assert evaluate_form(rep.form, rep.x, rep.y) == q
                assert math.gcd(rep.x, rep.y) == 1
                assert rep.form.discriminant == -d
                assert rep.form.is_reduced


class TestAlmostSquare:
    def test_examples(self):
        assert tuple(almost_square_decomposition(5, 4)) == (4, 4, 4, 1)
        assert tuple(almost_square_decomposition(3, 3)) == (4, 3, 3, 1)

    def test_identity_on_random_pairs(self):
        rng = random.Random(2)
        done = 0
        while done < 200:
            q = rng.randint(1, 400)
            d = rng.randint(1, 400)
            if not is_representable(q, -d):
                continue
            almost = almost_square_decomposition(q, d)
            assert almost.u * q == almost.X**2 + almost.v * almost.Y**2
            assert almost.u > 0 and almost.v == d
            done += 1


class TestLeastDiscriminant:
    def test_examples(self):
        assert least_discriminant(5, 100).d == 4
        assert least_discriminant(3, 100).d == 3

    def test_direct_matches_brute_force(self):
        for q in range(2, 120):
            result = least_discriminant(q, 200)
            for d in range(1, 201):
                if oracle_sqrt_mod(-d, 4 * q) is not None:
                    assert result.d == d
                    break
            else:
                assert result.d is None

    def test_exceeded_bound(self):
        # -1 and -2 are non-squares mod 12
        assert least_discriminant(3, 2).d is None

    def test_constructive_recipe(self):
        result = least_discriminant(5, 100)
        c = result.constructive
        assert c is not None
        assert c.p0 == 7 and c.d0 == 17 and c.d == 119
        assert c.d % 8 == 7
        assert is_representable(5, -c.d)

    def test_constructive_skips_dividing_p0(self):
        c = least_discriminant(105, 100).constructive
        assert c.p0 == 23  # 7 divides 105
        assert math.gcd(c.d, 105) == 1
        assert is_representable(105, -c.d)

    def test_constructive_conditions_over_range(self):
        for q in range(2, 150):
            c = least_discriminant(q, 10**4).constructive
            assert c is not None
            odd_radical = math.prod(c.prescribed) if c.prescribed else 1
            assert c.d % 8 == 7
            assert math.gcd(c.d, odd_radical) == 1
            assert is_representable(q, -c.d)

    def test_constructive_failure_reported(self):
        result = least_discriminant(15, 10, n_q_cap=10)
        assert result.constructive is None
        assert "cap" in result.constructive_failure


class TestJointWithSqrt:
    def test_root_certificate(self):
        for q in (3, 5, 7, 105):
            result = least_discriminant(q, 500)
            assert result.root is not None
            assert result.root * result.root % (4 * q) == (-result.d) % (4 * q)

    def test_sqrt_consistency(self):
        assert sqrt_mod_4q(-4, 5) == oracle_sqrt_mod(-4, 20)
