"""Least-number searches, classification, census, and the lemma verifiers."""

from __future__ import annotations

import random
from itertools import islice

import pytest

from legendre_census import (
    CapExceededError,
    ContractError,
    DimensionLimitError,
    SignVector,
    SquarefreeModulus,
    Status,
    check_generation_lemma,
    check_subspace_lemma,
    classify,
    compute_g,
    compute_n_q,
    exceptional_census,
    factorize_window,
    find_exceptional_divisor,
    least_n_for_sign,
    threshold_y,
)
from oracles import oracle_g, oracle_n_q


def m(q):
    return SquarefreeModulus.from_int(q)


def moduli_up_to(limit):
    for fac in factorize_window(3, limit):
        if fac.value % 2 == 1 and fac.is_squarefree:
            yield SquarefreeModulus(fac.value, tuple(p for p, _ in fac.factors))


class TestLeastNForSign:
    def test_examples(self):
        assert least_n_for_sign(m(3), SignVector(0, 1), 100) == 1
        assert least_n_for_sign(m(3), SignVector(1, 1), 100) == 17
        assert least_n_for_sign(m(15), SignVector(0b10, 2), 100) == 73  # pattern (0, 1)

    def test_cap_exhaustion_is_none(self):
        assert least_n_for_sign(m(3), SignVector(1, 1), 16) is None

    def test_dimension_mismatch(self):
        with pytest.raises(ContractError):
            least_n_for_sign(m(15), SignVector(1, 1), 100)


class TestComputeNq:
    def test_golden_values(self):
        assert compute_n_q(m(3)).value == 17
        assert compute_n_q(m(5)).value == 17
        assert compute_n_q(m(7)).value == 17
        assert compute_n_q(m(15)).value == 73
        assert compute_n_q(m(105)).value == 281

    def test_witnesses_recompute(self):
        result = compute_n_q(m(15))
        assert result.witnesses == {0b00: 1, 0b11: 17, 0b01: 41, 0b10: 73}
        assert max(result.witnesses.values()) == result.value
        assert len(result.witnesses) == 4

    def test_matches_definitional_oracle(self):
        for mod in islice(moduli_up_to(150), 40):
            assert compute_n_q(mod, 10**6).value == oracle_n_q(mod.primes, 10**6), mod.value

    def test_cap_exhaustion(self):
        result = compute_n_q(m(15), cap=50)
        assert result.value is None and result.exceeded
        assert result.witnesses == {0b00: 1, 0b11: 17, 0b01: 41}

    def test_dimension_limit(self):
        with pytest.raises(DimensionLimitError):
            compute_n_q(m(15), dimension_limit=1)

    def test_no_congruence_mode(self):
        # without the residue class, q = 3 sees both patterns by n = 2
        assert compute_n_q(m(3), residue_class=None).value == 2


class TestComputeG:
    def test_golden_values(self):
        assert compute_g(m(3)).value == 17
        assert compute_g(m(15)).value == 41
        assert compute_g(m(105)).value == 73
        assert compute_g(m(21), extra=5).value == 73
        assert compute_g(m(21), extra=105).value == 73

    def test_quantity_label(self):
        assert compute_g(m(15)).quantity == "g_q"
        assert compute_g(m(15), extra=7).quantity == "g_qr"

    def test_witnesses_form_basis(self):
        result = compute_g(m(15))
        assert result.witnesses == (17, 41)
        assert result.value == result.witnesses[-1]

    def test_matches_definitional_oracle(self):
        for mod in islice(moduli_up_to(120), 35):
            assert compute_g(mod, 1, 10**6).value == oracle_g(mod.primes, 1, 10**6), mod.value

    def test_extra_matches_oracle(self):
        assert compute_g(m(21), 5, 10**4).value == oracle_g((3, 7), 5, 10**4)
        assert compute_g(m(15), 7, 10**4).value == oracle_g((3, 5), 7, 10**4)

    def test_monotone_in_extra_coprimality(self):
        # larger extra modulus shrinks the admissible set, so g can only grow
        for mod in moduli_up_to(500):
            base = compute_g(mod, 1).value
            for r, r2 in ((3, 15), (5, 35), (7, 77), (11, 143)):
                g_r = compute_g(mod, r).value
                g_r2 = compute_g(mod, r2).value
                assert base <= g_r <= g_r2, (mod.value, r, r2)

    def test_unit_modulus(self):
        assert compute_g(m(1)).value == 1


class TestClassify:
    def test_examples(self):
        assert classify(m(15), 40).status is Status.EXCEPTIONAL
        assert classify(m(15), 41).status is Status.GOOD
        st = classify(m(105), 72)
        assert st.status is Status.INELIGIBLE
        assert st.worst_divisor == 21
        assert st.worst_divisor_g == 73

    def test_certificates_recompute(self):
        st = classify(m(105), 72)
        for d, g in st.divisor_g.items():
            assert compute_g(m(d), extra=105).value == g
        assert compute_g(m(105)).value == st.g_q
        st15 = classify(m(15), 40)
        assert st15.g_q == 41
        assert st15.divisor_g == {3: 17, 5: 17}
        assert all(g <= 40 for g in st15.divisor_g.values())

    def test_primes_never_ineligible(self):
        for p in (3, 5, 7, 11, 13, 10007):
            st = classify(m(p), 1)
            assert st.status in (Status.GOOD, Status.EXCEPTIONAL)
            assert st.divisor_g == {}

    def test_rejects_unit_modulus(self):
        with pytest.raises(ContractError):
            classify(m(1), 10)

    def test_inconclusive_when_cap_below_threshold(self):
        # cap 20 cannot decide eligibility at y = 1000 for a modulus whose
        # divisor spans are incomplete by 20
        st = classify(m(105), 1000, cap=20)
        assert st.status is Status.INCONCLUSIVE

    def test_cap_at_least_y_still_decides(self):
        # g_15 = 41 > cap = y = 25, so exceptional is proven without knowing g
        st = classify(m(15), 25, cap=25)
        assert st.status is Status.EXCEPTIONAL
        assert st.g_q is None

    def test_agrees_with_per_divisor_recomputation(self):
        rng = random.Random(31)
        moduli = [mod for mod in moduli_up_to(2000) if mod.k >= 2]
        for mod in rng.sample(moduli, 60):
            y = rng.randint(5, 120)
            st = classify(mod, y)
            expected_divisor_g = {}
            for mask in range(1, (1 << mod.k) - 1):
                d = mod.divisor(mask)
                expected_divisor_g[d] = compute_g(m(d), extra=mod.value).value
            assert st.divisor_g == dict(sorted(expected_divisor_g.items()))
            offending = [d for d, g in expected_divisor_g.items() if g > y]
            if offending:
                assert st.status is Status.INELIGIBLE
                assert st.worst_divisor == min(offending)
            elif compute_g(mod).value > y:
                assert st.status is Status.EXCEPTIONAL
            else:
                assert st.status is Status.GOOD


class TestThresholdY:
    def test_natural_log_floor(self):
        import math

        assert threshold_y(15, 3) == math.floor(math.log(15) ** 3) == 19
        assert threshold_y(3, 3) == 1
        with pytest.raises(ContractError):
            threshold_y(1, 3)


class TestCensus:
    def test_q15_exceptional_at_a3(self):
        res = exceptional_census(15, 15, 3.0)
        (record,) = res.records
        assert record.y == 19
        assert record.status.status is Status.EXCEPTIONAL

    def test_skips_counted(self):
        res = exceptional_census(3, 100, 3.0)
        values = [r.q for r in res.records]
        assert 9 not in values and 4 not in values
        assert res.skipped_even == 49
        assert res.skipped_not_squarefree == len([q for q in range(3, 101, 2) if q in (9, 25, 27, 45, 49, 63, 75, 81, 99)])
        assert all(q % 2 == 1 for q in values)

    def test_matches_serial_classify(self):
        res = exceptional_census(3, 100, 3.0)
        for record in res.records:
            st = classify(m(record.q), record.y)
            assert st == record.status
            assert compute_n_q(m(record.q)).value == record.n_q

    def test_worker_counts_agree(self):
        serial = exceptional_census(3, 400, 3.0, workers=1)
        parallel = exceptional_census(3, 400, 3.0, workers=2)
        assert serial.records == parallel.records
        assert serial.counts() == parallel.counts()

    def test_rejects_bad_ranges(self):
        with pytest.raises(ContractError):
            exceptional_census(10, 5, 3.0)
        with pytest.raises(ContractError):
            exceptional_census(3, 10, 0.5)


class TestGenerationLemma:
    def test_examples(self):
        assert check_generation_lemma(m(3))
        assert check_generation_lemma(m(15))
        assert check_generation_lemma(m(105))

    def test_inconclusive_raises(self):
        with pytest.raises(CapExceededError):
            check_generation_lemma(m(15), cap=50)


class TestSubspaceLemma:
    def test_example_q15(self):
        assert check_subspace_lemma(m(15), 10**4, 40)

    def test_smooth_set_is_the_expected_one(self):
        from legendre_census import SmoothSetSpec, enumerate_smooth

        assert enumerate_smooth(SmoothSetSpec(10**4, 40, 15)) == [1, 17, 289, 4913]

    def test_precondition_violation(self):
        with pytest.raises(ContractError):
            check_subspace_lemma(m(15), 10**4, 41)  # 15 is 41-good, not exceptional


class TestDescent:
    def test_example_q105(self):
        res = find_exceptional_divisor(m(105), 72)
        assert res.steps[0].offending_divisor == 21
        assert res.divisor == 3 and res.threshold == 2
        assert res.certificate.status is Status.EXCEPTIONAL
        # endpoint re-verifies
        assert classify(m(res.divisor), res.threshold).status is Status.EXCEPTIONAL

    def test_certificate_soundness(self):
        res = find_exceptional_divisor(m(105), 72)
        d0 = res.steps[0].offending_divisor
        assert compute_g(m(d0), extra=105).value > 72

    def test_prime_rejected(self):
        with pytest.raises(ContractError):
            find_exceptional_divisor(m(7), 10)

    def test_eligible_rejected(self):
        with pytest.raises(ContractError):
            find_exceptional_divisor(m(15), 41)

    def test_many_ineligible_descend(self):
        checked = 0
        for mod in moduli_up_to(1500):
            if mod.k < 2:
                continue
            y = threshold_y(mod.value, 2.0)
            if classify(mod, y).status is not Status.INELIGIBLE:
                continue
            res = find_exceptional_divisor(mod, y)
            assert classify(m(res.divisor), res.threshold).status is Status.EXCEPTIONAL
            checked += 1
        assert checked > 10
