"""p-adic valuations, Frobenius substitution, and mod p^k reductions."""

import random
from fractions import Fraction

import pytest

from mirrorint import (
    INF,
    NegativeValuation,
    NotPrime,
    RationalSeries,
    frobenius_substitute,
    is_prime,
    primes_up_to,
    reduce_series,
    valuation,
)

import helpers

F = Fraction


def S(coeffs, order=None, valuation=0):
    return RationalSeries.from_coeffs(coeffs, order=order, valuation=valuation)


class TestValuation:
    def test_positive(self):
        assert valuation(F(9, 7), 3).value == 2

    def test_negative(self):
        assert valuation(F(1, 5), 5).value == -1

    def test_zero_is_infinite(self):
        assert valuation(0, 11).value == INF

    def test_integers_and_integrality(self):
        assert valuation(12, 2).value == 2
        assert valuation(12, 3).value == 1
        assert valuation(12, 5).value == 0
        assert valuation(12, 5).is_integral()
        assert not valuation(F(1, 5), 5).is_integral()
        assert valuation(0, 7).is_integral()

    def test_composite_modulus_rejected(self):
        with pytest.raises(NotPrime):
            valuation(F(1, 2), 6)
        with pytest.raises(NotPrime):
            valuation(3, 1)


class TestPrimeHelpers:
    def test_is_prime_small(self):
        hits = [n for n in range(60) if is_prime(n)]
        assert hits == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29,
                        31, 37, 41, 43, 47, 53, 59]

    def test_primes_up_to_matches_membership(self):
        assert primes_up_to(50) == [n for n in range(51) if is_prime(n)]
        assert primes_up_to(1) == []


class TestFrobeniusSubstitute:
    def test_monomial(self):
        t = RationalSeries.identity(2)
        got = frobenius_substitute(t, 5)
        assert got == RationalSeries.monomial(1, 5, 6)

    def test_quadratic_p2(self):
        got = frobenius_substitute(S([1, 1, 1], order=3), 2)
        assert got == S([1, 0, 1, 0, 1], order=5)

    def test_geometric_p3(self):
        geo = S([1, 1, 1], order=3)
        got = frobenius_substitute(geo, 3)
        assert got.order == 7
        assert got == S([1, 0, 0, 1, 0, 0, 1], order=7)

    def test_max_order_cap(self):
        geo = S([1, 1, 1], order=3)
        got = frobenius_substitute(geo, 3, max_order=5)
        assert got.order == 5
        assert got == S([1, 0, 0, 1, 0], order=5)

    def test_homomorphism_on_random_series(self):
        rng = random.Random(991)
        for _ in range(300):
            p = rng.choice([2, 3, 5])
            n = rng.randint(2, 7)
            a = helpers.rand_series(rng, n)
            b = helpers.rand_series(rng, n)
            fa, fb = frobenius_substitute(a, p), frobenius_substitute(b, p)
            assert frobenius_substitute(a + b, p) == fa + fb
            assert frobenius_substitute(a * b, p) == fa * fb


class TestReduceSeries:
    def test_plain_integers(self):
        got = reduce_series(S([1, 7], order=2), 7, 2)
        assert got.residues == (1, 7)
        assert got.precision == 2 and got.modulus == 49
        assert got.exact_lift

    def test_negative_valuation_flagged(self):
        with pytest.raises(NegativeValuation) as ei:
            reduce_series(S([1, F(1, 7)], order=2), 7, 2)
        assert ei.value.index == 1
        assert ei.value.prime == 7
        assert ei.value.valuation == -1

    def test_unit_denominator_inverted(self):
        got = reduce_series(S([1, F(1, 3)], order=2), 7, 1)
        assert got.residues == (1, 5)

    def test_reduction_commutes_with_arithmetic(self):
        rng = random.Random(992)
        for _ in range(300):
            p = rng.choice([3, 5, 7])
            k = rng.randint(1, 4)
            n = rng.randint(2, 6)
            a = S([rng.randint(-50, 50) for _ in range(n)], order=n)
            b = S([rng.randint(-50, 50) for _ in range(n)], order=n)
            ra, rb = reduce_series(a, p, k), reduce_series(b, p, k)
            assert reduce_series(a + b, p, k).residues == (ra + rb).residues
            assert reduce_series(a * b, p, k).residues == (ra * rb).residues

    def test_prime_mismatch_rejected(self):
        a = reduce_series(S([1], order=1), 3, 2)
        b = reduce_series(S([1], order=1), 5, 2)
        with pytest.raises(ValueError):
            a + b


def test_valuation_axioms_property_suite():
    # >= 1000 cases for each prime in {2, 3, 5, 7, 11, 13}
    assert helpers.run_padic_axioms(1000) >= 6000
