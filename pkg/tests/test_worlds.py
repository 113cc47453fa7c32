import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from questions.errors import (
    GeneratorStructureError, NormalizationError, NullConditioningError, SizeMismatchError,
    UndefinedQuantityError,
)
from questions.worlds import (
    Proposition, WorldDistribution, WorldSet, balance_sum, condition, entropy, info,
    mutual_info_pair, prob,
)

probs01 = st.floats(0.01, 0.99)


class TestWorldSet:
    def test_generator_bits(self):
        w = WorldSet.from_generators(3)
        np.testing.assert_array_equal(w.generator(1).truth, [0, 0, 1, 1, 0, 0, 1, 1])

    def test_size_must_match(self):
        with pytest.raises(ValueError):
            WorldSet(6, 3)

    def test_no_generators(self):
        with pytest.raises(GeneratorStructureError):
            WorldSet(5).generator(0)

    def test_generator_index(self):
        with pytest.raises(IndexError):
            WorldSet.from_generators(2).generator(2)


class TestProposition:
    def test_operators(self):
        w = WorldSet.from_generators(2)
        a, b = w.generators()
        np.testing.assert_array_equal((a & b).truth, [0, 0, 0, 1])
        np.testing.assert_array_equal((a | b).truth, [0, 1, 1, 1])
        np.testing.assert_array_equal((a ^ b).truth, [0, 1, 1, 0])
        np.testing.assert_array_equal(a.xnor(b).truth, [1, 0, 0, 1])
        assert ~~a == a

    def test_hash_and_eq(self):
        w = WorldSet.from_generators(2)
        a = w.generator(0)
        assert {a: 1}[w.from_worlds([1, 3])] == 1

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatchError):
            WorldSet(2).true() & WorldSet(4).true()

    def test_immutable(self):
        p = WorldSet(2).true()
        with pytest.raises(AttributeError):
            p.size = 3


class TestDistribution:
    def test_renormalizes_drift(self):
        d = WorldDistribution([0.5, 0.5 + 1e-10])
        assert d.probs.sum() == pytest.approx(1.0, abs=1e-15)

    def test_rejects_bad_sum(self):
        with pytest.raises(NormalizationError):
            WorldDistribution([0.5, 0.6])

    def test_rejects_negative(self):
        with pytest.raises(NormalizationError):
            WorldDistribution([1.1, -0.1])

    def test_product_marginals(self):
        d = WorldDistribution.product([0.2, 0.7, 0.4])
        w = WorldSet.from_generators(3)
        np.testing.assert_allclose([prob(d, g) for g in w.generators()], [0.2, 0.7, 0.4], atol=1e-15)


class TestInformation:
    def test_half_is_one_bit(self):
        assert info(WorldDistribution([0.5, 0.5]), WorldSet(2).from_worlds([0])) == 1.0

    def test_zero_probability_infinite(self):
        assert info(WorldDistribution([1.0, 0.0]), WorldSet(2).from_worlds([1])) == math.inf

    def test_even_prime(self):
        w = WorldSet(100)
        primes = {p for p in range(2, 101) if all(p % k for k in range(2, int(p ** 0.5) + 1))}
        even = w.proposition(lambda i: (i + 1) % 2 == 0)
        prime = w.proposition(lambda i: i + 1 in primes)
        val = mutual_info_pair(WorldDistribution.uniform(100), even, prime)
        assert val == pytest.approx(-3.6438561897747253, abs=1e-12)

    def test_mutual_info_undefined(self):
        w = WorldSet.from_generators(1)
        with pytest.raises(UndefinedQuantityError):
            mutual_info_pair(WorldDistribution([1.0, 0.0], 1), w.generator(0), w.generator(0))

    def test_disjoint_is_minus_inf(self):
        w = WorldSet.from_generators(1)
        a = w.generator(0)
        assert mutual_info_pair(WorldDistribution([0.5, 0.5], 1), a, ~a) == -math.inf

    @given(probs01, probs01)
    def test_independence_zero(self, pa, pb):
        w = WorldSet.from_generators(2)
        d = WorldDistribution.product([pa, pb])
        assert abs(mutual_info_pair(d, *w.generators())) < 1e-12
        assert abs(balance_sum(d, *w.generators())) < 1e-12

    def test_balance_zero_cell(self):
        w = WorldSet.from_generators(2)
        with pytest.raises(UndefinedQuantityError):
            balance_sum(WorldDistribution([0.5, 0.5, 0, 0], 2), *w.generators())

    def test_entropy_uniform(self):
        assert entropy(WorldDistribution.uniform(8)) == pytest.approx(3.0)


class TestCondition:
    def test_condition(self):
        w = WorldSet.from_generators(2)
        d = condition(WorldDistribution.uniform(4, 2), w.generator(0))
        np.testing.assert_allclose(d.probs, [0, 0.5, 0, 0.5])

    def test_give_true_unchanged(self):
        d = WorldDistribution([0.1, 0.2, 0.3, 0.4], 2)
        assert condition(d, WorldSet.from_generators(2).true()).allclose(d)

    def test_null_without_extension(self):
        w = WorldSet.from_generators(1)
        a = w.generator(0)
        with pytest.raises(NullConditioningError):
            condition(WorldDistribution([1.0, 0.0], 1), a)

    def test_null_with_extension(self):
        w = WorldSet.from_generators(1)
        a = w.generator(0)
        d = WorldDistribution([1.0, 0.0], 1).with_extension(a, WorldDistribution([0.0, 1.0], 1))
        np.testing.assert_array_equal(condition(d, a).probs, [0.0, 1.0])

    def test_give_then_undo(self):
        w = WorldSet.from_generators(1)
        a = w.generator(0)
        u = WorldDistribution.uniform(2, 1)
        d = u.with_extension(~a, condition(u, ~a))
        # giving notA after A falls back on the carried kernel
        assert condition(condition(d, a), ~a).allclose(WorldDistribution([1.0, 0.0], 1))
