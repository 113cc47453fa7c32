import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from questions.errors import UndefinedQuantityError
from questions.measures import (
    DoubtValue, cells, doubt, doubt_from_gap, evidence, evidence_update, evidence_weight,
    gap_askable, gap_from_gmp, gap_pure, gmp, info_value, pure_doubt,
)
from questions.question_groups import AskableQuestion, PureQuestion, star_askable, star_pure
from questions.worlds import WorldDistribution, WorldSet, prob

W1 = WorldSet.from_generators(1)
A1 = AskableQuestion(W1.generator(0))
W2 = WorldSet.from_generators(2)
A2, B2 = (AskableQuestion(g) for g in W2.generators())
unit = st.floats(0.0, 1.0, allow_subnormal=False)


def bern(p):
    return WorldDistribution([1.0 - p, p], 1)


class TestGaps:
    @pytest.mark.parametrize("p,g", [(0.75, 0.5), (0.0, -1.0), (0.5, 0.0)])
    def test_askable(self, p, g):
        assert gap_askable(bern(p), A1) == pytest.approx(g, abs=1e-15)

    def test_pure(self):
        assert gap_pure(bern(0.2), A1.pure()) == pytest.approx(0.6)
        assert gap_pure(bern(0.2), PureQuestion.identity(W1)) == 1.0

    def test_negation(self):
        d = bern(0.3)
        assert gap_askable(d, A1.negate()) == pytest.approx(-gap_askable(d, A1), abs=1e-15)

    def test_pure_example(self):
        d = WorldDistribution.product([0.75, 0.6])
        assert gap_pure(d, star_pure(A2.pure(), B2.pure())) == pytest.approx(0.1, abs=1e-15)

    @given(unit, unit)
    def test_multiplicative_signed(self, pa, pb):
        d = WorldDistribution.product([pa, pb])
        lhs = gap_askable(d, star_askable(A2, B2))
        assert lhs == pytest.approx(gap_askable(d, A2) * gap_askable(d, B2), abs=1e-12)

    @given(st.lists(st.floats(0.0, 1.0, allow_subnormal=False), min_size=4, max_size=4).filter(lambda v: sum(v) > 0.1))
    def test_converse(self, w):
        d = WorldDistribution(np.array(w) / sum(w), 2)
        a, b = W2.generators()
        excess = gap_askable(d, star_askable(A2, B2)) - gap_askable(d, A2) * gap_askable(d, B2)
        cov = prob(d, a & b) - prob(d, a) * prob(d, b)
        # the excess is exactly four times the covariance, so one vanishes iff the other does
        assert excess == pytest.approx(4.0 * cov, abs=1e-12)


class TestGmp:
    def test_examples(self):
        assert gmp(bern(0.5), [A1.pure()]) == pytest.approx(0.5)
        assert gmp(bern(1.0), [A1.pure()]) == 0.0
        d = WorldDistribution.uniform(4, 2)
        assert gmp(d, [A2.pure(), B2.pure()]) == pytest.approx(0.25)

    def test_cells_order(self):
        d = WorldDistribution([0.1, 0.2, 0.3, 0.4], 2)
        np.testing.assert_allclose(cells(d, list(W2.generators())), [0.4, 0.3, 0.2, 0.1])

    @given(unit, unit)
    def test_factorizes(self, pa, pb):
        d = WorldDistribution.product([pa, pb])
        g = gmp(d, [A2.pure(), B2.pure()])
        assert g == pytest.approx(gmp(d, [A2.pure()]) * gmp(d, [B2.pure()]), abs=1e-12)

    @given(unit)
    def test_gap_identity(self, p):
        d = bern(p)
        # squared form: sqrt(1 - gap^2) cancels badly when the gap is near 1
        g = gap_pure(d, A1.pure())
        assert gmp(d, [A1.pure()]) ** 2 == pytest.approx((1 - g) * (1 + g) / 4, abs=1e-12)

    @pytest.mark.parametrize("g,gap", [(0.5, 0.0), (0.0, 1.0), (0.4, 0.6)])
    def test_gap_from_gmp(self, g, gap):
        assert gap_from_gmp(g) == pytest.approx(gap, abs=1e-12)

    def test_gap_from_gmp_range(self):
        with pytest.raises(ValueError):
            gap_from_gmp(0.6)

    def test_info_value(self):
        assert info_value(bern(0.5), [A1.pure()]) == pytest.approx(1.0)
        assert info_value(bern(0.0), [A1.pure()]) == math.inf
        # gmp 1/2 and gmp 1/4 from independent pieces: 1 + 2 = 3 bits
        pb = 0.5 * (1 - math.sqrt(1 - 4 * 0.25 ** 2))
        d = WorldDistribution.product([0.5, pb])
        assert info_value(d, [A2.pure(), B2.pure()]) == pytest.approx(3.0, abs=1e-12)


class TestEvidence:
    @pytest.mark.parametrize("p,e", [(0.2, 2.0), (0.5, 0.0), (1.0, -math.inf), (0.0, math.inf)])
    def test_values(self, p, e):
        assert evidence(bern(p), A1) == pytest.approx(e)

    def test_likelihood_ratio_four(self):
        d = WorldDistribution([0.4, 0.1, 0.1, 0.4], 2)
        assert evidence_weight(d, A2, W2.generator(1)) == pytest.approx(2.0)

    def test_independent_evidence_no_change(self):
        d = WorldDistribution.product([0.3, 0.6])
        assert evidence_update(d, A2, W2.generator(1)) == pytest.approx(evidence(d, A2))

    def test_conditionally_independent_add(self):
        # A with P = 1/2; B and C independent given A, each with likelihood ratio 2
        w = WorldSet.from_generators(3)
        p = np.zeros(8)
        for world in range(8):
            a, b, c = world & 1, world >> 1 & 1, world >> 2 & 1
            lb = (2 / 3 if b else 1 / 3) if a else (1 / 3 if b else 2 / 3)
            lc = (2 / 3 if c else 1 / 3) if a else (1 / 3 if c else 2 / 3)
            p[world] = 0.5 * lb * lc
        d = WorldDistribution(p, 3)
        q = AskableQuestion(w.generator(0))
        shift = evidence(d, q) - evidence_update(d, q, w.generator(1) & w.generator(2))
        assert shift == pytest.approx(2.0, abs=1e-12)

    def test_zero_likelihood(self):
        d = WorldDistribution([0.5, 0.0, 0.0, 0.5], 2)
        with pytest.raises(UndefinedQuantityError):
            evidence_weight(d, A2, ~W2.generator(1))


class TestDoubt:
    @pytest.mark.parametrize("g,z", [(1.0, 0j), (-1.0, complex(0, math.pi)),
                                     (-0.5, complex(math.log(2), math.pi))])
    def test_values(self, g, z):
        assert abs(doubt_from_gap(g).as_complex() - z) < 1e-12

    def test_zero_gap(self):
        assert doubt_from_gap(0.0).real_part == math.inf

    @given(unit, unit)
    def test_additive(self, pa, pb):
        d = WorldDistribution.product([pa, pb])
        ga, gb = gap_askable(d, A2), gap_askable(d, B2)
        if abs(ga * gb) < 1e-6:
            return
        total = doubt(d, A2) + doubt(d, B2)
        star = doubt(d, star_askable(A2, B2))
        assert star.real_part == pytest.approx(total.real_part, abs=1e-9)
        assert star.imag_part == pytest.approx(total.imag_part, abs=1e-12)

    def test_gap_recovered(self):
        assert DoubtValue(math.log(2), math.pi).gap() == pytest.approx(-0.5)

    def test_pure_doubt(self):
        assert pure_doubt(bern(0.75), A1.pure()) == pytest.approx(math.log(2))
