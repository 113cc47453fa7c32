import numpy as np
import pytest
from hypothesis import given, strategies as st

from questions.errors import EnumerationTooLargeError, RankMismatchError
from questions.question_groups import (
    AnfForm, Answer, AskableQuestion, PureQuestion, Subject, anf, answer, circ_subject,
    conjunction, group_census, quotient_subject, rank, star_askable, star_pure,
    subject_predicate_answer, subject_question,
)
from questions.worlds import Proposition, WorldSet

W3 = WorldSet.from_generators(3)
A, B, C = W3.generators()
tables3 = st.integers(0, 255).map(lambda t: Proposition([(t >> w) & 1 for w in range(8)], 3))


class TestPureQuestion:
    def test_negation_symmetric(self):
        assert PureQuestion(A) == PureQuestion(~A)

    def test_canonical_false_at_world_zero(self):
        assert not PureQuestion(~A).canon.truth[0]

    def test_identity(self):
        i = PureQuestion.identity(W3)
        assert i.is_identity()
        assert PureQuestion(W3.true()) == i
        assert star_pure(PureQuestion(A), i) == PureQuestion(A)

    def test_self_inverse(self):
        assert star_pure(PureQuestion(A), PureQuestion(A)).is_identity()

    @given(tables3, tables3, tables3)
    def test_associative_commutative(self, x, y, z):
        p, q, r = PureQuestion(x), PureQuestion(y), PureQuestion(z)
        assert (p * q) * r == p * (q * r)
        assert p * q == q * p


class TestAskableQuestion:
    def test_star_is_xnor(self):
        q = star_askable(AskableQuestion(A), AskableQuestion(B))
        assert q.asked == A.xnor(B)

    def test_negate_flips_sign(self):
        q = AskableQuestion(A)
        assert q.sign == -q.negate().sign

    def test_pure_forgets_order(self):
        assert AskableQuestion(A).pure() == AskableQuestion(~A).pure()

    def test_answer(self):
        q = AskableQuestion(A)
        assert answer(q, Answer.YES) == A
        assert answer(q, False) == ~A

    @given(tables3, tables3, tables3)
    def test_star_associative(self, x, y, z):
        p, q, r = AskableQuestion(x), AskableQuestion(y), AskableQuestion(z)
        assert (p * q) * r == p * (q * r)


class TestAnf:
    def test_or(self):
        f = anf(A | B)
        assert f.monomials == frozenset({0b001, 0b010, 0b011})
        assert not f.constant

    def test_not(self):
        f = anf(~A)
        assert f.monomials == frozenset({1})
        assert f.constant

    def test_conjunction(self):
        assert anf(conjunction(W3, 0b101)).monomials == frozenset({0b101})

    @given(tables3)
    def test_roundtrip(self, p):
        assert anf(p).to_proposition() == p

    @given(tables3)
    def test_xnor_dual_same_table(self, p):
        f = anf(p)
        g = f.to_xnor()
        assert g.to_proposition() == p
        assert g.to_xor() == f
        # the constant flips exactly when the monomial count is odd
        assert g.constant == (f.constant ^ (len(f.monomials) % 2 == 1))

    def test_evaluate(self):
        f = anf(A & ~B)
        assert [f.evaluate(w) for w in range(8)] == list((A & ~B).truth)

    def test_str(self):
        assert str(AnfForm(frozenset({1, 3}), True, 2)) == "True xor A xor AB"


class TestRankSubjects:
    def test_rank(self):
        assert rank(PureQuestion(A)) == 1
        assert rank(PureQuestion(A & B)) == 2
        assert rank(PureQuestion(A & B & C)) == 3
        assert rank(star_pure(PureQuestion(A), PureQuestion(B))) == 1
        assert rank(PureQuestion.identity(W3)) == 0

    def test_quotient(self):
        s = quotient_subject(PureQuestion(A & B), 2)
        assert s == frozenset({Subject.of([0, 1], 3)})

    def test_quotient_rank_mismatch(self):
        with pytest.raises(RankMismatchError):
            quotient_subject(PureQuestion(A), 2)

    def test_circ(self):
        ab = Subject.of([0, 1], 3)
        bc = Subject.of([1, 2], 3)
        assert circ_subject(ab, bc) == Subject.of([0, 2], 3)
        assert circ_subject(ab, ab).is_identity()

    def test_subject_question(self):
        q = subject_question(W3, Subject.of([0, 1], 3))
        assert q == star_pure(PureQuestion(A), PureQuestion(B))

    @given(tables3)
    def test_subject_predicate_answer_recombines(self, p):
        assert subject_predicate_answer(p).recombine() == p


class TestCensus:
    @pytest.mark.parametrize("n,q,q1,gens", [(1, 2, 2, 1), (2, 8, 4, 3), (3, 128, 8, 7)])
    def test_sizes(self, n, q, q1, gens):
        c = group_census(n)
        assert (c.q_size, c.q1_size, c.generator_count) == (q, q1, gens)
        assert c.matches_formulas()
        assert c.closure and c.associativity and c.involution and c.identity
        assert c.complete and c.generators_independent

    def test_subject_sizes(self):
        assert group_census(3).subject_sizes == {1: 8, 2: 8, 3: 2}
        assert group_census(4).subject_sizes == {1: 16, 2: 64, 3: 16, 4: 2}

    def test_askable_group(self):
        assert [group_census(n).k_size for n in (2, 3)] == [16, 256]

    def test_n4_sampled(self):
        c = group_census(4, seed=3, samples=20_000)
        assert c.q_size == 32768 and not c.exhaustive and c.closure

    def test_too_large(self):
        with pytest.raises(EnumerationTooLargeError):
            group_census(5)
