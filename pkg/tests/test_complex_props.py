import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from questions import complex_props as cp
from questions.errors import ParityError, QuestionsError
from questions.kernels import W2

finite = st.floats(-3.0, 3.0)


def residual(f, z):
    return abs(f(-z.conjugate()) + f(z).conjugate())


class TestConstraint:
    def test_cube_passes(self):
        assert cp.check_constraint(lambda z: z ** 3).passed

    def test_square_fails(self):
        r = cp.check_constraint(lambda z: z ** 2)
        assert not r.passed and r.max_residual > 1.0

    def test_identity_and_i_times_even(self):
        assert cp.check_constraint(lambda z: z).passed
        assert cp.check_constraint(lambda z: 1j * z ** 2).passed

    def test_odd_real_series(self):
        assert cp.check_constraint(np.sin).passed
        assert not cp.check_constraint(np.cos).passed

    def test_sample_count(self):
        with pytest.raises(ValueError):
            cp.check_constraint(lambda z: z, samples=10)

    def test_domains(self):
        assert np.all(cp.sample_domain("upper", 200).imag > 0)
        assert np.all(cp.sample_domain("lower", 200).imag < 0)
        with pytest.raises(ValueError):
            cp.sample_domain("disk", 200)


class TestRoots:
    def test_cbrt_prefactor_is_w2(self):
        assert abs(cp.question_cbrt(1j) - W2 * cmath.exp(1j * math.pi / 6)) < 1e-15

    def test_cbrt_inverts_cube(self):
        for z in [0.3 + 0.4j, -1.2 + 0.1j, 0.5 - 2j]:
            assert abs(cp.question_cbrt(z) ** 3 - z) < 1e-12

    def test_cbrt_real_axis(self):
        assert cp.question_cbrt(-8.0) == pytest.approx(-2.0)
        assert cp.question_cbrt(0.0) == 0.0

    @given(finite, finite)
    def test_cbrt_constraint(self, re, im):
        z = complex(re, im)
        assert residual(cp.question_cbrt, z) < 1e-9

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7])
    def test_fractional_root_constraint(self, n):
        assert cp.check_constraint(cp.fractional_root(n), samples=2000).passed

    @pytest.mark.parametrize("n", [1, 3, 5, 7])
    def test_odd_orders_are_roots(self, n):
        f = cp.fractional_root(n)
        assert f.is_true_root
        for z in [0.7 + 0.2j, -0.4 - 1.1j, -2.0]:
            assert abs(f(z) ** n - z) < 1e-12

    @pytest.mark.parametrize("n", [2, 4, 6])
    def test_even_orders_are_rotated_roots(self, n):
        f = cp.fractional_root(n)
        assert not f.is_true_root
        z = 0.7 + 0.2j
        assert abs(abs(f(z) ** n) - abs(z)) < 1e-12
        assert abs(f(z) ** n / z - cp.root_prefactor(n) ** n) < 1e-12

    def test_prefactor_square(self):
        for n in range(1, 9):
            c = cp.root_prefactor(n)
            assert abs(c * c + np.exp(-1j * math.pi / n)) < 1e-15

    def test_principal_cbrt_fails(self):
        assert not cp.check_constraint(cp.principal_cbrt, "upper").passed

    def test_bad_order(self):
        with pytest.raises(ValueError):
            cp.fractional_root(0)


class TestFamily:
    @pytest.mark.parametrize("n,m", [(n, m) for n in range(6) for m in range(6 - n)])
    def test_parity_rule(self, n, m):
        needs_i = (n + m) % 2 == 0
        good = cp.family_member(n, m, needs_i)
        assert cp.check_constraint(good, samples=500).passed
        bad = cp.family_member(n, m, not needs_i, strict=False)
        assert not bad.valid
        if n + m > 0:
            assert not cp.check_constraint(bad, samples=500).passed

    def test_strict_rejects(self):
        with pytest.raises(ParityError):
            cp.family_member(2, 0, False)

    def test_str(self):
        assert str(cp.family_member(1, 1, True)) == "i*z^1*conj(z)^1"


class TestWholeProperties:
    def test_askable_law(self):
        f = cp.PropertyFunction.askable_gap()
        assert f.theta == pytest.approx(math.pi)
        assert f.check()

    def test_pure_law(self):
        f = cp.PropertyFunction.pure_gap()
        assert f.theta == pytest.approx(0.0)
        assert f.check()

    @given(st.floats(0.0, 2 * math.pi))
    def test_whole_phase(self, phi):
        g = cp.PropertyFunction.from_askable(cp.PropertyFunction.askable_gap(), phi)
        assert g.law_residual() < 1e-12
        assert g.values(0.3).is_whole

    def test_from_askable_requires_askable(self):
        with pytest.raises(QuestionsError):
            cp.PropertyFunction.from_askable(cp.PropertyFunction.pure_gap(), 0.1)

    def test_alignment(self):
        base = cp.PropertyFunction.askable_gap()
        g1 = cp.PropertyFunction.from_askable(base, 0.4)
        g2 = cp.PropertyFunction.from_askable(base.transformed(lambda z: z ** 3), 1.3)
        for phi in cp.whole_phase_align(g1, g2):
            assert cp.aligned_sum(g1, g2, phi).law_residual() < 1e-12
        assert cp.aligned_sum(g1, g2, 0.0).law_residual() > 1e-3

    def test_transformed_keeps_law(self):
        f = cp.PropertyFunction.askable_gap().transformed(cp.question_cbrt)
        assert f.check()


class TestSpinors:
    def test_product_closed(self):
        u = cp.SpinorValue(1 + 1j, math.sqrt(2) + 0j)
        v = cp.SpinorValue(0.5j, -0.5 + 0j)
        assert cp.spinor_product(u, v).is_whole

    def test_sum_not_closed(self):
        u = cp.SpinorValue(1 + 0j, 1j)
        v = cp.SpinorValue(1 + 0j, -1 + 0j)
        assert not cp.spinor_sum(u, v).is_whole

    def test_require_whole(self):
        with pytest.raises(QuestionsError):
            cp.spinor_product(cp.SpinorValue(1 + 0j, 2 + 0j), cp.SpinorValue(1 + 0j, 1 + 0j))


class TestTildeV:
    def test_negation_law(self):
        assert cp.tilde_v_negation_residual(101) < 1e-9
