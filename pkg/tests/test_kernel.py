import math

import numpy as np
import pytest

from cs_crack.kernel import (
    InadmissibleRegimeError,
    KernelContext,
    alpha_beta,
    chi,
    f_kernel,
    f_zero_inertia,
    k_kernel,
    psi,
    tau23_numerator,
    tau23_numerator_zero_inertia,
)

GRID = np.concatenate([-np.geomspace(1e-3, 100, 60)[::-1], [0.0], np.geomspace(1e-3, 100, 60)])


@pytest.fixture(scope="module")
def ctx():
    return KernelContext.from_normalized(0.5, 0.0, 0.0)


@pytest.fixture(scope="module")
def ctx_inertia():
    return KernelContext.from_normalized(0.6, 0.9, -0.3)


class TestContext:
    def test_constants_zero_inertia(self, ctx):
        assert ctx.sigma == pytest.approx(1.0)
        assert ctx.c == pytest.approx(math.sqrt(1.5))
        assert ctx.upsilon == pytest.approx(1.5)
        # pole of k: 2 (1-m^2)^{1/4} / sqrt((1+eta)(3-eta))
        assert ctx.d == pytest.approx(2.0 * 0.75**0.25 / math.sqrt(3.0), rel=1e-14)
        assert ctx.b == pytest.approx(1.0 / (math.sqrt(2.0) * 0.5))

    def test_static_pole_location(self):
        ctx0 = KernelContext.from_normalized(0.0, 0.0, 0.0)
        assert ctx0.d == pytest.approx(1.154700538379251529, rel=1e-14)

    def test_pole_is_zero_of_psi(self, ctx_inertia):
        # algebraic consistency: Psi(+-i d) = 0
        val = ctx_inertia.psi.quad * (1j * ctx_inertia.d) ** 2 + ctx_inertia.psi.const
        assert abs(val) < 1e-12

    def test_rejects_supersonic(self):
        with pytest.raises(InadmissibleRegimeError):
            KernelContext.from_normalized(0.8, 1.0, 0.0)

    def test_rejects_negative_growth_coefficient(self):
        with pytest.raises(InadmissibleRegimeError, match="growth coefficient"):
            KernelContext.from_normalized(0.5, 1.0, -0.9)

    def test_branch_points_complex_beyond_crossover(self):
        c1 = KernelContext.from_normalized(0.4, 0.5, 0.0)
        assert abs(c1.b1.imag) < 1e-14 and abs(c1.b2.imag) < 1e-14
        c2 = KernelContext.from_normalized(0.4, 1.2, 0.0)
        assert abs(c2.b1.imag) > 0.0


class TestChi:
    def test_unity_at_origin(self, ctx):
        assert chi(0.0, ctx) == pytest.approx(1.0)

    def test_frozen_value(self, ctx):
        # sqrt(1.5) at h0=0, m=0.5, z=1 (40-digit evaluation)
        assert chi(1.0, ctx) == pytest.approx(1.2247448713915890491, rel=1e-15)

    def test_even(self, ctx_inertia):
        v = chi(GRID, ctx_inertia)
        assert np.allclose(v, v[::-1], rtol=1e-14)

    def test_positive_on_axis_all_regimes(self):
        for h0 in (0.0, 0.5, 1.0 / math.sqrt(2.0), 1.0, 2.0):
            m = 0.5 * (1.0 / (math.sqrt(2.0) * h0) if h0 > 1.0 / math.sqrt(2.0) else 1.0)
            c = KernelContext.from_normalized(m, h0, 0.0)
            assert np.all(chi(GRID, c) > 0.0)


class TestAlphaBeta:
    def test_origin(self, ctx):
        a, b = alpha_beta(0.0, ctx)
        assert a == pytest.approx(math.sqrt(2.0))
        assert b == 0.0

    def test_frozen_values(self, ctx):
        a, b = alpha_beta(1.0, ctx)
        assert a == pytest.approx(1.7957574645234219516, rel=1e-14)
        assert b == pytest.approx(0.88048573447183739758, rel=1e-14)

    def test_ordering_and_nonnegativity(self, ctx_inertia):
        a, b = alpha_beta(GRID, ctx_inertia)
        assert np.all(a >= b) and np.all(b >= 0)

    def test_product_identity_zero_inertia(self, ctx):
        # alpha*beta = |z| sqrt(z^2 + c^2) with c^2 = 2(1 - m^2)
        z = np.geomspace(1e-6, 1e3, 200)
        a, b = alpha_beta(z, ctx)
        expect = z * np.sqrt(z * z + 2.0 * (1.0 - 0.25))
        np.testing.assert_allclose(a * b, expect, rtol=1e-12)

    def test_beta_stable_against_naive_form(self, ctx_inertia):
        # moderate z: the direct subtraction is still accurate, so the
        # cancellation-free rewrite must agree with it
        z = np.linspace(0.5, 30.0, 57)
        _, b = alpha_beta(z, ctx_inertia)
        naive = np.sqrt(1.0 + (1.0 - ctx_inertia.q) * z * z - chi(z, ctx_inertia))
        np.testing.assert_allclose(b, naive, rtol=1e-9)


class TestFKernel:
    def test_zero_at_origin(self, ctx):
        assert f_kernel(0.0, ctx) == 0.0

    def test_frozen_value(self, ctx):
        assert f_kernel(1.0, ctx) == pytest.approx(3.2973667429214792853, rel=1e-13)

    def test_small_z_slope(self, ctx_inertia):
        z = 1e-9
        expect = 2.0 * math.sqrt(1.0 - 0.36)
        assert f_kernel(z, ctx_inertia) / z == pytest.approx(expect, rel=1e-7)

    def test_cubic_growth_coefficient(self, ctx_inertia):
        z = 1e9
        assert f_kernel(z, ctx_inertia) / z**3 == pytest.approx(ctx_inertia.upsilon, rel=1e-7)

    def test_even(self, ctx_inertia):
        v = f_kernel(GRID, ctx_inertia)
        assert np.allclose(v, v[::-1], rtol=1e-12)

    @pytest.mark.parametrize("m", [0.1, 0.5, 0.9])
    @pytest.mark.parametrize("eta", [-0.9, 0.0, 0.9])
    def test_general_form_reduces_to_zero_inertia(self, m, eta):
        ctx0 = KernelContext.from_normalized(m, 0.0, eta)
        z = np.linspace(-100.0, 100.0, 501)
        general = f_kernel(z, ctx0)
        reference = f_zero_inertia(z, m, eta)
        scale = np.maximum(np.abs(reference), 1.0)
        assert np.max(np.abs(general - reference) / scale) < 1e-10


class TestKKernel:
    def test_limits(self, ctx):
        assert k_kernel(0.0, ctx) == pytest.approx(1.0, abs=1e-15)
        assert k_kernel(1e-13, ctx) == pytest.approx(1.0, abs=1e-12)
        assert k_kernel(1e9, ctx) == pytest.approx(1.0, rel=1e-12)

    @pytest.mark.parametrize("m,h0,eta", [
        (0.5, 0.0, 0.0), (0.9, 0.0, 0.9), (0.6, 0.9, -0.3), (0.3, 1.5, 0.5),
    ])
    def test_positive_and_even(self, m, h0, eta):
        c = KernelContext.from_normalized(m, h0, eta)
        v = k_kernel(GRID, c)
        assert np.all(v > 0.0)
        assert np.allclose(v, v[::-1], rtol=1e-13)

    def test_quadratic_approach_at_infinity(self, ctx):
        # k - 1 = O(z^-2): the z^-1 coefficient cancels identically
        v1 = (k_kernel(1e3, ctx) - 1.0) * 1e6
        v2 = (k_kernel(1e4, ctx) - 1.0) * 1e8
        assert v1 == pytest.approx(v2, rel=1e-3)


class TestSkewNumerator:
    @pytest.mark.parametrize("m", [0.1, 0.5, 0.9])
    @pytest.mark.parametrize("eta", [-0.9, 0.0, 0.9])
    def test_general_matches_zero_inertia_form(self, m, eta):
        ctx0 = KernelContext.from_normalized(m, 0.0, eta)
        z = np.linspace(-100.0, 100.0, 501)
        general = tau23_numerator(z, ctx0)
        reference = tau23_numerator_zero_inertia(z, m, eta)
        scale = np.maximum(np.abs(reference), 1.0)
        assert np.max(np.abs(general - reference) / scale) < 1e-10

    def test_cubic_growth(self, ctx_inertia):
        # leading coefficient (sigma^2 + eta): numerator/(alpha+beta) ~ that * |z|^3
        z = 1e8
        expect = ctx_inertia.sigma**2 + ctx_inertia.eta
        assert tau23_numerator(z, ctx_inertia) / z**3 == pytest.approx(expect, rel=1e-6)


def test_psi_evaluator(ctx):
    assert psi(0.0, ctx) == pytest.approx(2.0 * math.sqrt(0.75))
    assert psi(2.0, ctx) == pytest.approx(1.5 * 4.0 + 2.0 * math.sqrt(0.75))
