"""Special functions, quadrature and random streams."""

import math

import numpy as np
import pytest
from scipy import special
from scipy.integrate import quad

from dafsim.core.errors import ArgumentError, NumericError
from dafsim.modules.mathkernel import (
    bessel_j0,
    bessel_k0,
    exp_e1_scaled,
    expint_e1,
    gauss_legendre_rule,
    integrate,
    sample_complex_gaussian,
    stream,
)

SEED = 20240611


class TestBesselJ0:
    def test_origin(self) -> None:
        assert bessel_j0(0.0) == 1.0

    def test_reference_values(self) -> None:
        assert bessel_j0(1.0) == pytest.approx(0.7651976865579666, abs=1e-12)
        assert bessel_j0(2 * math.pi * 0.005) == pytest.approx(0.9997532751, abs=1e-10)

    def test_matches_scipy_on_grid(self) -> None:
        x = np.linspace(-50.0, 50.0, 2001)
        np.testing.assert_allclose(bessel_j0(x), special.j0(x), rtol=0, atol=1e-12)

    def test_even_function(self) -> None:
        assert bessel_j0(-3.7) == bessel_j0(3.7)

    def test_array_shape_preserved(self) -> None:
        out = bessel_j0(np.ones((3, 4)))
        assert out.shape == (3, 4)

    @pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
    def test_non_finite_rejected(self, bad: float) -> None:
        with pytest.raises(ArgumentError):
            bessel_j0(bad)


class TestBesselK0:
    def test_reference_values(self) -> None:
        assert bessel_k0(1.0) == pytest.approx(0.42102443824070834, rel=1e-10)
        assert bessel_k0(10.0) == pytest.approx(1.778006231616918e-05, rel=1e-10)

    def test_matches_scipy_on_grid(self) -> None:
        x = np.geomspace(1e-8, 50.0, 400)
        np.testing.assert_allclose(bessel_k0(x), special.k0(x), rtol=1e-10)

    def test_integral_representation(self) -> None:
        for x in (0.3, 2.0, 2.5, 7.0):
            # the integrand is below 1e-300 beyond t = 20 for every x used here
            oracle, _ = quad(lambda t: math.exp(-x * math.cosh(t)), 0.0, 20.0, epsabs=0, epsrel=1e-13, limit=200)
            assert bessel_k0(x) == pytest.approx(oracle, rel=1e-10)

    def test_logarithmic_growth_near_origin(self) -> None:
        assert bessel_k0(1e-9) > 20.0

    @pytest.mark.parametrize("bad", [0.0, -1.0])
    def test_non_positive_rejected(self, bad: float) -> None:
        with pytest.raises(ArgumentError):
            bessel_k0(bad)


class TestExponentialIntegral:
    def test_reference_values(self) -> None:
        assert expint_e1(1.0) == pytest.approx(0.21938393439552062, rel=1e-10)
        assert expint_e1(10.0) == pytest.approx(4.156968929685324e-06, rel=1e-10)

    def test_matches_scipy_on_grid(self) -> None:
        x = np.geomspace(1e-6, 50.0, 400)
        np.testing.assert_allclose(expint_e1(x), special.exp1(x), rtol=1e-10)

    def test_defining_integral(self) -> None:
        for x in (0.05, 1.5, 4.0):
            oracle, _ = quad(lambda t: math.exp(-t) / t, x, math.inf, epsabs=0, epsrel=1e-13)
            assert expint_e1(x) == pytest.approx(oracle, rel=1e-10)

    def test_scaled_matches_product(self) -> None:
        x = np.geomspace(1e-4, 40.0, 200)
        np.testing.assert_allclose(exp_e1_scaled(x), np.exp(x) * special.exp1(x), rtol=1e-10)

    def test_scaled_asymptotics(self) -> None:
        assert 100.0 * exp_e1_scaled(100.0) == pytest.approx(1.0, rel=0.02)
        x = 1e4
        assert x * exp_e1_scaled(x) == pytest.approx(1.0 - 1.0 / x + 2.0 / x**2, rel=1e-9)

    def test_scaled_is_finite_where_exp_overflows(self) -> None:
        assert math.isfinite(exp_e1_scaled(1000.0))

    @pytest.mark.parametrize("fn", [expint_e1, exp_e1_scaled])
    def test_non_positive_rejected(self, fn) -> None:
        with pytest.raises(ArgumentError):
            fn(0.0)


class TestGaussLegendre:
    def test_weights_sum_to_interval(self) -> None:
        for n in (2, 16, 64, 128):
            rule = gauss_legendre_rule(n)
            assert rule.weights.sum() == pytest.approx(math.pi / 2, rel=1e-12)

    def test_nodes_inside_open_interval(self) -> None:
        rule = gauss_legendre_rule(64)
        assert np.all(np.diff(rule.nodes) > 0)
        assert rule.nodes[0] > 0 and rule.nodes[-1] < math.pi / 2

    def test_constant_and_sin_squared(self) -> None:
        rule = gauss_legendre_rule(16)
        assert integrate(np.ones_like, rule) == pytest.approx(math.pi / 2, abs=1e-14)
        assert integrate(lambda t: np.sin(t) ** 2, rule) == pytest.approx(math.pi / 4, abs=1e-12)

    def test_polynomial_exactness(self) -> None:
        rule = gauss_legendre_rule(4)
        exact = (math.pi / 2) ** 8 / 8
        assert integrate(lambda t: t**7, rule) == pytest.approx(exact, rel=1e-13)

    def test_batched_integrand(self) -> None:
        rule = gauss_legendre_rule(32)
        out = integrate(lambda t: np.stack([np.ones_like(t), 2 * np.ones_like(t)]), rule)
        np.testing.assert_allclose(out, [math.pi / 2, math.pi], rtol=1e-13)

    def test_rule_is_read_only_and_cached(self) -> None:
        rule = gauss_legendre_rule(8)
        assert gauss_legendre_rule(8) is rule
        with pytest.raises(ValueError):
            rule.nodes[0] = 0.0

    def test_too_few_nodes(self) -> None:
        with pytest.raises(ArgumentError):
            gauss_legendre_rule(1)

    def test_non_finite_integrand(self) -> None:
        rule = gauss_legendre_rule(8)
        with pytest.raises(NumericError) as exc:
            integrate(lambda t: np.where(t > 1.0, np.inf, 1.0), rule)
        assert exc.value.diagnostics["node_count"] == 8


class TestRandomStreams:
    def test_same_key_same_numbers(self) -> None:
        a = sample_complex_gaussian(stream(SEED, 3, 1), 1.0, 100)
        b = sample_complex_gaussian(stream(SEED, 3, 1), 1.0, 100)
        np.testing.assert_array_equal(a, b)

    def test_different_keys_differ(self) -> None:
        a = sample_complex_gaussian(stream(SEED, 0), 1.0, 10)
        b = sample_complex_gaussian(stream(SEED, 1), 1.0, 10)
        assert not np.allclose(a, b)

    def test_zero_variance(self) -> None:
        rng = stream(SEED)
        assert sample_complex_gaussian(rng, 0.0) == 0j
        assert not np.any(sample_complex_gaussian(rng, 0.0, 50))

    def test_moments(self) -> None:
        x = sample_complex_gaussian(stream(SEED), 1.0, 1_000_000)
        assert abs(x.mean()) < 0.005
        assert np.mean(np.abs(x) ** 2) == pytest.approx(1.0, rel=0.01)
        assert np.var(x.real) == pytest.approx(0.5, rel=0.01)
        assert np.var(x.imag) == pytest.approx(0.5, rel=0.01)

    def test_negative_variance(self) -> None:
        with pytest.raises(ArgumentError):
            sample_complex_gaussian(stream(SEED), -1.0)
