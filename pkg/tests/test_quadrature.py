"""Quadrature oracle: exact integrals, weights, and convergence behavior."""

import math

import numpy as np
import pytest

from fraclap.quadrature import (
    Integrand,
    QuadratureError,
    gauss_chebyshev2,
    integrate,
    integrate_theta,
)


class TestIntegrateTheta:
    def test_sine(self):
        val = integrate_theta(np.sin)
        assert val == pytest.approx(2.0, abs=1e-13)

    def test_constant(self):
        val = integrate_theta(lambda t: np.ones_like(t))
        assert val == pytest.approx(math.pi, abs=1e-13)

    def test_sin_squared(self):
        val = integrate_theta(lambda t: np.sin(t) ** 2)
        assert val == pytest.approx(math.pi / 2.0, abs=1e-13)

    def test_endpoint_singularity(self):
        # int_0^pi theta^(-1/2) dtheta = 2 sqrt(pi)
        val = integrate_theta(lambda t: t**-0.5)
        assert val == pytest.approx(2.0 * math.sqrt(math.pi), abs=1e-12)

    def test_complex_integrand(self):
        val = integrate_theta(lambda t: np.exp(1j * t))
        assert val.real == pytest.approx(0.0, abs=1e-13)
        assert val.imag == pytest.approx(2.0, abs=1e-13)

    def test_relative_tolerance_mode(self):
        # large-magnitude integrand converges under a relative criterion
        scale = 1e20
        val = integrate_theta(lambda t: scale * np.sin(t), tol=1e-12, rel=1e-11)
        assert val == pytest.approx(2.0 * scale, rel=1e-9)


class TestSemicircleWeight:
    def test_total_mass(self):
        ig = Integrand(f=lambda x: np.ones_like(x))
        assert integrate(ig) == pytest.approx(math.pi / 2.0, abs=1e-13)

    def test_second_moment(self):
        ig = Integrand(f=lambda x: x**2)
        assert integrate(ig) == pytest.approx(math.pi / 8.0, abs=1e-13)

    def test_chebyshev_orthonormality(self):
        from fraclap.special import chebyshev_u

        for m in range(6):
            for n in range(m, 6):
                ig = Integrand(f=lambda x, m=m, n=n: chebyshev_u(m, x) * chebyshev_u(n, x))
                val = integrate(ig)
                expected = math.pi / 2.0 if m == n else 0.0
                assert val == pytest.approx(expected, abs=1e-12)

    def test_plain_weight(self):
        ig = Integrand(f=lambda x: np.ones_like(x), weight="plain")
        assert integrate(ig) == pytest.approx(2.0, abs=1e-13)

    def test_algebraic_singularity(self):
        # int_{-1}^{1} (1-x)^(-1/2) sqrt(1-x^2) dx = 4 sqrt(2) / 3
        # (substitute x = cos(theta); the integrand becomes (4/sqrt 2) sin(t/2) cos^2(t/2))
        ig = Integrand(f=lambda x: (1.0 - x) ** -0.5, singularity_exponent=-0.5)
        val = integrate(ig)
        assert val == pytest.approx(4.0 * math.sqrt(2.0) / 3.0, abs=1e-12)

    def test_rejects_nonintegrable(self):
        with pytest.raises(ValueError):
            Integrand(f=lambda x: x, singularity_exponent=-1.6)

    def test_rejects_unknown_weight(self):
        with pytest.raises(ValueError):
            Integrand(f=lambda x: x, weight="legendre")

    def test_nonconvergence_raises(self):
        # a discontinuous oscillator at absurd tolerance cannot converge
        rng = np.random.default_rng(3)
        noise = rng.standard_normal(1_000_000)

        def f(theta):
            idx = (np.abs(theta) * 1e6).astype(int) % len(noise)
            return noise[idx]

        with pytest.raises(QuadratureError):
            integrate_theta(f, tol=1e-15)


class TestGaussRule:
    def test_polynomial_exactness(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            deg = int(rng.integers(0, 21))
            coeffs = rng.uniform(-2.0, 2.0, deg + 1)

            def f(x, coeffs=coeffs):
                return np.polyval(coeffs, x)

            exact = integrate(Integrand(f=f), tol=1e-13)
            gauss = gauss_chebyshev2(f, nodes=12)
            assert gauss == pytest.approx(exact, rel=1e-11, abs=1e-11)

    def test_node_count_validation(self):
        with pytest.raises(ValueError):
            gauss_chebyshev2(lambda x: x, nodes=0)
