"""Green kernels, uniform bounds, weight sequence, and admissibility."""

import math

import numpy as np
import pytest

from fraclap import operators
from fraclap.green import (
    Potential,
    admissibility_threshold,
    bs_hs_bound,
    g_weight,
    g_weight_bound,
    g_weight_values,
    green_entry,
    power_hardy_weight,
    reflected_bound_const,
    rough_bound_const,
    theorem2_check,
    uniform_bound_refined,
    uniform_bound_rough,
    weighted_sq_integral,
    weighted_sq_integral_quad,
)


class TestWeightSequence:
    def test_first_power_values(self):
        for n in (1, 2, 5, 40):
            assert g_weight(1.0, n) == pytest.approx(2.0 * math.pi * n, rel=1e-15)

    def test_half_power_values(self):
        # odd harmonic sums: n=1 -> (4/pi)(1 + 1/3)
        assert g_weight(0.5, 1) == pytest.approx(16.0 / (3.0 * math.pi), rel=1e-14)
        expected = 4.0 / math.pi * (1.0 + 1.0 / 3.0 + 1.0 / 5.0 + 1.0 / 7.0)
        assert g_weight(0.5, 2) == pytest.approx(expected, rel=1e-14)

    def test_quarter_power_value(self):
        # hand evaluation of the factorial-ratio formula
        assert g_weight(0.25, 1) == pytest.approx(16.0 / 21.0, rel=1e-13)

    def test_removable_window_continuity(self):
        # generic formula just outside the window ~ limit formula inside
        for target in (0.5, 1.0):
            inside = g_weight(target + 1e-7, 3)
            outside = g_weight(target + 1e-5, 3)
            exact = g_weight(target, 3)
            assert inside == pytest.approx(exact, rel=1e-5)
            assert outside == pytest.approx(exact, rel=1e-3)
            # and the window evaluation is much closer than the window width
            assert abs(inside - exact) < abs(outside - exact)

    def test_vectorized_matches_scalar(self):
        for alpha in (0.25, 0.5, 0.8, 1.0, 1.3):
            vec = g_weight_values(alpha, 50)
            for n in (1, 7, 50):
                assert vec[n - 1] == pytest.approx(g_weight(alpha, n), rel=1e-12)

    def test_positive(self):
        for alpha in (0.1, 0.5, 0.9, 1.0, 1.1, 1.45):
            assert g_weight(alpha, 1) > 0.0
            assert g_weight(alpha, 100) > 0.0

    def test_domain(self):
        with pytest.raises(ValueError):
            g_weight(1.5, 1)
        with pytest.raises(ValueError):
            g_weight(0.0, 1)
        with pytest.raises(ValueError):
            g_weight(1.0, 0)

    def test_upper_bound_dominates(self):
        for alpha in (0.25, 0.5, 0.75, 1.0, 1.25, 1.4):
            vals = g_weight_values(alpha, 10_000)
            bounds = np.array([g_weight_bound(alpha, n) for n in range(1, 10_001)])
            assert np.all(vals <= bounds * (1.0 + 1e-12))

    def test_bound_limit_value(self):
        # the growth coefficient at the first power is 4*pi
        assert g_weight_bound(1.0, 7) == pytest.approx(4.0 * math.pi * 7.0, rel=1e-14)
        assert g_weight_bound(0.25, 123) == pytest.approx(1.0, rel=1e-14)

    def test_growth_regimes(self):
        # bounded for a < 1/2; ~ (2/pi) ln n at 1/2; ~ n^(2a-1) above
        lo = [g_weight(0.25, n) for n in (100, 1000, 10_000)]
        assert max(lo) <= 1.0  # tan(pi/4)
        assert lo[2] - lo[1] < lo[1] - lo[0]

        mid = [g_weight(0.5, n) - 2.0 / math.pi * math.log(n) for n in (100, 1000, 10_000)]
        assert abs(mid[2] - mid[1]) < abs(mid[1] - mid[0])
        assert abs(mid[2] - mid[1]) < 1e-3

        hi = [g_weight(1.25, n) / n**1.5 for n in (100, 1000, 10_000)]
        assert abs(hi[2] - hi[1]) < abs(hi[1] - hi[0])
        assert abs(hi[2] - hi[1]) < 1e-3


class TestWeightedMoment:
    def test_first_power(self):
        for n in (1, 3, 10):
            assert weighted_sq_integral(1.0, n) == pytest.approx(math.pi * n, rel=1e-14)

    def test_half_power(self):
        assert weighted_sq_integral(0.5, 1) == pytest.approx(math.sqrt(2.0) * 4.0 / 3.0, rel=1e-13)

    def test_against_quadrature(self):
        for alpha in (0.25, 0.75, 1.25, 1.4):
            for n in (1, 4, 12):
                closed = weighted_sq_integral(alpha, n)
                quad = weighted_sq_integral_quad(alpha, n)
                assert closed == pytest.approx(quad, abs=1e-10, rel=1e-10)

    def test_removable_windows_against_quadrature(self):
        for alpha in (0.5 - 1e-7, 0.5 + 1e-7, 1.0 - 1e-7, 1.0 + 1e-7):
            for n in (1, 5):
                closed = weighted_sq_integral(alpha, n)
                quad = weighted_sq_integral_quad(alpha, n)
                assert closed == pytest.approx(quad, abs=1e-9)


class TestGreenEntry:
    def test_first_power_against_linear_solve(self):
        size = 2000
        tri = operators.assemble(1.0, size).entries
        lam = -1.0
        col = np.linalg.solve(tri - lam * np.eye(size), np.eye(size, 1)[:, 0])
        assert green_entry(1.0, 1, 1, lam) == pytest.approx(col[0], abs=1e-12)
        assert green_entry(1.0, 1, 2, lam) == pytest.approx(col[1], abs=1e-12)
        assert green_entry(1.0, 1, 5, lam) == pytest.approx(col[4], abs=1e-12)

    def test_resolvent_decay(self):
        for alpha in (0.5, 1.0, 2.0):
            assert abs(green_entry(alpha, 1, 2, -1e6)) < 2e-6

    def test_monotone_in_lambda(self):
        vals = [green_entry(0.75, 3, 3, lam) for lam in (-10.0, -1.0, -0.1, -0.01)]
        assert all(v > 0.0 for v in vals)
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_spectrum_rejected(self):
        with pytest.raises(ValueError):
            green_entry(1.0, 1, 1, 2.0)
        with pytest.raises(ValueError):
            green_entry(1.0, 1, 1, 0.0)
        green_entry(1.0, 1, 1, 4.0**1.0 + 0.5)  # above the spectrum: fine

    def test_complex_lambda(self):
        val = green_entry(1.0, 1, 1, 1.0 + 1.0j)
        # resolvent symmetry: conjugate argument gives conjugate value
        conj = green_entry(1.0, 1, 1, 1.0 - 1.0j)
        assert val == pytest.approx(np.conj(conj), abs=1e-12)

    def test_criticality_signature(self):
        # along lam = -10^-k the diagonal entry diverges at and above 3/2
        # and converges below; the ratio of successive increments separates
        # the two regimes cleanly (it tends to 10^(1 - 3/(2 alpha)))
        lams = [-(10.0**-k) for k in range(1, 9)]
        for alpha in (1.5, 2.0, 3.0):
            seq = [green_entry(alpha, 1, 1, lam) for lam in lams]
            assert all(b > a for a, b in zip(seq, seq[1:]))
            inc = [b - a for a, b in zip(seq, seq[1:])]
            assert inc[-1] / inc[-2] > 0.98  # increments do not die off
        for alpha in (0.5, 1.0, 1.4):
            seq = [green_entry(alpha, 1, 1, lam) for lam in lams]
            inc = [b - a for a, b in zip(seq, seq[1:])]
            assert inc[-1] / inc[-2] < 0.9  # geometric convergence
            # and the sequence respects the uniform bound
            assert seq[-1] <= uniform_bound_rough(alpha, 1, 1) + 1e-10


class TestUniformBounds:
    def test_rough_constant_at_first_power(self):
        assert rough_bound_const(1.0) == pytest.approx(1.0, abs=1e-10)

    def test_rough_constant_blows_up_toward_critical(self):
        consts = [rough_bound_const(a) for a in (1.4, 1.45, 1.49)]
        assert consts[0] < consts[1] < consts[2]

    def test_rough_constant_against_quadrature(self):
        from fraclap.green import rough_bound_const_quad

        for alpha in (0.25, 0.5, 0.75, 1.0, 1.25, 1.4, 1.45):
            assert rough_bound_const(alpha) == pytest.approx(
                rough_bound_const_quad(alpha), rel=1e-10
            )

    def test_refined_substitutions(self):
        assert uniform_bound_refined(1.0, 1, 1) == pytest.approx(1.0, rel=1e-12)
        assert uniform_bound_refined(1.0, 1, 4) == pytest.approx(2.0, rel=1e-12)

    def test_bound_dominance_sample(self):
        for alpha in (0.5, 1.0, 1.4):
            for lam in (-1e-3, -1.0, -1e3):
                for m, n in ((1, 1), (2, 5), (7, 7)):
                    val = abs(green_entry(alpha, m, n, lam))
                    assert val <= uniform_bound_rough(alpha, m, n) + 1e-10
                    assert val <= uniform_bound_refined(alpha, m, n) + 1e-10

    def test_reflected_constant_finite_beyond_critical(self):
        # the reflected bound exists for every positive power
        for alpha in (0.5, 1.5, 2.0, 3.0):
            c = reflected_bound_const(alpha)
            assert math.isfinite(c) and c > 0.0


class TestPotentials:
    def test_classical_hardy_values(self):
        vals = Potential.classical_hardy().values(4)
        assert np.allclose(vals, [0.25, 1.0 / 16.0, 1.0 / 36.0, 1.0 / 64.0], rtol=1e-15)

    def test_kpp_first_value(self):
        vals = Potential.kpp().values(1)
        assert vals[0] == pytest.approx(2.0 - math.sqrt(2.0), rel=1e-14)

    def test_kpp_naive_agreement_small_n(self):
        n = np.arange(1.0, 101.0)
        naive = 2.0 - np.sqrt((n - 1.0) / n) - np.sqrt((n + 1.0) / n)
        assert np.allclose(Potential.kpp().values(100), naive, rtol=1e-11)

    def test_kpp_dominates_classical_everywhere(self):
        big = 1_000_000
        assert np.all(Potential.kpp().values(big) > Potential.classical_hardy().values(big))

    def test_delta(self):
        pot = Potential.delta(3, 0.7)
        vals = pot.values(5)
        assert vals[2] == 0.7
        assert np.sum(vals != 0.0) == 1

    def test_nonnegativity_enforced(self):
        with pytest.raises(ValueError):
            Potential.explicit([0.1, -0.2])
        with pytest.raises(ValueError):
            Potential.delta(1, -1.0)
        with pytest.raises(ValueError):
            Potential.power(-0.5, 2.0)


class TestAdmissibility:
    def test_threshold_at_first_power(self):
        assert admissibility_threshold(1.0) == pytest.approx(2.0 * math.pi, rel=1e-15)

    def test_zero_potential_admissible(self):
        assert theorem2_check(1.0, Potential.zero()).decision == "admissible"

    def test_single_site_boundary(self):
        assert theorem2_check(1.0, Potential.delta(1, 1.0)).decision == "admissible"
        assert theorem2_check(1.0, Potential.delta(1, 1.0 + 1e-9)).decision == "inconclusive"

    def test_single_site_other_sites(self):
        # site n threshold is 1/n at the first power (g_n = 2 pi n)
        assert theorem2_check(1.0, Potential.delta(4, 0.25)).decision == "admissible"
        assert theorem2_check(1.0, Potential.delta(4, 0.2500001)).decision == "inconclusive"

    def test_power_weight_closure(self):
        for alpha, eps in ((0.25, 1.0), (0.5, 0.5), (1.0, 1.0), (1.25, 0.25), (1.4, 0.2)):
            pot = power_hardy_weight(alpha, eps)
            res = theorem2_check(alpha, pot)
            assert res.decision == "admissible"
            assert math.isfinite(res.tail_bound)

    def test_power_weight_first_power_coefficient(self):
        pot = power_hardy_weight(1.0, 1.0)
        assert pot.exponent == 3.0
        assert pot.coeff == pytest.approx(6.0 / math.pi**2, rel=1e-12)

    def test_explicit_without_annotation_inconclusive(self):
        pot = Potential.explicit([0.0] * 10)
        res = theorem2_check(1.0, pot)
        assert res.decision == "inconclusive"
        assert math.isinf(res.tail_bound)

    def test_explicit_finitely_supported(self):
        pot = Potential.explicit([0.1, 0.05], finitely_supported=True)
        res = theorem2_check(1.0, pot)
        assert res.decision == "admissible"
        assert res.tail_bound == 0.0

    def test_never_inadmissible(self):
        res = theorem2_check(1.0, Potential.delta(1, 100.0))
        assert res.decision in ("admissible", "inconclusive")
        assert res.decision == "inconclusive"

    def test_epsilon_validation(self):
        with pytest.raises(ValueError):
            power_hardy_weight(1.0, 0.0)


class TestHilbertSchmidtBound:
    def test_zero(self):
        assert bs_hs_bound(1.0, Potential.zero()) == 0.0

    def test_single_site_value(self):
        assert bs_hs_bound(1.0, Potential.delta(1, 0.5)) == pytest.approx(0.5, rel=1e-12)

    def test_divergent_series_reported_inf(self):
        # classical Hardy at the first power: sum (2 pi n)/(4 n^2) diverges
        assert math.isinf(bs_hs_bound(1.0, Potential.classical_hardy()))

    def test_certificate_below_one(self):
        val = bs_hs_bound(1.0, power_hardy_weight(1.0, 1.0))
        assert val <= 1.0 + 1e-12
