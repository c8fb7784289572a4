"""Matrix entries of the operator powers against structure and oracles."""

import io
import math

import numpy as np
import pytest

from fraclap.operators import (
    Exponent,
    UnsupportedExponentError,
    assemble,
    assemble_reflected,
    entry,
    entry_oracle,
    load_matrix_binary,
    load_matrix_csv,
    save_matrix_binary,
    save_matrix_csv,
)


class TestExponent:
    def test_regimes(self):
        assert Exponent(1.0).regime == "subcritical"
        assert Exponent(1.5).regime == "critical"
        assert Exponent(2.0).regime == "critical"
        assert Exponent(-1.0).regime == "special_negative"
        assert Exponent(-0.5).regime == "special_negative"

    def test_rejects_unsupported(self):
        for bad in (0.0, -0.25, -2.0, -1.5):
            with pytest.raises(UnsupportedExponentError):
                Exponent(bad)


class TestFirstPower:
    def test_tridiagonal_exact(self):
        mat = assemble(1.0, 40).entries
        expected = 2.0 * np.eye(40) - np.eye(40, k=1) - np.eye(40, k=-1)
        assert np.array_equal(mat, expected)

    def test_entry_values(self):
        assert entry(1.0, 1, 1) == 2.0
        assert entry(1.0, 1, 2) == -1.0
        assert entry(1.0, 3, 7) == 0.0


class TestIntegerPowers:
    @pytest.mark.parametrize("power", [2, 3])
    def test_padded_product_consistency(self, power):
        size = 30
        first = assemble(1.0, size + power).entries
        product = np.linalg.matrix_power(first, power)[:size, :size]
        direct = assemble(float(power), size).entries
        assert np.max(np.abs(direct - product)) <= 1e-10

    def test_band_structure(self):
        mat = assemble(3.0, 20).entries
        for m in range(20):
            for n in range(20):
                if abs(m - n) > 3:
                    assert mat[m, n] == 0.0


class TestNegativePowers:
    def test_inverse_is_min(self):
        mat = assemble(-1.0, 25).entries
        idx = np.arange(1, 26)
        assert np.array_equal(mat, np.minimum.outer(idx, idx).astype(float))

    def test_inverse_against_oracle(self):
        for m, n in ((1, 1), (2, 5), (4, 4), (7, 3)):
            assert entry(-1.0, m, n) == pytest.approx(entry_oracle(-1.0, m, n), abs=1e-9)

    def test_half_inverse_against_oracle(self):
        for m, n in ((1, 1), (1, 2), (3, 3), (2, 6), (5, 8)):
            assert entry(-0.5, m, n) == pytest.approx(entry_oracle(-0.5, m, n), abs=1e-10)

    def test_half_inverse_squares_to_inverse(self):
        # the square of the -1/2 section converges (slowly, ~1/N) to min(m,n)
        idx = np.arange(1, 9)
        target = np.minimum.outer(idx, idx).astype(float)
        errs = []
        for size in (200, 400, 800):
            half = assemble(-0.5, size).entries
            errs.append(np.max(np.abs((half @ half)[:8, :8] - target)))
        assert errs[2] < errs[1] < errs[0]
        assert errs[2] <= 0.04
        assert errs[1] / errs[2] == pytest.approx(2.0, abs=0.3)

    def test_half_power_times_half_inverse(self):
        # A(1/2) A(-1/2) ~ identity in the interior, fast truncation decay
        plus = assemble(0.5, 400).entries
        minus = assemble(-0.5, 400).entries
        prod = plus @ minus
        assert np.max(np.abs(prod[:8, :8] - np.eye(400)[:8, :8])) <= 1e-6

    def test_functional_inverse(self):
        # A(1) A(-1) = I up to the boundary row at the truncation edge
        lap = assemble(1.0, 60).entries
        inv = assemble(-1.0, 60).entries
        prod = lap @ inv
        assert np.max(np.abs(prod[:59, :59] - np.eye(59))) <= 1e-12


class TestFractionalEntries:
    @pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75, 1.25, 1.5, 2.5])
    def test_against_oracle_sample(self, alpha):
        for m, n in ((1, 1), (1, 2), (2, 2), (3, 6), (5, 5), (8, 2)):
            closed = entry(alpha, m, n)
            oracle = entry_oracle(alpha, m, n)
            assert closed == pytest.approx(oracle, abs=1e-10)

    def test_symmetry(self):
        for alpha in (0.5, 1.3, 2.2):
            mat = assemble(alpha, 30).entries
            assert np.max(np.abs(mat - mat.T)) == 0.0

    def test_row_decay(self):
        # first-row decay: the difference of two Toeplitz coefficients of
        # order |m-n|^(-1-2a) gains one extra order, giving ~ n^(-2-2a)
        alpha = 0.75
        vals = [abs(entry(alpha, 1, n)) for n in (10, 20, 40, 80)]
        for a, b in zip(vals, vals[1:]):
            assert b < a
        rate = math.log(vals[0] / vals[-1]) / math.log(8.0)
        assert rate == pytest.approx(2.0 + 2.0 * alpha, abs=0.2)

    def test_spectral_containment(self):
        # eigenvalues of any section lie in [0, 4^alpha]
        for alpha in (0.5, 1.0, 1.75):
            w = np.linalg.eigvalsh(assemble(alpha, 200).entries)
            assert w[0] >= -1e-10
            assert w[-1] <= 4.0**alpha + 1e-10

    def test_index_validation(self):
        with pytest.raises(ValueError):
            entry(1.0, 0, 1)
        with pytest.raises(ValueError):
            assemble(1.0, 0)


class TestReflected:
    def test_definition(self):
        alpha = 1.5
        base = assemble(alpha, 25).entries
        refl = assemble_reflected(alpha, 25).entries
        assert np.max(np.abs(refl - (4.0**alpha * np.eye(25) - base))) == 0.0

    def test_positive_spectrum(self):
        refl = assemble_reflected(2.0, 150).entries
        w = np.linalg.eigvalsh(refl)
        assert w[0] >= -1e-10

    def test_requires_positive_power(self):
        with pytest.raises(UnsupportedExponentError):
            assemble_reflected(-1.0, 10)


class TestSerialization:
    def test_csv_round_trip(self):
        op = assemble(1.25, 12)
        buf = io.StringIO()
        save_matrix_csv(op, buf)
        buf.seek(0)
        back = load_matrix_csv(buf)
        assert np.array_equal(back, op.entries)

    def test_binary_round_trip(self):
        op = assemble(0.5, 17)
        buf = io.BytesIO()
        save_matrix_binary(op, buf)
        buf.seek(0)
        back = load_matrix_binary(buf)
        assert np.array_equal(back, op.entries)

    def test_entries_read_only(self):
        op = assemble(1.0, 5)
        with pytest.raises(ValueError):
            op.entries[0, 0] = 99.0
