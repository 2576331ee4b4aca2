import numpy as np
import pytest

from fracdelay.errors import SeriesTooShort
from fracdelay.series import TimeSeries, autocovariance
from fracdelay.spectral import Spectrum, WelchConfig, periodogram, welch_psd
from fracdelay.synthesis import FgnSpec, generate_fgn


def ts(values):
    return TimeSeries(np.asarray(values, dtype=float))


def direct_periodogram(x):
    """O(N^2) oracle: I(xi_j) = |sum_{t=1..N} x_t e^(i t xi_j)|^2 / (2 pi N)."""
    n = len(x)
    t = np.arange(1, n + 1)
    out = []
    for j in range(1, n // 2 + 1):
        xi = 2.0 * np.pi * j / n
        out.append(np.abs(np.sum(x * np.exp(1j * t * xi))) ** 2 / (2.0 * np.pi * n))
    return np.asarray(out)


class TestPeriodogram:
    def test_too_short(self):
        with pytest.raises(SeriesTooShort):
            periodogram(ts([1, 2, 3]))

    def test_constant_has_no_power(self):
        spec = periodogram(ts(np.full(64, 3.0)))
        assert np.all(spec.power < 1e-18)

    def test_single_tone_peak(self):
        n = 64
        t = np.arange(n)
        spec = periodogram(ts(np.cos(2 * np.pi * 8 * t / n)))
        peak = spec.frequencies[np.argmax(spec.power)]
        assert peak == pytest.approx(2 * np.pi * 8 / n)

    def test_matches_direct_dft(self):
        rng = np.random.default_rng(21)
        x = rng.standard_normal(256) + 0.5
        spec = periodogram(ts(x))
        oracle = direct_periodogram(x)
        assert np.allclose(spec.power, oracle, rtol=1e-8, atol=1e-14)

    def test_mean_shift_invariance(self):
        rng = np.random.default_rng(2)
        x = rng.standard_normal(512)
        a = periodogram(ts(x)).power
        b = periodogram(ts(x + 1000.0)).power
        assert np.allclose(a, b, rtol=1e-8, atol=1e-10)

    def test_equals_dft_of_biased_autocovariance(self):
        """Wiener-Khinchine in sample form, at the Fourier frequencies."""
        rng = np.random.default_rng(14)
        x = rng.standard_normal(512) * 2.0 + 5.0
        series = ts(x)
        spec = periodogram(series)
        acov = autocovariance(series, max_lag=len(x) - 1)
        for j in [1, 2, 3, 17, 100, 256]:
            xi = 2.0 * np.pi * j / len(x)
            k = np.arange(1, len(x))
            f_acov = (acov[0] + 2.0 * np.sum(acov[1:] * np.cos(k * xi))) / (2.0 * np.pi)
            assert spec.power[j - 1] == pytest.approx(f_acov, rel=1e-8, abs=1e-12)

    def test_frequency_grid(self):
        spec = periodogram(ts(np.arange(100.0)))
        assert spec.frequencies[0] == pytest.approx(2 * np.pi / 100)
        assert spec.frequencies[-1] == pytest.approx(np.pi)
        assert len(spec.frequencies) == 50


class TestWelch:
    def test_too_short(self):
        with pytest.raises(SeriesTooShort):
            welch_psd(ts(np.arange(100.0)), WelchConfig(segment_length=256))

    def test_constant_has_no_power(self):
        spec = welch_psd(ts(np.full(1024, 2.0)))
        assert np.all(spec.power < 1e-18)

    def test_single_rect_segment_equals_periodogram(self):
        rng = np.random.default_rng(30)
        x = rng.standard_normal(512)
        series = ts(x)
        w = welch_psd(
            series,
            WelchConfig(segment_length=512, overlap_fraction=0.0, window="rectangular"),
        )
        p = periodogram(series)
        assert np.allclose(w.power, p.power, rtol=1e-12)
        assert np.allclose(w.frequencies, p.frequencies)

    def test_white_noise_is_flat(self):
        rng = np.random.default_rng(77)
        spec = welch_psd(ts(rng.standard_normal(16384)))
        assert spec.power.max() / spec.power.min() < 4.0

    def test_fgn_low_frequency_dominates(self):
        series = generate_fgn(FgnSpec(h=0.9, n=16384, seed=4))
        spec = welch_psd(series)
        f = spec.frequencies
        low = spec.power[f <= f[-1] / 100.0].mean()
        high = spec.power[f >= f[-1] / 10.0 * 9.0].mean()
        assert low > high

    def test_invalid_config(self):
        with pytest.raises(ValueError):
            WelchConfig(segment_length=4)
        with pytest.raises(ValueError):
            WelchConfig(overlap_fraction=1.0)
        with pytest.raises(ValueError):
            WelchConfig(window="kaiser")


class TestSpectrumInvariants:
    def test_rejects_mismatched_lengths(self):
        with pytest.raises(ValueError):
            Spectrum(np.array([0.1, 0.2]), np.array([1.0]))

    def test_rejects_negative_power(self):
        with pytest.raises(ValueError):
            Spectrum(np.array([0.1, 0.2]), np.array([1.0, -0.1]))

    def test_rejects_non_increasing_frequencies(self):
        with pytest.raises(ValueError):
            Spectrum(np.array([0.2, 0.1]), np.array([1.0, 1.0]))
