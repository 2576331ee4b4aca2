import numpy as np
import pytest

from fracdelay.errors import WindowTooLarge
from fracdelay.series import TimeSeries
from fracdelay.smoothing import (
    KernelConfig,
    MovingAverageConfig,
    SavitzkyGolayConfig,
    kernel_smooth,
    moving_average,
    savgol_coefficients,
    savgol_smooth,
)


def ts(values, dt=1.0):
    return TimeSeries(np.asarray(values, dtype=float), dt=dt)


class TestMovingAverage:
    def test_window_one_is_identity(self):
        x = ts([3.0, 1.0, 4.0, 1.0, 5.0])
        out = moving_average(x, MovingAverageConfig(window=1))
        assert np.array_equal(out.values, x.values)

    def test_interior_and_edges(self):
        out = moving_average(ts([1, 2, 3, 4, 5]), MovingAverageConfig(window=3))
        assert out.values == pytest.approx([1.5, 2.0, 3.0, 4.0, 4.5])

    def test_constant_unchanged(self):
        out = moving_average(ts(np.full(20, 2.5)), MovingAverageConfig(window=7))
        assert out.values == pytest.approx(np.full(20, 2.5))

    def test_window_too_large(self):
        with pytest.raises(WindowTooLarge):
            moving_average(ts([1, 2, 3]), MovingAverageConfig(window=5))

    def test_valid_only_length(self):
        x = ts(np.arange(10.0))
        out = moving_average(x, MovingAverageConfig(window=5), valid_only=True)
        assert len(out) == 10 - 5 + 1
        full = moving_average(x, MovingAverageConfig(window=5))
        assert np.array_equal(out.values, full.values[2:-2])

    def test_custom_weights(self):
        cfg = MovingAverageConfig(window=3, weights=(0.25, 0.5, 0.25))
        out = moving_average(ts([0, 4, 0, 4, 0]), cfg)
        assert out.values[2] == pytest.approx(2.0)

    def test_weight_validation(self):
        with pytest.raises(ValueError):
            MovingAverageConfig(window=3, weights=(0.5, 0.6, 0.1))
        with pytest.raises(ValueError):
            MovingAverageConfig(window=3, weights=(0.5, 0.5))
        with pytest.raises(ValueError):
            MovingAverageConfig(window=4)

    def test_output_within_input_range(self):
        rng = np.random.default_rng(1)
        x = rng.standard_normal(200)
        out = moving_average(ts(x), MovingAverageConfig(window=11))
        assert out.values.min() >= x.min() - 1e-12
        assert out.values.max() <= x.max() + 1e-12


class TestSavgolCoefficients:
    def test_classic_quadratic_window(self):
        c = savgol_coefficients(SavitzkyGolayConfig(2, 2, 2))
        expected = np.array([-3, 12, 17, 12, -3]) / 35.0
        assert c == pytest.approx(expected, abs=1e-12)

    def test_against_lstsq_oracle(self):
        # independent route: solve the 5x3 LS system per unit vector
        cfg = SavitzkyGolayConfig(2, 2, 2)
        offsets = np.arange(-2, 3, dtype=float)
        design = np.vander(offsets, 3, increasing=True)
        oracle = np.empty(5)
        for i in range(5):
            e = np.zeros(5)
            e[i] = 1.0
            beta, *_ = np.linalg.lstsq(design, e, rcond=None)
            oracle[i] = beta[0]
        assert savgol_coefficients(cfg) == pytest.approx(oracle, abs=1e-12)

    def test_degree_zero_is_uniform(self):
        c = savgol_coefficients(SavitzkyGolayConfig(3, 3, 0))
        assert c == pytest.approx(np.full(7, 1.0 / 7.0), abs=1e-14)

    def test_weights_sum_to_one(self):
        for nl, nr, deg in [(5, 5, 3), (4, 0, 2), (0, 6, 3), (7, 3, 4)]:
            c = savgol_coefficients(SavitzkyGolayConfig(nl, nr, deg))
            assert c.sum() == pytest.approx(1.0, abs=1e-12)

    def test_invalid_degree(self):
        with pytest.raises(ValueError):
            SavitzkyGolayConfig(1, 1, 3)


class TestSavgolSmooth:
    def test_cubic_reproduced_everywhere(self):
        t = np.arange(100, dtype=float)
        x = 2 * t**3 - t + 5
        out = savgol_smooth(ts(x), SavitzkyGolayConfig(5, 5, 3))
        assert np.max(np.abs(out.values - x) / np.maximum(np.abs(x), 1.0)) < 1e-9

    def test_constant_unchanged(self):
        out = savgol_smooth(ts(np.full(30, 4.0)))
        assert out.values == pytest.approx(np.full(30, 4.0))

    def test_noise_reduction_on_sine(self):
        t = np.arange(500)
        clean = np.sin(2 * np.pi * t / 100.0)
        wins = 0
        for seed in range(20):
            rng = np.random.default_rng(seed)
            noisy = clean + 0.1 * rng.standard_normal(500)
            sm = savgol_smooth(ts(noisy)).values
            if np.mean((sm - clean) ** 2) < np.mean((noisy - clean) ** 2):
                wins += 1
        assert wins == 20

    def test_window_too_large(self):
        with pytest.raises(WindowTooLarge):
            savgol_smooth(ts(np.arange(5.0)), SavitzkyGolayConfig(5, 5, 3))

    def test_valid_only(self):
        x = ts(np.arange(30.0) ** 2)
        out = savgol_smooth(x, SavitzkyGolayConfig(5, 5, 3), valid_only=True)
        assert len(out) == 30 - 11 + 1

    def test_causal_configuration(self):
        x = ts(np.arange(50.0))
        out = savgol_smooth(x, SavitzkyGolayConfig(n_left=6, n_right=0, degree=2))
        assert out.values == pytest.approx(x.values, abs=1e-9)


class TestKernelSmooth:
    def test_constant_exact(self):
        out = kernel_smooth(ts(np.full(40, 3.3)))
        assert out.values == pytest.approx(np.full(40, 3.3), rel=1e-14)

    def test_huge_bandwidth_gives_global_mean(self):
        rng = np.random.default_rng(4)
        x = rng.standard_normal(100)
        out = kernel_smooth(ts(x), KernelConfig(bandwidth=1e6))
        assert np.max(np.abs(out.values - x.mean())) < 1e-6

    def test_tiny_bandwidth_is_identity(self):
        rng = np.random.default_rng(5)
        x = rng.standard_normal(100)
        out = kernel_smooth(ts(x), KernelConfig(bandwidth=1e-6))
        assert np.max(np.abs(out.values - x)) < 1e-9

    def test_output_within_input_range(self):
        rng = np.random.default_rng(6)
        x = rng.standard_normal(300)
        out = kernel_smooth(ts(x), KernelConfig(bandwidth=4.0))
        assert out.values.min() >= x.min() - 1e-12
        assert out.values.max() <= x.max() + 1e-12

    def test_invalid_bandwidth(self):
        with pytest.raises(ValueError):
            KernelConfig(bandwidth=0.0)


SMOOTHERS = [
    ("ma", lambda s: moving_average(s, MovingAverageConfig(window=7))),
    ("savgol", lambda s: savgol_smooth(s, SavitzkyGolayConfig(3, 3, 2))),
    ("kernel", lambda s: kernel_smooth(s, KernelConfig(bandwidth=2.0))),
]


@pytest.mark.parametrize("name,smooth", SMOOTHERS)
class TestSharedProperties:
    def test_linearity(self, name, smooth):
        rng = np.random.default_rng(10)
        x = rng.standard_normal(120)
        z = rng.standard_normal(120)
        a, b = 2.0, -0.7
        combined = smooth(ts(a * x + b * z)).values
        separate = a * smooth(ts(x)).values + b * smooth(ts(z)).values
        assert combined == pytest.approx(separate, abs=1e-10)

    def test_reproduces_constants(self, name, smooth):
        out = smooth(ts(np.full(64, -1.25)))
        assert out.values == pytest.approx(np.full(len(out), -1.25), abs=1e-12)

    def test_shift_equivariance(self, name, smooth):
        rng = np.random.default_rng(11)
        x = rng.standard_normal(90)
        shifted = smooth(ts(x + 5.0)).values
        assert shifted == pytest.approx(smooth(ts(x)).values + 5.0, abs=1e-10)
