"""Smoothing filters: moving average, Savitzky-Golay, Gaussian kernel regression.

All three smoothers emit one output sample per input sample by default;
the truncate-to-valid convention (length n - window + 1) is available via
``valid_only`` for the moving-window filters.  Edge samples use clipped
windows: the moving average renormalizes the surviving weights, while the
Savitzky-Golay filter refits the local polynomial on the asymmetric
window so polynomial reproduction survives at the boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import RankDeficient, WindowTooLarge
from .series import TimeSeries


@dataclass(frozen=True)
class MovingAverageConfig:
    window: int = 11
    weights: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.window < 1 or self.window % 2 == 0:
            raise ValueError("window must be a positive odd integer")
        if self.weights is not None:
            w = np.asarray(self.weights, dtype=float)
            if w.size != self.window:
                raise ValueError("weights length must equal window")
            if np.any(w < 0):
                raise ValueError("weights must be non-negative")
            if abs(w.sum() - 1.0) > 1e-12:
                raise ValueError("weights must sum to 1")


@dataclass(frozen=True)
class SavitzkyGolayConfig:
    n_left: int = 5
    n_right: int = 5
    degree: int = 3

    def __post_init__(self):
        if self.n_left < 0 or self.n_right < 0:
            raise ValueError("n_left and n_right must be non-negative")
        if self.degree < 0:
            raise ValueError("degree must be non-negative")
        if self.degree > self.n_left + self.n_right:
            raise ValueError("degree must not exceed n_left + n_right")


@dataclass(frozen=True)
class KernelConfig:
    bandwidth: float = 4.0

    def __post_init__(self):
        if not (self.bandwidth > 0):
            raise ValueError("bandwidth must be positive")


def moving_average(
    series: TimeSeries,
    config: MovingAverageConfig = MovingAverageConfig(),
    valid_only: bool = False,
) -> TimeSeries:
    """Centered weighted moving average.

    At the boundaries the window is clipped to the array and the surviving
    weights renormalized, so constants are reproduced everywhere.
    """
    x = series.values
    n = x.size
    r = config.window
    if r > n:
        raise WindowTooLarge(f"window {r} exceeds length {n}")
    h = r // 2
    w = (
        np.full(r, 1.0 / r)
        if config.weights is None
        else np.asarray(config.weights, dtype=float)
    )
    out = np.correlate(x, w, mode="same") if r > 1 else x.copy()
    for i in list(range(min(h, n))) + list(range(max(0, n - h), n)):
        lo = max(0, i - h)
        hi = min(n, i + h + 1)
        ww = w[lo - (i - h) : hi - (i - h)]
        denom = ww.sum()
        if denom <= 0:
            raise ValueError("edge window has zero total weight")
        out[i] = np.dot(ww, x[lo:hi]) / denom
    if valid_only:
        out = out[h : n - h]
    return TimeSeries(out, dt=series.dt)


def savgol_coefficients(config: SavitzkyGolayConfig = SavitzkyGolayConfig()) -> np.ndarray:
    """Convolution weights that evaluate the local LS polynomial at offset 0.

    Index i of the result corresponds to sample offset i - n_left, so the
    coefficients apply as a sliding dot product without flipping.
    """
    offsets = np.arange(-config.n_left, config.n_right + 1, dtype=float)
    design = np.vander(offsets, config.degree + 1, increasing=True)
    if np.linalg.matrix_rank(design) < config.degree + 1:
        raise RankDeficient("polynomial design matrix is singular")
    return np.linalg.pinv(design)[0]


def _fit_at(x: np.ndarray, lo: int, hi: int, center: int, degree: int) -> float:
    """LS polynomial through x[lo:hi] evaluated at index ``center``."""
    offsets = np.arange(lo, hi, dtype=float) - center
    deg = min(degree, hi - lo - 1)
    design = np.vander(offsets, deg + 1, increasing=True)
    return float(np.linalg.pinv(design)[0] @ x[lo:hi])


def savgol_smooth(
    series: TimeSeries,
    config: SavitzkyGolayConfig = SavitzkyGolayConfig(),
    valid_only: bool = False,
) -> TimeSeries:
    """Savitzky-Golay smoothing with polynomial-preserving edge handling.

    Interior points use the precomputed convolution; each edge point
    refits the polynomial on the clipped asymmetric window (degree reduced
    if the window is too starved to support it).
    """
    x = series.values
    n = x.size
    nl, nr = config.n_left, config.n_right
    width = nl + nr + 1
    if width > n:
        raise WindowTooLarge(f"window {width} exceeds length {n}")
    coeffs = savgol_coefficients(config)
    out = np.empty(n)
    out[nl : n - nr] = np.correlate(x, coeffs, mode="valid")
    for i in range(min(nl, n)):
        out[i] = _fit_at(x, 0, min(n, i + nr + 1), i, config.degree)
    for i in range(max(0, n - nr), n):
        out[i] = _fit_at(x, max(0, i - nl), n, i, config.degree)
    if valid_only:
        out = out[nl : n - nr]
    return TimeSeries(out, dt=series.dt)


def kernel_smooth(
    series: TimeSeries, config: KernelConfig = KernelConfig()
) -> TimeSeries:
    """Nadaraya-Watson regression over the sample index with a Gaussian kernel.

    Weight of sample j at target i is exp(-((i-j)/bandwidth)^2 / 2); the
    Gaussian never vanishes so the normalizing denominator stays positive.
    """
    x = series.values
    n = x.size
    idx = np.arange(n, dtype=float)
    out = np.empty(n)
    chunk = 512
    for lo in range(0, n, chunk):
        hi = min(n, lo + chunk)
        t = (idx[lo:hi, None] - idx[None, :]) / config.bandwidth
        w = np.exp(-0.5 * t * t)
        denom = w.sum(axis=1)
        # underflow can zero an entire row when the bandwidth is tiny;
        # the limit of a vanishing bandwidth is the identity
        flat = denom == 0.0
        out[lo:hi] = np.where(flat, x[lo:hi], (w @ x) / np.where(flat, 1.0, denom))
    return TimeSeries(out, dt=series.dt)
