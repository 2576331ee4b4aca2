"""Raw periodogram and Welch power spectral density.

Frequencies are in radians per sample on (0, pi]; the DC bin is always
excluded so that log-log regressions stay well-defined.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SeriesTooShort
from .series import TimeSeries

WINDOWS = ("hann", "rectangular")


@dataclass(frozen=True)
class Spectrum:
    frequencies: np.ndarray
    power: np.ndarray

    def __post_init__(self):
        f = np.asarray(self.frequencies, dtype=float)
        p = np.asarray(self.power, dtype=float)
        if f.shape != p.shape or f.ndim != 1:
            raise ValueError("frequencies and power must be 1-d and equally long")
        if np.any(np.diff(f) <= 0):
            raise ValueError("frequencies must be strictly increasing")
        if np.any(p < 0):
            raise ValueError("power must be non-negative")
        f.setflags(write=False)
        p.setflags(write=False)
        object.__setattr__(self, "frequencies", f)
        object.__setattr__(self, "power", p)


@dataclass(frozen=True)
class WelchConfig:
    segment_length: int = 256
    overlap_fraction: float = 0.5
    window: str = "hann"

    def __post_init__(self):
        if self.segment_length < 8:
            raise ValueError("segment_length must be at least 8")
        if not (0.0 <= self.overlap_fraction < 1.0):
            raise ValueError("overlap_fraction must lie in [0, 1)")
        if self.window not in WINDOWS:
            raise ValueError(f"window must be one of {WINDOWS}")


def _taper(name: str, length: int) -> np.ndarray:
    if name == "rectangular":
        return np.ones(length)
    # periodic Hann
    return 0.5 * (1.0 - np.cos(2.0 * np.pi * np.arange(length) / length))


def periodogram(series: TimeSeries) -> Spectrum:
    """I(xi_j) = |sum_t x_t e^(i t xi_j)|^2 / (2 pi N) at xi_j = 2 pi j / N."""
    x = series.values
    n = x.size
    if n < 8:
        raise SeriesTooShort(f"need at least 8 samples, got {n}")
    coef = np.fft.rfft(x)
    half = n // 2
    power = np.abs(coef[1 : half + 1]) ** 2 / (2.0 * np.pi * n)
    freqs = 2.0 * np.pi * np.arange(1, half + 1) / n
    return Spectrum(freqs, power)


def welch_psd(series: TimeSeries, config: WelchConfig = WelchConfig()) -> Spectrum:
    """Averaged periodograms of overlapping tapered segments.

    Each segment is mean-removed before tapering (otherwise the taper
    leaks the DC level into the first bins) and its squared spectrum is
    normalized by the window energy, so a single rectangular full-length
    segment reproduces ``periodogram`` exactly.
    """
    x = series.values
    n = x.size
    seg = config.segment_length
    if n < seg:
        raise SeriesTooShort(f"need at least segment_length={seg} samples, got {n}")
    hop = max(1, int(round(seg * (1.0 - config.overlap_fraction))))
    w = _taper(config.window, seg)
    energy = float(np.dot(w, w))
    half = seg // 2
    acc = np.zeros(half)
    count = 0
    for start in range(0, n - seg + 1, hop):
        chunk = x[start : start + seg]
        coef = np.fft.rfft(w * (chunk - chunk.mean()))
        acc += np.abs(coef[1 : half + 1]) ** 2
        count += 1
    power = acc / (count * 2.0 * np.pi * energy)
    freqs = 2.0 * np.pi * np.arange(1, half + 1) / seg
    return Spectrum(freqs, power)
