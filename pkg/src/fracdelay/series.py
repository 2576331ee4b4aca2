"""Time-series container and time-domain statistics.

All moment estimators use the population (1/N) convention; the sample
(1/(N-1)) variants are deliberately not offered.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateSeries, LagTooLarge, TooShort


@dataclass(frozen=True)
class TimeSeries:
    """Uniformly sampled real-valued sequence.

    ``values`` must be one-dimensional, non-empty and finite; ``dt`` is the
    sampling interval in seconds (1.0 for unit-tick traces).  The stored
    array is read-only.
    """

    values: np.ndarray
    dt: float = 1.0

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=float)
        if arr.ndim != 1:
            raise ValueError("values must be one-dimensional")
        if arr.size < 1:
            raise ValueError("series must contain at least one sample")
        if not np.all(np.isfinite(arr)):
            raise ValueError("series values must be finite")
        if not (self.dt > 0):
            raise ValueError("dt must be positive")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return self.values.size

    @property
    def n(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class SummaryStats:
    """Population moments of a series (kurtosis reported both raw and excess)."""

    mean: float
    variance: float
    skewness: float
    kurtosis_raw: float
    kurtosis_excess: float = field(init=False)
    n: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kurtosis_excess", self.kurtosis_raw - 3.0)


def summary_stats(series: TimeSeries) -> SummaryStats:
    """Mean, population variance, skewness and kurtosis of a series.

    Raises TooShort for fewer than two samples and DegenerateSeries when
    the variance is zero (the standardized moments are then undefined).
    """
    x = series.values
    if x.size < 2:
        raise TooShort(f"need at least 2 samples, got {x.size}")
    mean = float(x.mean())
    centered = x - mean
    variance = float(np.mean(centered**2))
    if variance == 0.0:
        raise DegenerateSeries(
            f"constant series (mean {mean}, variance 0): skewness/kurtosis undefined"
        )
    z = centered / np.sqrt(variance)
    return SummaryStats(
        mean=mean,
        variance=variance,
        skewness=float(np.mean(z**3)),
        kurtosis_raw=float(np.mean(z**4)),
        n=x.size,
    )


def running_variance(series: TimeSeries) -> TimeSeries:
    """Population variance of the prefix x[0..k] for every k.

    The first element is 0 by convention.  Useful for eyeballing whether
    the run-time variance of a trace settles or keeps drifting.
    """
    x = series.values
    if x.size < 2:
        raise TooShort(f"need at least 2 samples, got {x.size}")
    # center on the global mean first so the cumulative sums stay small
    e = x - x.mean()
    k = np.arange(1, x.size + 1, dtype=float)
    m1 = np.cumsum(e) / k
    m2 = np.cumsum(e**2) / k
    var = np.maximum(m2 - m1**2, 0.0)
    var[0] = 0.0
    return TimeSeries(var, dt=series.dt)


def autocovariance(series: TimeSeries, max_lag: int) -> np.ndarray:
    """Biased (fixed divisor N) sample autocovariance at lags 0..max_lag.

    The biased form keeps the sequence positive semi-definite, which the
    spectral consistency checks rely on.
    """
    x = series.values
    n = x.size
    if max_lag >= n:
        raise LagTooLarge(f"max_lag {max_lag} must be < length {n}")
    if max_lag < 0:
        raise ValueError("max_lag must be non-negative")
    e = x - x.mean()
    out = np.empty(max_lag + 1)
    for k in range(max_lag + 1):
        out[k] = np.dot(e[: n - k], e[k:]) / n
    return out


def autocorrelation(series: TimeSeries, max_lag: int) -> np.ndarray:
    """Biased sample autocorrelation rho(0..max_lag); rho(0) is exactly 1."""
    acov = autocovariance(series, max_lag)
    if acov[0] == 0.0:
        raise DegenerateSeries("zero variance: autocorrelation undefined")
    return acov / acov[0]
