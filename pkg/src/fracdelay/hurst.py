"""Hurst-parameter estimators with shared log-log regression machinery.

Eight estimators are provided, reported in a fixed order: absolute value,
aggregated variance, boxed periodogram, differenced variance, Higuchi,
residuals-of-regression (Peng), raw periodogram and rescaled range.  All
of them reduce to an ordinary least-squares line through a log-log cloud;
they differ only in the statistic plotted against scale.

Conventions worth knowing before touching anything here:

* Scale ladders are geometric between ``min_block`` and
  ``floor(max_block_fraction * N)``, deduplicated after rounding.
* Trailing partial blocks are always discarded.
* Variances taken across a handful of block means (aggvar, diffvar) use
  the unbiased 1/(k-1) divisor, as in the classic R implementations of
  these estimators; with as few as four blocks at the top scale the
  Bessel correction measurably reduces the small-sample bias.
* Estimates are never clamped: out-of-range values are flagged, not
  hidden, since real traces do produce H slightly above 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import (
    BlockTooLarge,
    DegenerateSeries,
    NonPositivePoint,
    SeriesTooShort,
    TooFewPoints,
    TooFewScales,
    AnalysisError,
)
from .series import TimeSeries
from .spectral import periodogram

#: Table-style report order
METHOD_ORDER = ("absval", "aggvar", "boxper", "diffvar", "higuchi", "peng", "per", "rs")

METHOD_LABELS = {
    "absval": "Absval",
    "aggvar": "Aggvar",
    "boxper": "Boxper",
    "diffvar": "Diffvar",
    "higuchi": "Higuchi",
    "peng": "Peng",
    "per": "Per",
    "rs": "R/S",
}

#: frequency boxes used by the boxed-periodogram estimator
BOXPER_NUM_BOXES = 60


@dataclass(frozen=True)
class EstimatorConfig:
    min_block: int = 8
    max_block_fraction: float = 0.25
    num_scales: int = 20
    low_freq_fraction: float = 0.1

    def __post_init__(self):
        if self.min_block < 4:
            raise ValueError("min_block must be at least 4")
        if not (0.0 < self.max_block_fraction <= 1.0):
            raise ValueError("max_block_fraction must lie in (0, 1]")
        if self.num_scales < 3:
            raise ValueError("num_scales must be at least 3")
        if not (0.0 < self.low_freq_fraction <= 1.0):
            raise ValueError("low_freq_fraction must lie in (0, 1]")


@dataclass(frozen=True)
class LogLogFit:
    slope: float
    intercept: float
    r_squared: float
    points: tuple[tuple[float, float], ...]


@dataclass(frozen=True)
class HurstEstimate:
    h: float
    alpha: float
    fractal_dim: float
    method: str
    fit: LogLogFit
    out_of_range: bool


@dataclass(frozen=True)
class MethodResult:
    """Per-method outcome of estimate_all; failures are carried, not dropped."""

    method: str
    estimate: HurstEstimate | None = None
    error: AnalysisError | None = None

    @property
    def ok(self) -> bool:
        return self.estimate is not None


def loglog_fit(points: Sequence[tuple[float, float]]) -> LogLogFit:
    """OLS line through (ln x, ln y); slope is the power-law exponent."""
    pts = list(points)
    if len(pts) < 3:
        raise TooFewPoints(f"need at least 3 points, got {len(pts)}")
    x = np.array([p[0] for p in pts], dtype=float)
    y = np.array([p[1] for p in pts], dtype=float)
    if np.any(x <= 0) or np.any(y <= 0):
        raise NonPositivePoint("all coordinates must be strictly positive")
    lx, ly = np.log(x), np.log(y)
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    ss_res = float(np.sum(resid**2))
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    r2 = float(min(max(r2, 0.0), 1.0))
    return LogLogFit(float(slope), float(intercept), r2, tuple(zip(lx, ly)))


def aggregate(series: TimeSeries, m: int) -> TimeSeries:
    """Block means at scale m; the trailing partial block is discarded."""
    if m < 1:
        raise ValueError("block size must be positive")
    n = series.n
    if m > n:
        raise BlockTooLarge(f"block size {m} exceeds length {n}")
    k = n // m
    return TimeSeries(series.values[: k * m].reshape(k, m).mean(axis=1), dt=series.dt * m)


def _block_sizes(n: int, config: EstimatorConfig) -> np.ndarray:
    m_max = int(np.floor(config.max_block_fraction * n))
    if m_max < config.min_block:
        raise SeriesTooShort(
            f"length {n} gives max block {m_max} below min_block {config.min_block}"
        )
    grid = np.exp(
        np.linspace(np.log(config.min_block), np.log(m_max), config.num_scales)
    )
    return np.unique(np.round(grid).astype(int))


def _require(series: TimeSeries, config: EstimatorConfig, min_len: int) -> np.ndarray:
    x = series.values
    if x.size < min_len:
        raise SeriesTooShort(f"need at least {min_len} samples, got {x.size}")
    if np.var(x) == 0.0:
        raise DegenerateSeries("constant series carries no scaling information")
    return x


def _blocks(x: np.ndarray, m: int) -> np.ndarray:
    k = x.size // m
    return x[: k * m].reshape(k, m)


def _finish(method: str, h: float, fit: LogLogFit) -> HurstEstimate:
    return HurstEstimate(
        h=h,
        alpha=2.0 * h - 1.0,
        fractal_dim=2.0 - h,
        method=method,
        fit=fit,
        out_of_range=not (0.0 < h < 1.5),
    )


def rs_estimate(series: TimeSeries, config: EstimatorConfig = EstimatorConfig()) -> HurstEstimate:
    """Rescaled range: E[R/S](n) ~ C n^H.

    Per block: R is the range of the cumulative deviations from the block
    mean, S the block standard deviation; blocks with S = 0 are skipped.
    """
    x = _require(series, config, 4 * config.min_block)
    pts = []
    for m in _block_sizes(x.size, config):
        blocks = _blocks(x, m)
        dev = blocks - blocks.mean(axis=1, keepdims=True)
        z = np.cumsum(dev, axis=1)
        r = z.max(axis=1) - z.min(axis=1)
        s = blocks.std(axis=1)
        ok = s > 0
        if ok.any():
            pts.append((float(m), float(np.mean(r[ok] / s[ok]))))
    fit = loglog_fit(pts)
    return _finish("rs", fit.slope, fit)


def aggvar_estimate(series: TimeSeries, config: EstimatorConfig = EstimatorConfig()) -> HurstEstimate:
    """Aggregated variance: Var(X^(m)) ~ m^(2H-2), so H = 1 + slope/2."""
    x = _require(series, config, 4 * config.min_block)
    pts = []
    for m in _block_sizes(x.size, config):
        v = _blocks(x, m).mean(axis=1).var(ddof=1)
        if v > 0:
            pts.append((float(m), float(v)))
    fit = loglog_fit(pts)
    return _finish("aggvar", 1.0 + fit.slope / 2.0, fit)


def absval_estimate(series: TimeSeries, config: EstimatorConfig = EstimatorConfig()) -> HurstEstimate:
    """Absolute moments of the aggregated, mean-centered series; H = 1 + slope."""
    x = _require(series, config, 4 * config.min_block)
    e = x - x.mean()
    pts = []
    for m in _block_sizes(x.size, config):
        a = np.abs(_blocks(e, m).mean(axis=1)).mean()
        if a > 0:
            pts.append((float(m), float(a)))
    fit = loglog_fit(pts)
    return _finish("absval", 1.0 + fit.slope, fit)


def periodogram_estimate(series: TimeSeries, config: EstimatorConfig = EstimatorConfig()) -> HurstEstimate:
    """Log-log periodogram regression near the origin; slope is 1 - 2H."""
    x = _require(series, config, 64)
    spec = periodogram(series)
    n_low = max(3, int(np.floor(config.low_freq_fraction * spec.frequencies.size)))
    xi = spec.frequencies[:n_low]
    power = spec.power[:n_low]
    keep = power > 0
    fit = loglog_fit(list(zip(xi[keep], power[keep])))
    return _finish("per", (1.0 - fit.slope) / 2.0, fit)


def boxper_estimate(series: TimeSeries, config: EstimatorConfig = EstimatorConfig()) -> HurstEstimate:
    """Periodogram averaged in logarithmically equi-spaced frequency boxes.

    Box means are regressed against geometric box centers over the whole
    frequency axis; empty boxes are dropped.
    """
    x = _require(series, config, 64)
    spec = periodogram(series)
    xi, power = spec.frequencies, spec.power
    lo, hi = xi[0], xi[-1]
    edges = np.exp(np.linspace(np.log(lo), np.log(hi), BOXPER_NUM_BOXES + 1))
    edges[0] *= 1.0 - 1e-12
    edges[-1] *= 1.0 + 1e-12
    which = np.digitize(xi, edges) - 1
    pts = []
    for b in range(BOXPER_NUM_BOXES):
        sel = which == b
        if not sel.any():
            continue
        mean_power = power[sel].mean()
        if mean_power > 0:
            pts.append((float(np.sqrt(edges[b] * edges[b + 1])), float(mean_power)))
    fit = loglog_fit(pts)
    return _finish("boxper", (1.0 - fit.slope) / 2.0, fit)


def diffvar_estimate(series: TimeSeries, config: EstimatorConfig = EstimatorConfig()) -> HurstEstimate:
    """First differences of the aggregated variances across the scale ladder.

    Differencing cancels additive biases shared by neighbouring scales
    (notably the grand-mean term) while keeping the m^(2H-2) exponent:
    log|v(m_{i+1}) - v(m_i)| regressed on log m_i gives 2H - 2.
    """
    x = _require(series, config, 4 * config.min_block)
    sizes = _block_sizes(x.size, config)
    if sizes.size < 4:
        raise TooFewScales(f"need at least 4 scales, got {sizes.size}")
    v = np.array([_blocks(x, m).mean(axis=1).var(ddof=1) for m in sizes])
    d = np.diff(v)
    keep = d != 0.0
    if keep.sum() < 3:
        raise TooFewScales(f"only {int(keep.sum())} nonzero variance differences")
    pts = list(zip(sizes[:-1][keep].astype(float), np.abs(d[keep])))
    fit = loglog_fit(pts)
    return _finish("diffvar", 1.0 + fit.slope / 2.0, fit)


def higuchi_estimate(series: TimeSeries, config: EstimatorConfig = EstimatorConfig()) -> HurstEstimate:
    """Higuchi curve length of the cumulative-sum path.

    The input (an increment process) is mean-centered and integrated so
    the standard construction (Higuchi, Physica D 31, 1988) sees an
    fBm-like curve; centering keeps the estimate shift-invariant.  The
    fitted slope is -D and H = 2 - D.

    For stride m the offset-i0 curve length is

        L_i0(m) = (sum_j |Y[i0 + j m] - Y[i0 + (j-1) m]|) (n-1) / (nseg m^2)

    and L(m) averages over offsets.  Every stride-m difference belongs to
    exactly one offset, so the per-offset sums come from one bincount
    over |Y[m:] - Y[:-m]| grouped by index mod m.
    """
    x = _require(series, config, 128)
    y = np.cumsum(x - x.mean())
    n = y.size
    pts = []
    for m in _block_sizes(n, config):
        d = np.abs(y[m:] - y[:-m])
        sums = np.bincount(np.arange(n - m) % m, weights=d, minlength=m)
        nseg = (n - 1 - np.arange(m)) // m
        ok = nseg >= 1
        lengths = sums[ok] * (n - 1) / (nseg[ok] * m * m)
        mean_len = float(lengths.mean())
        if mean_len > 0:
            pts.append((float(m), mean_len))
    fit = loglog_fit(pts)
    d = -fit.slope
    return _finish("higuchi", 2.0 - d, fit)


def peng_estimate(series: TimeSeries, config: EstimatorConfig = EstimatorConfig()) -> HurstEstimate:
    """Variance of residuals: detrend cumulative-sum blocks, fit m^(2H)."""
    x = _require(series, config, 4 * config.min_block)
    y = np.cumsum(x)
    pts = []
    for m in _block_sizes(x.size, config):
        blocks = _blocks(y, m)
        t = np.arange(m, dtype=float)
        tc = t - t.mean()
        denom = float(np.dot(tc, tc))
        bc = blocks - blocks.mean(axis=1, keepdims=True)
        slope = bc @ tc / denom
        resid = bc - slope[:, None] * tc[None, :]
        v = float(np.mean(resid**2, axis=1).mean())
        if v > 0:
            pts.append((float(m), v))
    fit = loglog_fit(pts)
    return _finish("peng", fit.slope / 2.0, fit)


ESTIMATORS: dict[str, Callable[[TimeSeries, EstimatorConfig], HurstEstimate]] = {
    "absval": absval_estimate,
    "aggvar": aggvar_estimate,
    "boxper": boxper_estimate,
    "diffvar": diffvar_estimate,
    "higuchi": higuchi_estimate,
    "peng": peng_estimate,
    "per": periodogram_estimate,
    "rs": rs_estimate,
}


def estimate(method: str, series: TimeSeries, config: EstimatorConfig = EstimatorConfig()) -> HurstEstimate:
    try:
        fn = ESTIMATORS[method]
    except KeyError:
        raise ValueError(f"unknown estimator {method!r}; choose from {METHOD_ORDER}")
    return fn(series, config)


def estimate_all(
    series: TimeSeries, config: EstimatorConfig = EstimatorConfig()
) -> list[MethodResult]:
    """Run every estimator; failures are reported inline, never dropped."""
    results = []
    for method in METHOD_ORDER:
        try:
            results.append(MethodResult(method, estimate=ESTIMATORS[method](series, config)))
        except AnalysisError as exc:
            results.append(MethodResult(method, error=exc))
    return results
