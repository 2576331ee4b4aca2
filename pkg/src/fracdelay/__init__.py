"""Self-similarity analysis and smoothing of network-induced delay traces.

Core pipeline: estimate the Hurst parameter of a delay trace (eight
estimators), synthesize exact fractional Gaussian noise as ground truth,
smooth delay-corrupted signals (moving average, Savitzky-Golay, Gaussian
kernel regression) and demonstrate the loop on a point-kinetics reactor
transient measured through a random-delay channel.
"""

from .errors import AnalysisError
from .series import TimeSeries, SummaryStats, summary_stats, running_variance, autocorrelation
from .synthesis import FgnSpec, fgn_autocovariance, generate_fgn, generate_delay_trace
from .hurst import (
    EstimatorConfig,
    HurstEstimate,
    LogLogFit,
    MethodResult,
    METHOD_ORDER,
    estimate,
    estimate_all,
    loglog_fit,
    aggregate,
)
from .spectral import Spectrum, WelchConfig, periodogram, welch_psd
from .smoothing import (
    KernelConfig,
    MovingAverageConfig,
    SavitzkyGolayConfig,
    kernel_smooth,
    moving_average,
    savgol_coefficients,
    savgol_smooth,
)
from .reactor import (
    ChannelConfig,
    ReactivityProgram,
    ReactorParams,
    ReactorState,
    Transient,
    measure_through_channel,
    simulate,
)
from .benchmark import BenchmarkPlan, BenchmarkResult, Scenario, run_benchmark, table1_report

__version__ = "0.1.0"
