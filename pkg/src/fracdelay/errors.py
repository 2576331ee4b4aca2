"""Exception taxonomy shared by all modules.

Class names double as the stable error identifiers surfaced by the CLI
and the HTTP service, so they are nouns rather than the usual *Error
spelling.
"""


class AnalysisError(Exception):
    """Base class for all domain errors raised by this package."""

    @property
    def name(self) -> str:
        return type(self).__name__


class SeriesTooShort(AnalysisError):
    """Input series has too few samples for the requested operation."""


# series-level alias used by the statistics operations
TooShort = SeriesTooShort


class DegenerateSeries(AnalysisError):
    """Series has zero variance where a scale-dependent statistic is needed."""


class LagTooLarge(AnalysisError):
    """Requested autocorrelation lag is not smaller than the series length."""


class TooFewPoints(AnalysisError):
    """Fewer than three points supplied to a log-log regression."""


class NonPositivePoint(AnalysisError):
    """Log-log regression received a coordinate that is not strictly positive."""


class BlockTooLarge(AnalysisError):
    """Aggregation block size exceeds the series length."""


class TooFewScales(AnalysisError):
    """Not enough usable scales survived for a regression-based estimator."""


class InvalidH(AnalysisError):
    """Hurst exponent outside the open interval (0, 1)."""


class EmbeddingFailure(AnalysisError):
    """Circulant embedding produced a significantly negative eigenvalue."""


class InvalidBounds(AnalysisError):
    """Inconsistent bounds, e.g. mean delay above the delay ceiling."""


class WindowTooLarge(AnalysisError):
    """Smoothing window does not fit inside the series."""


class RankDeficient(AnalysisError):
    """Polynomial design matrix is singular."""


class StepTooLarge(AnalysisError):
    """Integrator step violates the stiffness guard."""


class NonPositiveState(AnalysisError):
    """Integration produced a non-physical reactor state."""


class TraceTooShort(AnalysisError):
    """Delay trace is shorter than the number of measurement ticks."""


class ExcessiveClamping(AnalysisError):
    """Delay clamp active on too many samples; channel scale distorts the noise."""


class MalformedCsv(AnalysisError):
    """CSV input could not be parsed; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
