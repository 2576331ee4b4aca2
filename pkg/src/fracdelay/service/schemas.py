"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, Field


class TracePayload(BaseModel):
    values: list[float] = Field(min_length=1)
    dt: float = 1.0


class StatsRequest(TracePayload):
    pass


class StatsResponse(BaseModel):
    mean: float
    variance: float
    skewness: float
    kurtosis_raw: float
    kurtosis_excess: float
    n: int


class EstimatorConfigModel(BaseModel):
    min_block: int = 8
    max_block_fraction: float = 0.25
    num_scales: int = 20
    low_freq_fraction: float = 0.1


class HurstRequest(TracePayload):
    methods: list[str] | None = None  # None = all eight, table order
    config: EstimatorConfigModel = EstimatorConfigModel()


class FitModel(BaseModel):
    slope: float
    intercept: float
    r_squared: float


class EstimateModel(BaseModel):
    method: str
    h: float
    alpha: float
    fractal_dim: float
    out_of_range: bool
    fit: FitModel


class MethodResultModel(BaseModel):
    method: str
    ok: bool
    estimate: EstimateModel | None = None
    error: str | None = None
    error_detail: str | None = None


class HurstResponse(BaseModel):
    results: list[MethodResultModel]
    report: str


class DelayChannelModel(BaseModel):
    mu: float
    sigma_d: float
    tau_max: float


class SynthRequest(BaseModel):
    h: float
    n: int
    sigma: float = 1.0
    seed: int = 0
    delay: DelayChannelModel | None = None


class TraceResponse(BaseModel):
    values: list[float]
    dt: float


class WelchModel(BaseModel):
    segment_length: int = 256
    overlap_fraction: float = 0.5
    window: str = "hann"


class PsdRequest(TracePayload):
    method: str = "welch"  # "periodogram" or "welch"
    welch: WelchModel = WelchModel()


class PsdResponse(BaseModel):
    frequencies: list[float]
    power: list[float]


class MovingAverageModel(BaseModel):
    window: int = 11
    weights: list[float] | None = None


class SavitzkyGolayModel(BaseModel):
    n_left: int = 5
    n_right: int = 5
    degree: int = 3


class KernelModel(BaseModel):
    bandwidth: float = 4.0


class SmoothRequest(TracePayload):
    method: str  # "ma", "savgol" or "kernel"
    ma: MovingAverageModel = MovingAverageModel()
    savgol: SavitzkyGolayModel = SavitzkyGolayModel()
    kernel: KernelModel = KernelModel()
    valid_only: bool = False


class ReactorParamsModel(BaseModel):
    beta: float = 0.0065
    lam: float = 0.08
    gen_time: float = 1e-4


class ReactivityProgramModel(BaseModel):
    kind: str = "step"
    rho0: float = 0.0
    rho1: float = 0.0
    t_event: float = 0.0


class DelaySpecModel(BaseModel):
    h: float = 0.88
    seed: int = 0
    mu: float = 0.127
    sigma_d: float = 0.03
    tau_max: float = 0.5


class ChannelModel(BaseModel):
    tick: float = 0.01
    delays: list[float] | None = None  # explicit per-tick delays, seconds
    delay_spec: DelaySpecModel | None = None  # or an fGn recipe


class SmootherSelectionModel(BaseModel):
    method: str  # "ma", "savgol" or "kernel"
    ma: MovingAverageModel = MovingAverageModel()
    savgol: SavitzkyGolayModel = SavitzkyGolayModel()
    kernel: KernelModel = KernelModel()


class SimulateRequest(BaseModel):
    params: ReactorParamsModel = ReactorParamsModel()
    program: ReactivityProgramModel = ReactivityProgramModel(kind="step", rho1=0.0022)
    t_end: float = 10.0
    dt: float = 1e-4
    channel: ChannelModel | None = None
    smoother: SmootherSelectionModel | None = None


class SimulateResponse(BaseModel):
    t: list[float]
    p_clean: list[float]
    p_measured: list[float] | None = None
    p_smoothed: list[float] | None = None


class ScenarioModel(BaseModel):
    params: ReactorParamsModel = ReactorParamsModel()
    program: ReactivityProgramModel = ReactivityProgramModel(kind="step", rho1=0.0022)
    t_end: float = 10.0
    dt: float = 1e-4
    tick: float = 0.01
    mu: float = 0.127
    sigma_d: float = 0.03
    tau_max: float = 0.5


class BenchmarkRequest(BaseModel):
    alphas: list[float] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]
    seeds: int = 20
    seed_base: int = 0
    smoothers: list[str] = ["ma", "savgol", "kernel"]
    ma: MovingAverageModel = MovingAverageModel()
    savgol: SavitzkyGolayModel = SavitzkyGolayModel()
    kernel_bandwidths: list[float] = [2.0, 4.0, 8.0]
    scenario: ScenarioModel = ScenarioModel()
    workers: int = 1


class BenchmarkRecordModel(BaseModel):
    smoother: str
    alpha: float
    seed: int
    mse: float


class BenchmarkAggregateModel(BaseModel):
    smoother: str
    alpha: float
    mean_mse: float
    std_mse: float


class BenchmarkResponse(BaseModel):
    records: list[BenchmarkRecordModel]
    aggregates: list[BenchmarkAggregateModel]
    findings: list[str]


class ErrorBody(BaseModel):
    error: str
    detail: str
