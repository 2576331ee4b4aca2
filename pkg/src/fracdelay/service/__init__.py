"""FastAPI service wrapping the analysis package.

Run with::

    uvicorn fracdelay.service:app

Domain errors surface as HTTP 422 with ``{"error": <name>, "detail": ...}``
where ``error`` is the stable exception name (DegenerateSeries,
SeriesTooShort, ...); malformed payloads keep FastAPI's native 422 shape.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..benchmark import BenchmarkPlan, Scenario, run_benchmark, table1_report
from ..errors import AnalysisError
from ..hurst import ESTIMATORS, METHOD_ORDER, EstimatorConfig, MethodResult
from ..reactor import (
    ChannelConfig,
    ReactivityProgram,
    ReactorParams,
    measure_through_channel,
    simulate,
    tick_grid_power,
)
from ..series import TimeSeries, summary_stats
from ..smoothing import (
    KernelConfig,
    MovingAverageConfig,
    SavitzkyGolayConfig,
    kernel_smooth,
    moving_average,
    savgol_smooth,
)
from ..spectral import WelchConfig, periodogram, welch_psd
from ..synthesis import FgnSpec, generate_delay_trace, generate_fgn
from . import schemas as sm


def _series(payload: sm.TracePayload) -> TimeSeries:
    try:
        return TimeSeries(np.asarray(payload.values, dtype=float), dt=payload.dt)
    except ValueError as exc:
        raise AnalysisError(str(exc)) from exc


def _ma_config(model: sm.MovingAverageModel) -> MovingAverageConfig:
    weights = tuple(model.weights) if model.weights is not None else None
    return MovingAverageConfig(window=model.window, weights=weights)


def _sg_config(model: sm.SavitzkyGolayModel) -> SavitzkyGolayConfig:
    return SavitzkyGolayConfig(model.n_left, model.n_right, model.degree)


def _smooth_one(series: TimeSeries, method: str, ma, savgol, kernel, valid_only=False) -> TimeSeries:
    if method == "ma":
        return moving_average(series, _ma_config(ma), valid_only=valid_only)
    if method == "savgol":
        return savgol_smooth(series, _sg_config(savgol), valid_only=valid_only)
    if method == "kernel":
        return kernel_smooth(series, KernelConfig(kernel.bandwidth))
    raise AnalysisError(f"unknown smoothing method {method!r}")


def create_app() -> FastAPI:
    app = FastAPI(title="fracdelay", version=__version__)

    @app.exception_handler(AnalysisError)
    async def _domain_error(_: Request, exc: AnalysisError) -> JSONResponse:
        return JSONResponse(
            status_code=422,
            content=sm.ErrorBody(error=exc.name, detail=str(exc)).model_dump(),
        )

    @app.exception_handler(ValueError)
    async def _value_error(_: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(
            status_code=422,
            content=sm.ErrorBody(error="InvalidParameter", detail=str(exc)).model_dump(),
        )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/stats", response_model=sm.StatsResponse)
    def stats(req: sm.StatsRequest) -> sm.StatsResponse:
        s = summary_stats(_series(req))
        return sm.StatsResponse(
            mean=s.mean,
            variance=s.variance,
            skewness=s.skewness,
            kurtosis_raw=s.kurtosis_raw,
            kurtosis_excess=s.kurtosis_excess,
            n=s.n,
        )

    @app.post("/hurst", response_model=sm.HurstResponse)
    def hurst(req: sm.HurstRequest) -> sm.HurstResponse:
        series = _series(req)
        config = EstimatorConfig(**req.config.model_dump())
        methods = req.methods if req.methods is not None else list(METHOD_ORDER)
        results = []
        for method in methods:
            if method not in ESTIMATORS:
                raise AnalysisError(
                    f"unknown estimator {method!r}; choose from {METHOD_ORDER}"
                )
            try:
                results.append(MethodResult(method, estimate=ESTIMATORS[method](series, config)))
            except AnalysisError as exc:
                results.append(MethodResult(method, error=exc))
        out = []
        for res in results:
            if res.ok:
                est = res.estimate
                out.append(
                    sm.MethodResultModel(
                        method=res.method,
                        ok=True,
                        estimate=sm.EstimateModel(
                            method=est.method,
                            h=est.h,
                            alpha=est.alpha,
                            fractal_dim=est.fractal_dim,
                            out_of_range=est.out_of_range,
                            fit=sm.FitModel(
                                slope=est.fit.slope,
                                intercept=est.fit.intercept,
                                r_squared=est.fit.r_squared,
                            ),
                        ),
                    )
                )
            else:
                out.append(
                    sm.MethodResultModel(
                        method=res.method,
                        ok=False,
                        error=res.error.name,
                        error_detail=str(res.error),
                    )
                )
        return sm.HurstResponse(results=out, report=table1_report(series, config))

    @app.post("/synth", response_model=sm.TraceResponse)
    def synth(req: sm.SynthRequest) -> sm.TraceResponse:
        spec = FgnSpec(h=req.h, n=req.n, sigma=req.sigma, seed=req.seed)
        if req.delay is None:
            out = generate_fgn(spec)
        else:
            out = generate_delay_trace(
                spec, mu=req.delay.mu, sigma_d=req.delay.sigma_d, tau_max=req.delay.tau_max
            )
        return sm.TraceResponse(values=out.values.tolist(), dt=out.dt)

    @app.post("/psd", response_model=sm.PsdResponse)
    def psd(req: sm.PsdRequest) -> sm.PsdResponse:
        series = _series(req)
        if req.method == "periodogram":
            spec = periodogram(series)
        elif req.method == "welch":
            spec = welch_psd(series, WelchConfig(**req.welch.model_dump()))
        else:
            raise AnalysisError(f"unknown psd method {req.method!r}")
        return sm.PsdResponse(
            frequencies=spec.frequencies.tolist(), power=spec.power.tolist()
        )

    @app.post("/smooth", response_model=sm.TraceResponse)
    def smooth(req: sm.SmoothRequest) -> sm.TraceResponse:
        series = _series(req)
        out = _smooth_one(series, req.method, req.ma, req.savgol, req.kernel, req.valid_only)
        return sm.TraceResponse(values=out.values.tolist(), dt=out.dt)

    @app.post("/simulate", response_model=sm.SimulateResponse)
    def run_simulation(req: sm.SimulateRequest) -> sm.SimulateResponse:
        params = ReactorParams(**req.params.model_dump())
        program = ReactivityProgram(**req.program.model_dump())
        transient = simulate(params, program, req.t_end, req.dt)
        if req.channel is None:
            return sm.SimulateResponse(
                t=transient.t.tolist(), p_clean=transient.p.tolist()
            )
        tick = req.channel.tick
        clean = tick_grid_power(transient, tick)
        n_ticks = clean.n
        if req.channel.delays is not None:
            delays = TimeSeries(np.asarray(req.channel.delays, dtype=float), dt=tick)
        elif req.channel.delay_spec is not None:
            ds = req.channel.delay_spec
            delays = generate_delay_trace(
                FgnSpec(h=ds.h, n=n_ticks, sigma=1.0, seed=ds.seed),
                mu=ds.mu,
                sigma_d=ds.sigma_d,
                tau_max=ds.tau_max,
            )
        else:
            raise AnalysisError("channel requires either delays or delay_spec")
        measured = measure_through_channel(transient, ChannelConfig(delays, tick=tick))
        smoothed = None
        if req.smoother is not None:
            smoothed = _smooth_one(
                measured, req.smoother.method, req.smoother.ma, req.smoother.savgol,
                req.smoother.kernel,
            ).values.tolist()
        tk = np.arange(n_ticks) * tick
        return sm.SimulateResponse(
            t=tk.tolist(),
            p_clean=clean.values.tolist(),
            p_measured=measured.values.tolist(),
            p_smoothed=smoothed,
        )

    @app.post("/benchmark", response_model=sm.BenchmarkResponse)
    def benchmark(req: sm.BenchmarkRequest) -> sm.BenchmarkResponse:
        scenario = Scenario(
            params=ReactorParams(**req.scenario.params.model_dump()),
            program=ReactivityProgram(**req.scenario.program.model_dump()),
            t_end=req.scenario.t_end,
            dt=req.scenario.dt,
            tick=req.scenario.tick,
            mu=req.scenario.mu,
            sigma_d=req.scenario.sigma_d,
            tau_max=req.scenario.tau_max,
        )
        plan = BenchmarkPlan(
            alphas=tuple(req.alphas),
            seeds=req.seeds,
            seed_base=req.seed_base,
            smoothers=tuple(req.smoothers),
            ma_config=_ma_config(req.ma),
            savgol_config=_sg_config(req.savgol),
            kernel_bandwidths=tuple(req.kernel_bandwidths),
            scenario=scenario,
        )
        result = run_benchmark(plan, workers=req.workers)
        return sm.BenchmarkResponse(
            records=[
                sm.BenchmarkRecordModel(
                    smoother=r.smoother, alpha=r.alpha, seed=r.seed, mse=r.mse
                )
                for r in result.records
            ],
            aggregates=[
                sm.BenchmarkAggregateModel(
                    smoother=g.smoother,
                    alpha=g.alpha,
                    mean_mse=g.mean_mse,
                    std_mse=g.std_mse,
                )
                for g in result.aggregates
            ],
            findings=list(result.findings),
        )

    return app


app = create_app()
