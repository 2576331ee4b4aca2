"""Point-kinetics reactor model with a delayed measurement channel.

One delayed-neutron group:

    dP/dt = ((rho(t) - beta) / l) P + lambda C
    dC/dt = (beta / l) P - lambda C

integrated with fixed-step RK4 from the critical equilibrium P = 1,
C = beta / (l lambda).  Fixed steps keep the measurement-channel tick
alignment and reproducibility exact; the stiffness of the prompt mode is
handled by the dt <= 10 l guard.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import NonPositiveState, StepTooLarge, TraceTooShort
from .series import TimeSeries

PROGRAM_KINDS = ("constant", "step", "ramp")


@dataclass(frozen=True)
class ReactorParams:
    """Generic thermal-reactor constants; all acceptance bands assume these."""

    beta: float = 0.0065
    lam: float = 0.08
    gen_time: float = 1e-4

    def __post_init__(self):
        if not (0.0 < self.beta < 1.0):
            raise ValueError("beta must lie in (0, 1)")
        if not (self.lam > 0):
            raise ValueError("lam must be positive")
        if not (self.gen_time > 0):
            raise ValueError("gen_time must be positive")


@dataclass(frozen=True)
class ReactorState:
    p: float
    c: float
    t: float


@dataclass(frozen=True)
class ReactivityProgram:
    """Piecewise reactivity rho(t).

    step: rho0 before t_event, rho1 from t_event on.
    ramp: linear from rho0 at t = 0 to rho1 at t_event, constant after.
    constant: rho0 throughout.
    """

    kind: str = "step"
    rho0: float = 0.0
    rho1: float = 0.0
    t_event: float = 0.0

    def __post_init__(self):
        if self.kind not in PROGRAM_KINDS:
            raise ValueError(f"kind must be one of {PROGRAM_KINDS}")
        if self.t_event < 0:
            raise ValueError("t_event must be non-negative")
        if self.kind == "ramp" and self.t_event == 0.0:
            raise ValueError("ramp requires a positive t_event")

    def rho(self, t: float) -> float:
        if self.kind == "constant":
            return self.rho0
        if self.kind == "step":
            return self.rho1 if t >= self.t_event else self.rho0
        frac = min(t / self.t_event, 1.0)
        return self.rho0 + (self.rho1 - self.rho0) * frac

    def max_abs_rho(self) -> float:
        if self.kind == "constant":
            return abs(self.rho0)
        return max(abs(self.rho0), abs(self.rho1))


class Transient:
    """Integrator output: state arrays plus sequence access to ReactorState."""

    def __init__(self, t: np.ndarray, p: np.ndarray, c: np.ndarray):
        self.t = t
        self.p = p
        self.c = c

    def __len__(self) -> int:
        return self.t.size

    def __getitem__(self, i: int) -> ReactorState:
        return ReactorState(p=float(self.p[i]), c=float(self.c[i]), t=float(self.t[i]))

    @property
    def t_end(self) -> float:
        return float(self.t[-1])


def simulate(
    params: ReactorParams,
    program: ReactivityProgram,
    t_end: float,
    dt: float,
) -> Transient:
    """Integrate the kinetics from equilibrium over [0, t_end] with step dt."""
    if not (t_end > 0):
        raise ValueError("t_end must be positive")
    if not (dt > 0):
        raise ValueError("dt must be positive")
    if dt > 10.0 * params.gen_time:
        raise StepTooLarge(
            f"dt {dt} exceeds stability guard {10.0 * params.gen_time} (10 generation times)"
        )
    if program.max_abs_rho() >= params.beta:
        warnings.warn(
            "reactivity reaches or exceeds beta: super-prompt-critical transient",
            stacklevel=2,
        )

    beta, lam, gen = params.beta, params.lam, params.gen_time
    n_steps = int(round(t_end / dt))
    t = np.arange(n_steps + 1) * dt
    p = np.empty(n_steps + 1)
    c = np.empty(n_steps + 1)
    p[0] = 1.0
    c[0] = beta / (gen * lam)

    rho = program.rho
    pk, ck = p[0], c[0]
    for i in range(n_steps):
        tk = i * dt
        r1 = rho(tk)
        r2 = rho(tk + 0.5 * dt)
        r4 = rho(tk + dt)

        dp1 = ((r1 - beta) / gen) * pk + lam * ck
        dc1 = (beta / gen) * pk - lam * ck
        p2, c2 = pk + 0.5 * dt * dp1, ck + 0.5 * dt * dc1
        dp2 = ((r2 - beta) / gen) * p2 + lam * c2
        dc2 = (beta / gen) * p2 - lam * c2
        p3, c3 = pk + 0.5 * dt * dp2, ck + 0.5 * dt * dc2
        dp3 = ((r2 - beta) / gen) * p3 + lam * c3
        dc3 = (beta / gen) * p3 - lam * c3
        p4, c4 = pk + dt * dp3, ck + dt * dc3
        dp4 = ((r4 - beta) / gen) * p4 + lam * c4
        dc4 = (beta / gen) * p4 - lam * c4

        pk = pk + dt / 6.0 * (dp1 + 2.0 * dp2 + 2.0 * dp3 + dp4)
        ck = ck + dt / 6.0 * (dc1 + 2.0 * dc2 + 2.0 * dc3 + dc4)
        if pk <= 0.0 or ck <= 0.0:
            raise NonPositiveState(
                f"non-physical state P={pk:.3e}, C={ck:.3e} at t={tk + dt:.6f}"
            )
        p[i + 1] = pk
        c[i + 1] = ck
    return Transient(t, p, c)


@dataclass(frozen=True)
class ChannelConfig:
    """Measurement channel: sampling tick plus a per-tick delay trace (seconds)."""

    delay_trace: TimeSeries
    tick: float = 0.01

    def __post_init__(self):
        if not (self.tick > 0):
            raise ValueError("tick must be positive")
        if np.any(self.delay_trace.values < 0):
            raise ValueError("delays must be non-negative")


def measure_through_channel(states: Transient, channel: ChannelConfig) -> TimeSeries:
    """Stale-sample measurement: y_k = P(max(0, t_k - tau_k)).

    Power between integrator points is linearly interpolated; ticks run
    0, tick, ..., floor(t_end / tick) * tick.
    """
    n_ticks = int(np.floor(states.t_end / channel.tick + 1e-9)) + 1
    delays = channel.delay_trace.values
    if delays.size < n_ticks:
        raise TraceTooShort(
            f"delay trace has {delays.size} samples, need {n_ticks} ticks"
        )
    tk = np.arange(n_ticks) * channel.tick
    stale = np.maximum(0.0, tk - delays[:n_ticks])
    y = np.interp(stale, states.t, states.p)
    return TimeSeries(y, dt=channel.tick)


def tick_grid_power(states: Transient, tick: float) -> TimeSeries:
    """Clean power sampled on the tick grid (the zero-delay channel)."""
    n_ticks = int(np.floor(states.t_end / tick + 1e-9)) + 1
    tk = np.arange(n_ticks) * tick
    return TimeSeries(np.interp(tk, states.t, states.p), dt=tick)
