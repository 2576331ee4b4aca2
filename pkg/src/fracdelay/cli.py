"""Command-line interface.

The CLI is a thin client of the HTTP service: it parses local CSV files,
sends requests (in-process by default, to ``--server URL`` otherwise) and
writes the responses back as CSV.

Exit codes: 0 success, 1 usage error (bad flags, missing file), 2 data or
numeric error (the stable error name appears in the message).

Every subcommand accepts ``--config FILE`` with one ``key=value`` pair per
line (keys are the long option names with dashes or underscores);
explicit flags override file values.  All randomness flows from explicit
``--seed`` flags.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .client import ServiceClient, ServiceError
from .csvio import (
    read_trace,
    write_benchmark_aggregates,
    write_benchmark_records,
    write_columns,
    write_spectrum,
    write_trace,
)
from .benchmark import BenchmarkAggregate, BenchmarkRecord
from .errors import AnalysisError
from .series import TimeSeries
from .spectral import Spectrum

import numpy as np


def _apply_config(ctx: click.Context, _param, value):
    """Route key=value file entries through click's default map.

    Explicit flags keep precedence automatically; file values only fill
    parameters the user did not pass.
    """
    if value is None:
        return None
    path = Path(value)
    if not path.exists():
        raise click.UsageError(f"config file not found: {value}")
    overrides = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise click.UsageError(f"{value}:{lineno}: expected key=value, got {raw!r}")
        key, _, val = line.partition("=")
        overrides[key.strip().replace("-", "_")] = val.strip()
    ctx.default_map = {**(ctx.default_map or {}), **overrides}
    return value


_config_option = click.option(
    "--config",
    type=click.Path(),
    callback=_apply_config,
    expose_value=False,
    is_eager=True,
    help="key=value file supplying defaults; flags override.",
)


def _client(ctx: click.Context) -> ServiceClient:
    return ServiceClient(server=ctx.obj.get("server"))


def _load_trace(path: str) -> TimeSeries:
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(path)
    return read_trace(p)


@click.group()
@click.option("--server", default=None, metavar="URL",
              help="Remote service URL; default runs the service in-process.")
@click.version_option(package_name="fracdelay")
@click.pass_context
def cli(ctx, server):
    """Self-similar delay analysis toolkit."""
    ctx.ensure_object(dict)
    ctx.obj["server"] = server


@cli.command()
@click.argument("input_path", metavar="TRACE_CSV")
@click.option("--running-variance", "runvar_path", type=click.Path(), default=None,
              help="Also write the running variance as a trace CSV.")
@_config_option
@click.pass_context
def stats(ctx, input_path, runvar_path):
    """Print mean, variance, skewness and kurtosis of a trace."""
    series = _load_trace(input_path)
    out = _client(ctx).post("/stats", {"values": series.values.tolist(), "dt": series.dt})
    click.echo(f"n              {out['n']}")
    click.echo(f"mean           {out['mean']:.6g}")
    click.echo(f"variance       {out['variance']:.6g}")
    click.echo(f"skewness       {out['skewness']:.6g}")
    click.echo(f"kurtosis       {out['kurtosis_raw']:.6g}")
    click.echo(f"excess_kurt    {out['kurtosis_excess']:.6g}")
    if runvar_path:
        from .series import running_variance

        write_trace(runvar_path, running_variance(series))
        click.echo(f"running variance written to {runvar_path}")


@cli.command()
@click.argument("input_path", metavar="TRACE_CSV")
@click.option("--method", default="all",
              help="all or one of: absval aggvar boxper diffvar higuchi peng per rs.")
@click.option("--min-block", default=8, show_default=True)
@click.option("--max-block-fraction", default=0.25, show_default=True)
@click.option("--num-scales", default=20, show_default=True)
@click.option("--low-freq-fraction", default=0.1, show_default=True)
@click.option("-o", "--output", "output_path", type=click.Path(), default=None,
              help="Also write the table as CSV (method,h,alpha,fractal_dim,r_squared).")
@_config_option
@click.pass_context
def hurst(ctx, input_path, method, min_block, max_block_fraction, num_scales,
          low_freq_fraction, output_path):
    """Estimate the Hurst parameter and print the estimator table."""
    series = _load_trace(input_path)
    payload = {
        "values": series.values.tolist(),
        "dt": series.dt,
        "methods": None if method == "all" else [method],
        "config": {
            "min_block": min_block,
            "max_block_fraction": max_block_fraction,
            "num_scales": num_scales,
            "low_freq_fraction": low_freq_fraction,
        },
    }
    out = _client(ctx).post("/hurst", payload)
    if method == "all":
        click.echo(out["report"])
    else:
        res = out["results"][0]
        if not res["ok"]:
            raise ServiceError(res["error"], res["error_detail"], status=422)
        est = res["estimate"]
        click.echo(
            f"{est['method']}: h={est['h']:.4f} alpha={est['alpha']:.4f} "
            f"D={est['fractal_dim']:.4f} r2={est['fit']['r_squared']:.4f}"
        )
    if output_path:
        rows = ["method,h,alpha,fractal_dim,r_squared"]
        for res in out["results"]:
            if res["ok"]:
                est = res["estimate"]
                rows.append(
                    f"{res['method']},{est['h']!r},{est['alpha']!r},"
                    f"{est['fractal_dim']!r},{est['fit']['r_squared']!r}"
                )
            else:
                rows.append(f"{res['method']},{res['error']},,,")
        Path(output_path).write_text("\n".join(rows) + "\n", encoding="utf-8")
        click.echo(f"table written to {output_path}")


@cli.command()
@click.option("--h", "hurst_h", type=float, required=True, help="Hurst exponent in (0,1).")
@click.option("--n", type=int, required=True, help="Number of samples.")
@click.option("--sigma", default=1.0, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--delay-mu", type=float, default=None,
              help="Emit a delay trace: clamp(mu + sigma-d * fGn, 0, tau-max).")
@click.option("--delay-sigma", type=float, default=3.0, show_default=True)
@click.option("--tau-max", type=float, default=50.0, show_default=True)
@click.option("-o", "--output", "output_path", type=click.Path(), required=True)
@_config_option
@click.pass_context
def synth(ctx, hurst_h, n, sigma, seed, delay_mu, delay_sigma, tau_max, output_path):
    """Generate fractional Gaussian noise (or a clamped delay trace)."""
    payload = {"h": hurst_h, "n": n, "sigma": sigma, "seed": seed}
    if delay_mu is not None:
        payload["delay"] = {"mu": delay_mu, "sigma_d": delay_sigma, "tau_max": tau_max}
    out = _client(ctx).post("/synth", payload)
    write_trace(output_path, TimeSeries(np.asarray(out["values"]), dt=out["dt"]))
    click.echo(f"wrote {n} samples to {output_path}")


@cli.command()
@click.argument("input_path", metavar="TRACE_CSV")
@click.option("--method", default="welch", type=click.Choice(["welch", "periodogram"]),
              show_default=True)
@click.option("--segment-length", default=256, show_default=True)
@click.option("--overlap", default=0.5, show_default=True)
@click.option("--window", default="hann", type=click.Choice(["hann", "rectangular"]),
              show_default=True)
@click.option("--units", default="rad", type=click.Choice(["rad", "cycles"]),
              show_default=True, help="Frequency unit for the output CSV.")
@click.option("-o", "--output", "output_path", type=click.Path(), required=True)
@_config_option
@click.pass_context
def psd(ctx, input_path, method, segment_length, overlap, window, units, output_path):
    """Power spectral density (Welch or raw periodogram) to CSV."""
    series = _load_trace(input_path)
    payload = {
        "values": series.values.tolist(),
        "dt": series.dt,
        "method": method,
        "welch": {
            "segment_length": segment_length,
            "overlap_fraction": overlap,
            "window": window,
        },
    }
    out = _client(ctx).post("/psd", payload)
    spectrum = Spectrum(np.asarray(out["frequencies"]), np.asarray(out["power"]))
    write_spectrum(output_path, spectrum, cycles=(units == "cycles"))
    click.echo(f"{len(out['frequencies'])} bins written to {output_path}")


@cli.command()
@click.argument("input_path", metavar="TRACE_CSV")
@click.option("--method", required=True, type=click.Choice(["ma", "savgol", "kernel"]))
@click.option("--window", default=11, show_default=True, help="Moving-average window (odd).")
@click.option("--n-left", default=5, show_default=True)
@click.option("--n-right", default=5, show_default=True)
@click.option("--degree", default=3, show_default=True)
@click.option("--bandwidth", default=4.0, show_default=True)
@click.option("--valid-only", is_flag=True, default=False,
              help="Emit only full-window samples (length n - window + 1).")
@click.option("-o", "--output", "output_path", type=click.Path(), required=True)
@_config_option
@click.pass_context
def smooth(ctx, input_path, method, window, n_left, n_right, degree, bandwidth,
           valid_only, output_path):
    """Smooth a trace with the selected filter."""
    series = _load_trace(input_path)
    payload = {
        "values": series.values.tolist(),
        "dt": series.dt,
        "method": method,
        "ma": {"window": window},
        "savgol": {"n_left": n_left, "n_right": n_right, "degree": degree},
        "kernel": {"bandwidth": bandwidth},
        "valid_only": valid_only,
    }
    out = _client(ctx).post("/smooth", payload)
    write_trace(output_path, TimeSeries(np.asarray(out["values"]), dt=out["dt"]))
    click.echo(f"smoothed trace written to {output_path}")


@cli.command()
@click.option("--beta", default=0.0065, show_default=True)
@click.option("--lambda", "lam", default=0.08, show_default=True,
              help="Precursor decay constant (1/s).")
@click.option("--gen-time", default=1e-4, show_default=True)
@click.option("--kind", default="step", type=click.Choice(["constant", "step", "ramp"]),
              show_default=True)
@click.option("--rho0", default=0.0, show_default=True)
@click.option("--rho1", default=0.0022, show_default=True)
@click.option("--t-event", default=0.0, show_default=True)
@click.option("--t-end", default=10.0, show_default=True)
@click.option("--dt", default=1e-4, show_default=True)
@click.option("--tick", default=0.01, show_default=True)
@click.option("--delays", "delays_path", type=click.Path(), default=None,
              help="Delay trace CSV (seconds per tick); enables the channel.")
@click.option("--delay-h", type=float, default=None,
              help="Synthesize channel delays from fGn with this Hurst exponent.")
@click.option("--delay-seed", type=int, default=0, show_default=True)
@click.option("--delay-mu", default=0.127, show_default=True)
@click.option("--delay-sigma", default=0.03, show_default=True)
@click.option("--tau-max", default=0.5, show_default=True)
@click.option("--smooth-method", "smooth_method", default=None,
              type=click.Choice(["ma", "savgol", "kernel"]),
              help="Add a p_smoothed column.")
@click.option("--window", default=11, show_default=True)
@click.option("--n-left", default=5, show_default=True)
@click.option("--n-right", default=5, show_default=True)
@click.option("--degree", default=3, show_default=True)
@click.option("--bandwidth", default=4.0, show_default=True)
@click.option("-o", "--output", "output_path", type=click.Path(), required=True)
@_config_option
@click.pass_context
def simulate(ctx, beta, lam, gen_time, kind, rho0, rho1, t_event, t_end, dt, tick,
             delays_path, delay_h, delay_seed, delay_mu, delay_sigma, tau_max,
             smooth_method, window, n_left, n_right, degree, bandwidth, output_path):
    """Point-kinetics transient, optionally measured through a delay channel."""
    payload = {
        "params": {"beta": beta, "lam": lam, "gen_time": gen_time},
        "program": {"kind": kind, "rho0": rho0, "rho1": rho1, "t_event": t_event},
        "t_end": t_end,
        "dt": dt,
    }
    if delays_path is not None:
        delays = _load_trace(delays_path)
        payload["channel"] = {"tick": tick, "delays": delays.values.tolist()}
    elif delay_h is not None:
        payload["channel"] = {
            "tick": tick,
            "delay_spec": {
                "h": delay_h,
                "seed": delay_seed,
                "mu": delay_mu,
                "sigma_d": delay_sigma,
                "tau_max": tau_max,
            },
        }
    if smooth_method is not None:
        if "channel" not in payload:
            raise click.UsageError("--smooth-method requires a delay channel")
        payload["smoother"] = {
            "method": smooth_method,
            "ma": {"window": window},
            "savgol": {"n_left": n_left, "n_right": n_right, "degree": degree},
            "kernel": {"bandwidth": bandwidth},
        }
    out = _client(ctx).post("/simulate", payload)
    header = ["t", "p_clean"]
    cols = [np.asarray(out["t"]), np.asarray(out["p_clean"])]
    if out.get("p_measured") is not None:
        header.append("p_measured")
        cols.append(np.asarray(out["p_measured"]))
    if out.get("p_smoothed") is not None:
        header.append("p_smoothed")
        cols.append(np.asarray(out["p_smoothed"]))
    write_columns(output_path, header, cols)
    click.echo(f"{len(cols[0])} rows written to {output_path}")


@cli.command()
@click.option("--alphas", default="0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9",
              show_default=True, help="Comma-separated fractional orders in (0,1).")
@click.option("--seeds", default=20, show_default=True)
@click.option("--seed-base", default=0, show_default=True)
@click.option("--smoothers", default="ma,savgol,kernel", show_default=True)
@click.option("--bandwidths", default="2,4,8", show_default=True,
              help="Kernel bandwidth sweep.")
@click.option("--mu", default=0.127, show_default=True)
@click.option("--sigma-d", default=0.03, show_default=True)
@click.option("--tau-max", default=0.5, show_default=True)
@click.option("--tick", default=0.01, show_default=True)
@click.option("--t-end", default=10.0, show_default=True)
@click.option("--dt", default=1e-4, show_default=True)
@click.option("--rho1", default=0.0022, show_default=True)
@click.option("--workers", default=1, show_default=True)
@click.option("--out-records", "records_path", type=click.Path(), required=True)
@click.option("--out-aggregate", "aggregate_path", type=click.Path(), required=True)
@_config_option
@click.pass_context
def benchmark(ctx, alphas, seeds, seed_base, smoothers, bandwidths, mu, sigma_d,
              tau_max, tick, t_end, dt, rho1, workers, records_path, aggregate_path):
    """Sweep smoother MSE against the fractional order of the delay process."""
    payload = {
        "alphas": [float(a) for a in alphas.split(",") if a.strip()],
        "seeds": seeds,
        "seed_base": seed_base,
        "smoothers": [s.strip() for s in smoothers.split(",") if s.strip()],
        "kernel_bandwidths": [float(b) for b in bandwidths.split(",") if b.strip()],
        "scenario": {
            "program": {"kind": "step", "rho0": 0.0, "rho1": rho1, "t_event": 0.0},
            "t_end": t_end,
            "dt": dt,
            "tick": tick,
            "mu": mu,
            "sigma_d": sigma_d,
            "tau_max": tau_max,
        },
        "workers": workers,
    }
    out = _client(ctx).post("/benchmark", payload)
    write_benchmark_records(
        records_path,
        [BenchmarkRecord(r["smoother"], r["alpha"], r["seed"], r["mse"])
         for r in out["records"]],
    )
    write_benchmark_aggregates(
        aggregate_path,
        [BenchmarkAggregate(g["smoother"], g["alpha"], g["mean_mse"], g["std_mse"])
         for g in out["aggregates"]],
    )
    for line in out["findings"]:
        click.echo(line)
    click.echo(f"records -> {records_path}; aggregate -> {aggregate_path}")


def main(argv: list[str] | None = None) -> int:
    """Entry point with the documented exit-code contract."""
    try:
        cli.main(args=argv, standalone_mode=False, obj={})
        return 0
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show(file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        click.echo(f"FileNotFound: {exc}", err=True)
        return 1
    except (AnalysisError, ServiceError) as exc:
        name = exc.error if isinstance(exc, ServiceError) else exc.name
        detail = exc.detail if isinstance(exc, ServiceError) else str(exc)
        click.echo(f"{name}: {detail}", err=True)
        return 2


if __name__ == "__main__":
    sys.exit(main())
