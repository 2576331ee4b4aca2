"""CSV formats shared project-wide.

Trace files carry one header line, either ``value`` or ``t,value``;
comma separator, decimal point, UTF-8, LF line endings.  Floats are
written with repr so files round-trip bit-exactly.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .benchmark import BenchmarkAggregate, BenchmarkRecord
from .errors import MalformedCsv
from .series import TimeSeries
from .spectral import Spectrum


def _fmt(x: float) -> str:
    return repr(float(x))


def read_trace(path: str | Path) -> TimeSeries:
    """Parse a trace CSV; reports the line number of the first defect."""
    path = Path(path)
    with open(path, encoding="utf-8-sig", newline="") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise MalformedCsv("empty file", line=1)
    header = [c.strip().lower() for c in lines[0].split(",")]
    if header == ["value"]:
        has_time = False
    elif header == ["t", "value"]:
        has_time = True
    else:
        raise MalformedCsv(
            f"expected header 'value' or 't,value', got {lines[0]!r}", line=1
        )
    times: list[float] = []
    values: list[float] = []
    for lineno, raw in enumerate(lines[1:], start=2):
        if raw.strip() == "":
            continue
        cells = raw.split(",")
        if len(cells) != len(header):
            raise MalformedCsv(
                f"expected {len(header)} columns, got {len(cells)}", line=lineno
            )
        try:
            row = [float(c) for c in cells]
        except ValueError:
            raise MalformedCsv(f"could not parse {raw!r} as numbers", line=lineno)
        if any(not math.isfinite(v) for v in row):
            raise MalformedCsv("non-finite value", line=lineno)
        if has_time:
            times.append(row[0])
            values.append(row[1])
        else:
            values.append(row[0])
    if not values:
        raise MalformedCsv("no data rows", line=len(lines))
    dt = 1.0
    if has_time and len(times) >= 2:
        dt = times[1] - times[0]
        if dt <= 0:
            raise MalformedCsv("time column must be increasing", line=3)
    return TimeSeries(np.asarray(values), dt=dt)


def write_trace(path: str | Path, series: TimeSeries, with_time: bool = False) -> None:
    rows = []
    if with_time:
        rows.append("t,value")
        for i, v in enumerate(series.values):
            rows.append(f"{_fmt(i * series.dt)},{_fmt(v)}")
    else:
        rows.append("value")
        rows.extend(_fmt(v) for v in series.values)
    _write_lines(path, rows)


def write_spectrum(path: str | Path, spectrum: Spectrum, cycles: bool = False) -> None:
    unit = "cycles_per_sample" if cycles else "rad_per_sample"
    scale = 1.0 / (2.0 * math.pi) if cycles else 1.0
    rows = [f"freq_{unit},power"]
    rows.extend(
        f"{_fmt(f * scale)},{_fmt(p)}"
        for f, p in zip(spectrum.frequencies, spectrum.power)
    )
    _write_lines(path, rows)


def write_columns(path: str | Path, header: Sequence[str], columns: Sequence[np.ndarray]) -> None:
    """Generic aligned-column CSV (used for simulate output)."""
    lengths = {len(c) for c in columns}
    if len(lengths) != 1:
        raise ValueError("all columns must have equal length")
    rows = [",".join(header)]
    for i in range(lengths.pop()):
        rows.append(",".join(_fmt(col[i]) for col in columns))
    _write_lines(path, rows)


def write_benchmark_records(path: str | Path, records: Iterable[BenchmarkRecord]) -> None:
    rows = ["smoother,alpha,seed,mse"]
    rows.extend(
        f"{r.smoother},{_fmt(r.alpha)},{r.seed},{_fmt(r.mse)}" for r in records
    )
    _write_lines(path, rows)


def write_benchmark_aggregates(path: str | Path, aggregates: Iterable[BenchmarkAggregate]) -> None:
    rows = ["smoother,alpha,mean_mse,std_mse"]
    rows.extend(
        f"{g.smoother},{_fmt(g.alpha)},{_fmt(g.mean_mse)},{_fmt(g.std_mse)}"
        for g in aggregates
    )
    _write_lines(path, rows)


def _write_lines(path: str | Path, rows: list[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(rows) + "\n")
