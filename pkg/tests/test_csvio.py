import numpy as np
import pytest

from fracdelay.benchmark import BenchmarkAggregate, BenchmarkRecord
from fracdelay.csvio import (
    read_trace,
    write_benchmark_aggregates,
    write_benchmark_records,
    write_columns,
    write_spectrum,
    write_trace,
)
from fracdelay.errors import MalformedCsv
from fracdelay.series import TimeSeries
from fracdelay.spectral import Spectrum


class TestTraceRoundTrip:
    def test_value_only(self, tmp_path):
        path = tmp_path / "a.csv"
        series = TimeSeries(np.array([1.5, -2.25, 3.125e-7]))
        write_trace(path, series)
        back = read_trace(path)
        assert np.array_equal(back.values, series.values)
        assert back.dt == 1.0

    def test_with_time_column(self, tmp_path):
        path = tmp_path / "b.csv"
        series = TimeSeries(np.array([1.0, 2.0, 3.0]), dt=0.25)
        write_trace(path, series, with_time=True)
        back = read_trace(path)
        assert np.array_equal(back.values, series.values)
        assert back.dt == pytest.approx(0.25)

    def test_bit_exact_floats(self, tmp_path):
        rng = np.random.default_rng(0)
        series = TimeSeries(rng.standard_normal(100) * 1e-7)
        path = tmp_path / "c.csv"
        write_trace(path, series)
        assert np.array_equal(read_trace(path).values, series.values)

    def test_lf_line_endings(self, tmp_path):
        path = tmp_path / "d.csv"
        write_trace(path, TimeSeries(np.array([1.0, 2.0])))
        raw = path.read_bytes()
        assert b"\r" not in raw
        assert raw.endswith(b"\n")


class TestMalformed:
    def test_bad_header(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("foo\n1.0\n")
        with pytest.raises(MalformedCsv) as err:
            read_trace(path)
        assert err.value.line == 1

    def test_bad_number_reports_line(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("value\n1.0\nbogus\n")
        with pytest.raises(MalformedCsv) as err:
            read_trace(path)
        assert err.value.line == 3

    def test_wrong_column_count(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("t,value\n0.0,1.0\n0.1\n")
        with pytest.raises(MalformedCsv) as err:
            read_trace(path)
        assert err.value.line == 3

    def test_non_finite_rejected(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("value\nnan\n")
        with pytest.raises(MalformedCsv) as err:
            read_trace(path)
        assert err.value.line == 2

    def test_empty_file(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("")
        with pytest.raises(MalformedCsv):
            read_trace(path)

    def test_header_only(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("value\n")
        with pytest.raises(MalformedCsv):
            read_trace(path)


class TestOtherWriters:
    def test_spectrum(self, tmp_path):
        spec = Spectrum(np.array([0.1, 0.2]), np.array([1.0, 2.0]))
        path = tmp_path / "s.csv"
        write_spectrum(path, spec)
        lines = path.read_text().splitlines()
        assert lines[0] == "freq_rad_per_sample,power"
        assert len(lines) == 3

    def test_spectrum_cycles(self, tmp_path):
        spec = Spectrum(np.array([2 * np.pi * 0.1]), np.array([1.0]))
        path = tmp_path / "s.csv"
        write_spectrum(path, spec, cycles=True)
        lines = path.read_text().splitlines()
        assert lines[0] == "freq_cycles_per_sample,power"
        assert float(lines[1].split(",")[0]) == pytest.approx(0.1)

    def test_columns(self, tmp_path):
        path = tmp_path / "t.csv"
        write_columns(path, ["t", "p"], [np.array([0.0, 1.0]), np.array([1.0, 1.5])])
        lines = path.read_text().splitlines()
        assert lines[0] == "t,p"
        assert lines[2] == "1.0,1.5"

    def test_benchmark_files(self, tmp_path):
        records = [BenchmarkRecord("ma", 0.5, 0, 1e-3)]
        aggregates = [BenchmarkAggregate("ma", 0.5, 1e-3, 0.0)]
        rp = tmp_path / "r.csv"
        ap = tmp_path / "a.csv"
        write_benchmark_records(rp, records)
        write_benchmark_aggregates(ap, aggregates)
        assert rp.read_text().splitlines()[0] == "smoother,alpha,seed,mse"
        assert ap.read_text().splitlines()[0] == "smoother,alpha,mean_mse,std_mse"
