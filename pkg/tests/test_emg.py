import math

import numpy as np
import pytest

from mrgrip.emg import (
    AnalysisWindow,
    EmgTrace,
    bandpass,
    iemg,
    linear_envelope,
    mdf,
    reduction_percent,
    rms_windowed,
    segment,
    synth_emg,
)

RATE = 2000.0


def sine_trace(freq, amplitude=1.0, duration=2.0, rate=RATE, phase=0.0, inclusive=False):
    n = int(round(duration * rate)) + (1 if inclusive else 0)
    t = np.arange(n) / rate
    return EmgTrace(amplitude * np.sin(2 * np.pi * freq * t + phase), rate, f"sine{freq:g}")


class TestTrace:
    def test_validation(self):
        with pytest.raises(ValueError, match="rate"):
            EmgTrace(np.ones(100), 800.0)
        with pytest.raises(ValueError, match="nonempty"):
            EmgTrace(np.array([]), RATE)
        with pytest.raises(ValueError, match="finite"):
            EmgTrace(np.array([1.0, np.nan]), RATE)

    def test_duration(self):
        trace = EmgTrace(np.zeros(4000), RATE)
        assert trace.duration == 2.0


class TestSegment:
    def test_full_span_is_identity(self):
        trace = sine_trace(100.0)
        out = segment(trace, 0.0, trace.duration)
        assert np.array_equal(out.samples, trace.samples)
        assert out.rate == trace.rate and out.label == trace.label

    def test_sample_count(self):
        trace = EmgTrace(np.arange(5000, dtype=float), 1000.0)
        out = segment(trace, 1.0, 2.0)
        assert out.samples.size == 1000
        assert out.samples[0] == 1000.0  # half-open: includes t0, excludes t1

    def test_beyond_duration(self):
        trace = sine_trace(100.0, duration=1.0)
        with pytest.raises(ValueError):
            segment(trace, 0.5, 1.5)

    def test_empty_interval(self):
        trace = EmgTrace(np.arange(5000, dtype=float), 1000.0)
        with pytest.raises(ValueError):
            segment(trace, 0.00011, 0.00019)


class TestBandpass:
    def test_passband_center_preserved(self):
        trace = sine_trace(250.0, duration=4.0)
        out = bandpass(trace)
        core = out.samples[out.samples.size // 4 : -out.samples.size // 4]
        assert np.max(np.abs(core)) == pytest.approx(1.0, rel=0.01)

    def test_low_frequency_rejected(self):
        trace = sine_trace(10.0, duration=4.0)
        out = bandpass(trace)
        core = out.samples[out.samples.size // 4 : -out.samples.size // 4]
        attenuation_db = 20 * np.log10(np.max(np.abs(core)) / 1.0)
        assert attenuation_db <= -40.0

    def test_zero_in_zero_out(self):
        trace = EmgTrace(np.zeros(4000), RATE)
        out = bandpass(trace)
        assert np.allclose(out.samples, 0.0)

    def test_length_preserved(self):
        trace = sine_trace(200.0, duration=1.3)
        assert bandpass(trace).samples.size == trace.samples.size

    def test_idempotent_on_passband_tone(self):
        trace = sine_trace(250.0, duration=4.0)
        once = bandpass(trace)
        twice = bandpass(once)
        sl = slice(trace.samples.size // 4, -trace.samples.size // 4)
        a1 = np.max(np.abs(once.samples[sl]))
        a2 = np.max(np.abs(twice.samples[sl]))
        assert abs(a2 - a1) / a1 < 0.005

    def test_band_above_nyquist(self):
        trace = sine_trace(100.0, rate=1000.0)
        with pytest.raises(ValueError, match="Nyquist"):
            bandpass(trace, high=600.0)


class TestRms:
    def test_constant(self):
        trace = EmgTrace(np.full(4000, -3.0), RATE)
        _, values = rms_windowed(trace, AnalysisWindow(0.5, 0.5))
        assert np.allclose(values, 3.0)

    def test_integer_period_sine(self):
        # 0.1 s window = 10 full periods of 100 Hz
        trace = sine_trace(100.0, amplitude=2.0, phase=0.4)
        _, values = rms_windowed(trace, AnalysisWindow(0.1, 0.0))
        assert np.max(np.abs(values - 2.0 / math.sqrt(2.0))) < 1e-9

    def test_alternating(self):
        samples = np.tile([0.7, -0.7], 2000)
        trace = EmgTrace(samples, RATE)
        _, values = rms_windowed(trace, AnalysisWindow(0.25, 0.0))
        assert np.allclose(values, 0.7)

    def test_window_must_fit(self):
        trace = sine_trace(100.0, duration=0.3)
        with pytest.raises(ValueError, match="does not fit"):
            rms_windowed(trace, AnalysisWindow(0.5, 0.0))

    def test_window_centers(self):
        trace = EmgTrace(np.zeros(4000), RATE)
        times, _ = rms_windowed(trace, AnalysisWindow(0.5, 0.5))
        assert times[0] == pytest.approx((1000 - 1) / 2.0 / RATE)
        assert times[1] - times[0] == pytest.approx(0.25, rel=1e-9)


class TestIemg:
    def test_constant(self):
        trace = EmgTrace(np.full(2001, 3.0), RATE)  # spans exactly 1 s
        assert iemg(trace) == pytest.approx(3.0, rel=1e-12)

    def test_single_sine_period(self):
        trace = sine_trace(10.0, amplitude=2.0, duration=0.1, inclusive=True)
        expected = 2.0 * 2.0 / (math.pi * 10.0)
        assert iemg(trace) == pytest.approx(expected, rel=1e-3)

    def test_zero(self):
        assert iemg(EmgTrace(np.zeros(1000), RATE)) == 0.0

    def test_additive_over_segments(self):
        rng = np.random.default_rng(0)
        trace = EmgTrace(rng.standard_normal(8000), RATE)
        whole = iemg(trace)
        left = iemg(segment(trace, 0.0, 2.0))
        right = iemg(segment(trace, 2.0, 4.0))
        tol = np.max(np.abs(trace.samples)) / RATE  # one sample interval at the cut
        assert abs(whole - (left + right)) <= tol


class TestMdf:
    def test_pure_tone(self):
        trace = sine_trace(200.0, duration=2.0)
        win = AnalysisWindow(1.6, 0.0)  # 3200 samples, welch segments of 800
        bin_width = RATE / 800
        _, values = mdf(trace, win)
        assert np.all(np.abs(values - 200.0) <= bin_width)

    def test_two_equal_tones_split_evenly(self):
        n = 3200
        t = np.arange(n) / RATE
        x = np.sin(2 * np.pi * 150.0 * t) + np.sin(2 * np.pi * 350.0 * t + 0.7)
        trace = EmgTrace(x, RATE)
        _, values = mdf(trace, AnalysisWindow(1.6, 0.0))
        bin_width = RATE / 800
        assert values[0] == pytest.approx(250.0, abs=bin_width)

    def test_flat_band_noise(self):
        trace = synth_emg(4.0, RATE, seed=1)
        _, values = mdf(trace, AnalysisWindow(4.0, 0.0))
        assert values[0] == pytest.approx(250.0, rel=0.05)

    def test_window_too_short(self):
        trace = sine_trace(200.0)
        with pytest.raises(ValueError, match="256"):
            mdf(trace, AnalysisWindow(0.1, 0.0))

    def test_amplitude_invariant(self):
        rng = np.random.default_rng(2)
        trace = synth_emg(2.0, RATE, seed=3)
        win = AnalysisWindow(1.0, 0.0)
        _, base = mdf(trace, win)
        for _ in range(3):
            scale = float(rng.uniform(0.1, 50.0))
            scaled = EmgTrace(scale * trace.samples, RATE)
            _, got = mdf(scaled, win)
            assert np.allclose(got, base, rtol=1e-9)


class TestScaling:
    def test_rms_and_iemg_scale_linearly(self):
        rng = np.random.default_rng(4)
        trace = synth_emg(2.0, RATE, seed=5)
        win = AnalysisWindow(0.5, 0.5)
        _, rms_base = rms_windowed(trace, win)
        iemg_base = iemg(trace)
        for _ in range(3):
            a = float(rng.uniform(0.1, 20.0))
            scaled = EmgTrace(a * trace.samples, RATE)
            _, rms_got = rms_windowed(scaled, win)
            assert np.allclose(rms_got, a * rms_base, rtol=1e-12)
            assert iemg(scaled) == pytest.approx(a * iemg_base, rel=1e-12)


class TestReduction:
    def test_basic(self):
        assert reduction_percent(100.0, 25.0) == 75.0
        assert reduction_percent(5.0, 5.0) == 0.0

    def test_published_static_grip_average(self):
        per_muscle = [75.75, 86.04, 62.10]
        assert abs(np.mean(per_muscle) - 74.63) < 1e-12

    def test_invalid_baseline(self):
        with pytest.raises(ValueError):
            reduction_percent(0.0, 1.0)
        with pytest.raises(ValueError):
            reduction_percent(-1.0, 0.5)


class TestSynth:
    def test_zero_envelope(self):
        trace = synth_emg(1.0, RATE, envelope=0.0, seed=0)
        assert np.allclose(trace.samples, 0.0)

    def test_deterministic(self):
        a = synth_emg(1.0, RATE, seed=11)
        b = synth_emg(1.0, RATE, seed=11)
        assert np.array_equal(a.samples, b.samples)
        c = synth_emg(1.0, RATE, seed=12)
        assert not np.array_equal(a.samples, c.samples)

    def test_flat_spectrum_centers_on_band_middle(self):
        trace = synth_emg(4.0, RATE, seed=6)
        _, values = mdf(trace, AnalysisWindow(4.0, 0.0))
        assert values[0] == pytest.approx(250.0, rel=0.05)

    def test_unit_rms(self):
        trace = synth_emg(4.0, RATE, seed=7)
        assert np.sqrt(np.mean(trace.samples**2)) == pytest.approx(1.0, rel=0.05)

    def test_drift_recovered_by_regression(self):
        trace = synth_emg(60.0, RATE, mdf_drift=-1.0, seed=8)
        times, values = mdf(trace, AnalysisWindow(2.0, 0.0))
        slope = np.polyfit(times, values, 1)[0]
        assert -1.3 <= slope <= -0.7

    def test_envelope_followed(self):
        breakpoints = [(0.0, 0.0), (2.0, 2.0), (4.0, 2.0), (6.0, 0.0)]
        trace = synth_emg(6.0, RATE, envelope=breakpoints, seed=9)
        times, values = rms_windowed(trace, AnalysisWindow(0.5, 0.5))
        expected = np.interp(times, [p[0] for p in breakpoints], [p[1] for p in breakpoints])
        corr = np.corrcoef(values, expected)[0, 1]
        assert corr > 0.95


class TestPipelineClosure:
    def test_envelope_and_drift_recovered_end_to_end(self):
        breakpoints = [(0.0, 0.5), (10.0, 2.0), (20.0, 2.0), (30.0, 0.5)]
        trace = synth_emg(30.0, RATE, envelope=breakpoints, mdf_drift=-0.8, seed=10)
        filtered = bandpass(trace)
        times, values = rms_windowed(filtered, AnalysisWindow(1.0, 0.5))
        expected = np.interp(times, [p[0] for p in breakpoints], [p[1] for p in breakpoints])
        assert np.corrcoef(values, expected)[0, 1] > 0.95
        mdf_times, mdf_values = mdf(filtered, AnalysisWindow(2.0, 0.0))
        assert np.polyfit(mdf_times, mdf_values, 1)[0] < 0.0

    def test_linear_envelope_tracks_amplitude(self):
        breakpoints = [(0.0, 0.2), (3.0, 1.5), (6.0, 0.2)]
        trace = synth_emg(6.0, RATE, envelope=breakpoints, seed=13)
        env = linear_envelope(trace)
        assert env.samples.size == trace.samples.size
        mid = np.mean(env.samples[5800:6200])   # around t=3
        edge = np.mean(env.samples[200:600])    # around t=0.2
        assert mid > 3.0 * edge
