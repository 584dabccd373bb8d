"""Surface-EMG analysis chain and a deterministic synthetic generator.

Pipeline stages: segmentation, 100-400 Hz zero-phase bandpass, optional
linear envelope, windowed RMS, integrated EMG, windowed median frequency,
and between-condition reduction statistics. Amplitudes are millivolts,
times seconds, frequencies hertz.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import signal

ANALYSIS_BAND = (100.0, 400.0)   # Hz
MIN_RATE = 2.0 * ANALYSIS_BAND[1]


@dataclass(frozen=True)
class EmgTrace:
    """One uniformly sampled EMG channel."""

    samples: np.ndarray   # mV
    rate: float           # Hz
    label: str = "emg"

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float)
        object.__setattr__(self, "samples", samples)
        if samples.ndim != 1 or samples.size == 0:
            raise ValueError("samples must be a nonempty 1-D sequence")
        if not np.isfinite(samples).all():
            raise ValueError("samples contain non-finite values")
        if not self.rate > MIN_RATE:
            raise ValueError(
                f"rate must exceed {MIN_RATE:.6g} Hz for the {ANALYSIS_BAND} Hz band, "
                f"got {self.rate:.6g} Hz"
            )

    @property
    def duration(self) -> float:
        return self.samples.size / self.rate

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.samples.size) / self.rate


@dataclass(frozen=True)
class AnalysisWindow:
    length: float = 0.5   # s
    overlap: float = 0.5  # fraction of the window shared by neighbours

    def __post_init__(self):
        if not self.length > 0:
            raise ValueError(f"window length must be positive, got {self.length}")
        if not 0.0 <= self.overlap < 1.0:
            raise ValueError(f"overlap must lie in [0, 1), got {self.overlap}")


def segment(trace: EmgTrace, t0: float, t1: float) -> EmgTrace:
    """Extract the half-open time interval [t0, t1) as a new trace."""
    if not 0.0 <= t0 < t1 <= trace.duration + 1e-12:
        raise ValueError(
            f"need 0 <= t0 < t1 <= {trace.duration:.6g} s, got t0={t0:.6g}, t1={t1:.6g}"
        )
    i0 = int(math.ceil(t0 * trace.rate - 1e-9))
    i1 = int(math.ceil(t1 * trace.rate - 1e-9))
    if i1 <= i0:
        raise ValueError(f"segment [{t0:.6g}, {t1:.6g}) s contains no samples")
    return EmgTrace(trace.samples[i0:i1], trace.rate, trace.label)


def bandpass(
    trace: EmgTrace,
    low: float = ANALYSIS_BAND[0],
    high: float = ANALYSIS_BAND[1],
    order: int = 4,
) -> EmgTrace:
    """Zero-phase Butterworth bandpass (forward-backward, no net phase)."""
    if not 0.0 < low < high:
        raise ValueError(f"need 0 < low < high, got {low}, {high}")
    if high >= trace.rate / 2.0:
        raise ValueError(
            f"upper band edge {high:.6g} Hz violates Nyquist at rate {trace.rate:.6g} Hz"
        )
    sos = signal.butter(order, [low, high], btype="bandpass", fs=trace.rate, output="sos")
    filtered = signal.sosfiltfilt(sos, trace.samples)
    return EmgTrace(filtered, trace.rate, trace.label)


def linear_envelope(trace: EmgTrace, cutoff: float = 6.0, order: int = 2) -> EmgTrace:
    """Rectify and low-pass to the classical linear envelope (optional stage)."""
    if not 0.0 < cutoff < trace.rate / 2.0:
        raise ValueError(f"cutoff {cutoff:.6g} Hz must lie in (0, rate/2)")
    sos = signal.butter(order, cutoff, btype="lowpass", fs=trace.rate, output="sos")
    env = signal.sosfiltfilt(sos, np.abs(trace.samples))
    return EmgTrace(env, trace.rate, trace.label)


def _window_starts(n_samples: int, n_win: int, overlap: float) -> np.ndarray:
    step = max(1, int(round(n_win * (1.0 - overlap))))
    return np.arange(0, n_samples - n_win + 1, step)


def _window_samples(trace: EmgTrace, win: AnalysisWindow) -> int:
    n_win = int(round(win.length * trace.rate))
    if n_win < 1 or n_win > trace.samples.size:
        raise ValueError(
            f"window of {win.length:.6g} s ({n_win} samples) does not fit the "
            f"{trace.duration:.6g} s trace"
        )
    return n_win


def rms_windowed(trace: EmgTrace, win: AnalysisWindow) -> tuple[np.ndarray, np.ndarray]:
    """Windowed root-mean-square amplitude; times are window centres."""
    n_win = _window_samples(trace, win)
    starts = _window_starts(trace.samples.size, n_win, win.overlap)
    times = (starts + (n_win - 1) / 2.0) / trace.rate
    values = np.array(
        [math.sqrt(float(np.mean(trace.samples[s : s + n_win] ** 2))) for s in starts]
    )
    return times, values


def iemg(trace: EmgTrace) -> float:
    """Integrated EMG: trapezoidal integral of |x(t)| over the trace (mV*s)."""
    return float(np.trapezoid(np.abs(trace.samples), dx=1.0 / trace.rate))


def _median_frequency(freqs: np.ndarray, psd: np.ndarray, rtol: float) -> float:
    """Frequency splitting the spectral power into equal halves.

    Interpolates the cumulative power linearly between bins; when a range
    of frequencies all split the power evenly (within rtol of the total),
    the midpoint of that range is returned.
    """
    csum = np.cumsum(psd)
    total = csum[-1]
    if total <= 0.0:
        raise ValueError("spectrum carries no power")

    def crossing(target: float) -> float:
        i = int(np.searchsorted(csum, target))
        i = min(max(i, 0), freqs.size - 1)
        prev = csum[i - 1] if i > 0 else 0.0
        f_prev = freqs[i - 1] if i > 0 else 0.0
        if csum[i] <= prev:
            return float(freqs[i])
        return float(f_prev + (target - prev) / (csum[i] - prev) * (freqs[i] - f_prev))

    half = 0.5 * total
    tol = rtol * total
    return 0.5 * (crossing(half - tol) + crossing(half + tol))


def mdf(
    trace: EmgTrace, win: AnalysisWindow, rtol: float = 1e-9
) -> tuple[np.ndarray, np.ndarray]:
    """Windowed median frequency from a Welch spectrum; times are window centres.

    Each window is split into four Hann-tapered segments with 50% overlap.
    A falling median frequency over time indicates accumulating fatigue.
    """
    n_win = _window_samples(trace, win)
    if n_win < 256:
        raise ValueError(f"median frequency needs windows of >= 256 samples, got {n_win}")
    nperseg = n_win // 4
    starts = _window_starts(trace.samples.size, n_win, win.overlap)
    times = (starts + (n_win - 1) / 2.0) / trace.rate
    values = np.empty(starts.size)
    for k, s in enumerate(starts):
        freqs, psd = signal.welch(
            trace.samples[s : s + n_win],
            fs=trace.rate,
            window="hann",
            nperseg=nperseg,
            noverlap=nperseg // 2,
        )
        values[k] = _median_frequency(freqs, psd, rtol)
    return times, values


def reduction_percent(baseline: float, assisted: float) -> float:
    """Percent reduction of a metric from the baseline to the assisted run."""
    if baseline <= 0:
        raise ValueError(f"baseline must be positive, got {baseline:.6g}")
    return (baseline - assisted) / baseline * 100.0


def synth_emg(
    duration: float,
    rate: float = 2000.0,
    envelope=1.0,
    mdf_drift: float = 0.0,
    seed: int = 0,
    n_oscillators: int = 256,
    band: tuple[float, float] = ANALYSIS_BAND,
) -> EmgTrace:
    """Deterministic band-limited test signal with a drifting spectrum.

    A bank of stratified random-frequency oscillators spans the band, so
    the flat-band median frequency sits at the band centre; mdf_drift
    shifts every oscillator by drift*t Hz to mimic fatigue. The unit-RMS
    noise is scaled by the envelope: either a constant (mV) or a sequence
    of (time_s, amplitude_mv) breakpoints interpolated linearly.

    Identical arguments, including seed, give bit-identical traces.
    """
    if not duration > 0:
        raise ValueError(f"duration must be positive, got {duration}")
    if not rate > MIN_RATE:
        raise ValueError(f"rate must exceed {MIN_RATE:.6g} Hz, got {rate:.6g}")
    lo, hi = band
    if not 0.0 < lo < hi:
        raise ValueError(f"invalid band {band}")
    rng = np.random.default_rng(seed)
    n = int(round(duration * rate))
    t = np.arange(n) / rate

    k = np.arange(n_oscillators)
    freqs = lo + (k + rng.uniform(0.0, 1.0, n_oscillators)) * (hi - lo) / n_oscillators
    phases = rng.uniform(0.0, 2.0 * np.pi, n_oscillators)
    x = np.zeros(n)
    drift_term = 0.5 * mdf_drift * t * t
    for f0, psi in zip(freqs, phases):
        x += np.cos(2.0 * np.pi * (f0 * t + drift_term) + psi)
    x *= math.sqrt(2.0 / n_oscillators)

    if np.isscalar(envelope):
        x *= float(envelope)
    else:
        pts = np.asarray(envelope, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] == 0:
            raise ValueError("envelope must be a scalar or a sequence of (time, mV) pairs")
        x *= np.interp(t, pts[:, 0], pts[:, 1])
    return EmgTrace(x, rate, "synth")
