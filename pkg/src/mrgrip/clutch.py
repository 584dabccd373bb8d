"""Electro-mechanical model of one linear MR grease clutch.

Covers the measured peak holding force vs supply voltage, the electrical
power model and force-to-power ratio, the RL dynamics of the coil set,
a Dahl-type hysteretic force-displacement response, and least-squares
refitting of characterization data.

Units: volts, newtons, watts, ohms, henries, metres, seconds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

# Fitted peak-force polynomial, c0..c5 in N/V^k, valid on [0, 3] V.
DEFAULT_FORCE_COEFFS = (8.336, 35.412, 375.650, -253.826, 59.948, -4.588)


@dataclass(frozen=True)
class CoilElectrical:
    """Measured electrical parameters of one clutch's coil assembly.

    Defaults are the averages over the four production clutches; the coil
    set is three parallel windings driven as one port.
    """

    r_coil: float = 2.90          # DC resistance of the coil set (ohm)
    l_series: float = 147.42e-6   # series equivalent inductance (H)
    q_factor: float = 3.53        # quality factor at f_meas
    f_meas: float = 100e3         # bridge measurement frequency (Hz)
    n_coils: int = 3              # parallel windings

    def __post_init__(self):
        if self.r_coil <= 0:
            raise ValueError(f"r_coil must be positive, got {self.r_coil}")
        if self.l_series <= 0:
            raise ValueError(f"l_series must be positive, got {self.l_series}")
        if self.q_factor <= 0:
            raise ValueError(f"q_factor must be positive, got {self.q_factor}")
        if self.n_coils < 1:
            raise ValueError(f"n_coils must be >= 1, got {self.n_coils}")

    @property
    def time_constant(self) -> float:
        """L/R time constant of the coil set (s)."""
        return self.l_series / self.r_coil


@dataclass(frozen=True)
class ForceVoltageModel:
    """Fifth-order polynomial map from supply voltage to peak holding force.

    Construction rejects models that go negative anywhere on [0, v_max]
    (checked by dense sampling), so a valid model always yields a usable
    force capacity.
    """

    coeffs: tuple[float, ...] = DEFAULT_FORCE_COEFFS  # c0..c5 (N/V^k)
    v_max: float = 3.0                                # characterized range (V)

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) != 6:
            raise ValueError(f"expected exactly 6 coefficients, got {len(coeffs)}")
        if not self.v_max > 0:
            raise ValueError(f"v_max must be positive, got {self.v_max}")
        grid = np.linspace(0.0, self.v_max, 3001)
        values = np.polynomial.polynomial.polyval(grid, np.asarray(coeffs))
        if values.min() < 0.0:
            v_bad = grid[int(np.argmin(values))]
            raise ValueError(
                f"force model is negative on [0, {self.v_max}] V "
                f"(minimum {values.min():.4g} N near {v_bad:.4g} V)"
            )


@dataclass(frozen=True)
class HysteresisState:
    """State of the Dahl hysteresis model for one clutch shaft."""

    force: float = 0.0          # transmitted force (N)
    sigma: float = 2.0e5        # pre-yield stiffness (N/m)
    displacement: float = 0.0   # shaft position (m)

    def __post_init__(self):
        if self.sigma <= 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")


@dataclass(frozen=True)
class ClutchConfig:
    """One clutch: electrical parameters, force map, and model constants.

    r_power is the resistance behind the v^2/R power model. It defaults to
    the value implied by the published force-to-power figures (3.0 ohm),
    not the 0.967 ohm DC resistance of three parallel 2.9 ohm windings.
    """

    electrical: CoilElectrical = CoilElectrical()
    force_model: ForceVoltageModel = ForceVoltageModel()
    r_power: float = 3.0          # power-model resistance (ohm)
    sigma_default: float = 2.0e5  # pre-yield stiffness for hysteresis (N/m)

    def __post_init__(self):
        if self.r_power <= 0:
            raise ValueError(f"r_power must be positive, got {self.r_power}")
        if self.sigma_default <= 0:
            raise ValueError(f"sigma_default must be positive, got {self.sigma_default}")

    def hysteresis_state(self, force: float = 0.0, displacement: float = 0.0) -> HysteresisState:
        """Fresh hysteresis state using this config's pre-yield stiffness."""
        return HysteresisState(force=force, sigma=self.sigma_default, displacement=displacement)


DEFAULT_FORCE_MODEL = ForceVoltageModel()


def peak_holding_force(v: float, model: ForceVoltageModel = DEFAULT_FORCE_MODEL) -> float:
    """Peak holding force (N) the clutch sustains at supply voltage v.

    Raises ValueError outside the characterized range; out-of-range
    voltages are never clamped.
    """
    if not 0.0 <= v <= model.v_max:
        raise ValueError(
            f"voltage {v:.6g} V outside the characterized range [0, {model.v_max:.6g}] V"
        )
    acc = 0.0
    for c in reversed(model.coeffs):  # Horner form
        acc = acc * v + c
    return acc


def power_consumption(v: float, config: ClutchConfig) -> float:
    """Electrical power (W) drawn by one clutch at supply voltage v."""
    if v < 0:
        raise ValueError(f"supply voltage must be >= 0, got {v:.6g} V")
    return v * v / config.r_power


def force_to_power_ratio(v: float, config: ClutchConfig) -> float:
    """Holding force per watt (N/W) at supply voltage v; undefined at v=0."""
    if v <= 0:
        raise ValueError(f"force-to-power ratio is undefined at {v:.6g} V (zero power)")
    return peak_holding_force(v, config.force_model) / power_consumption(v, config)


def ac_effective_resistance(electrical: CoilElectrical) -> float:
    """AC resistance (ohm) implied by the measured quality factor: wL/Q."""
    return 2.0 * math.pi * electrical.f_meas * electrical.l_series / electrical.q_factor


def coil_current_step(i: float, v_applied: float, dt: float, electrical: CoilElectrical) -> float:
    """Advance the coil current one step of di/dt = (v - i*R)/L.

    Uses the exact exponential update for the zero-order-hold voltage, so
    the steady state i = v/R is a fixed point regardless of dt. dt is
    capped at half the L/R time constant, matching the contract callers
    integrate against.
    """
    tau = electrical.time_constant
    if not 0.0 < dt <= tau / 2.0:
        raise ValueError(
            f"dt={dt:.6g} s outside the allowed range (0, {tau / 2.0:.6g}] s for this coil"
        )
    i_inf = v_applied / electrical.r_coil
    return i_inf + (i - i_inf) * math.exp(-dt / tau)


def hysteresis_step(
    state: HysteresisState, dx: float, v: float, config: ClutchConfig
) -> tuple[HysteresisState, float]:
    """One Dahl update of the hysteretic transmitted force.

    dF = sigma * (1 - F/F_peak(v) * sgn(dx)) * dx, with |F| capped at
    F_peak(v). The caller integrates over small displacement increments;
    a direction reversal gives the rapid rise / gradual approach shape of
    the measured loops, whose height grows with voltage.
    """
    f_cap = peak_holding_force(v, config.force_model)
    if dx == 0.0:
        return state, state.force
    sgn = 1.0 if dx > 0.0 else -1.0
    force = state.force + state.sigma * (1.0 - state.force / f_cap * sgn) * dx
    force = min(max(force, -f_cap), f_cap)
    new_state = replace(state, force=force, displacement=state.displacement + dx)
    return new_state, force


@dataclass(frozen=True)
class FitResult:
    """Least-squares characterization fit plus its residual report."""

    model: ForceVoltageModel
    residuals: np.ndarray     # fitted minus observed force, per sample (N)
    rmse: float               # root-mean-square residual (N)
    max_abs_residual: float   # worst-case residual magnitude (N)


def fit_force_voltage(samples, degree: int = 5) -> FitResult:
    """Fit a force-voltage polynomial to (voltage, force) characterization data.

    samples is an iterable of (volt, newton) pairs covering at least
    degree+1 distinct voltages. Degrees below 5 are zero-padded so the
    returned model keeps the six-coefficient form.
    """
    data = np.asarray(list(samples), dtype=float)
    if data.ndim != 2 or data.shape[1] != 2 or data.shape[0] == 0:
        raise ValueError("samples must be a nonempty sequence of (voltage, force) pairs")
    if not 1 <= degree <= 5:
        raise ValueError(f"degree must be in 1..5, got {degree}")
    v, f = data[:, 0], data[:, 1]
    n_distinct = np.unique(v).size
    if n_distinct < degree + 1:
        raise ValueError(
            f"need at least {degree + 1} distinct voltages for a degree-{degree} fit, "
            f"got {n_distinct}"
        )
    coeffs = np.polynomial.polynomial.polyfit(v, f, degree)
    coeffs = np.concatenate([coeffs, np.zeros(6 - coeffs.size)])
    model = ForceVoltageModel(coeffs=tuple(coeffs), v_max=float(v.max()))
    fitted = np.polynomial.polynomial.polyval(v, coeffs)
    residuals = fitted - f
    return FitResult(
        model=model,
        residuals=residuals,
        rmse=float(np.sqrt(np.mean(residuals**2))),
        max_abs_residual=float(np.max(np.abs(residuals))),
    )
