"""Fixed-step scenario engine for the grip-assist exoskeleton.

Couples the held-object load model, scripted fingertip sensor signals,
the grip-intent state machine, the soft-switching supply, coil dynamics,
and the finger-linkage statics into a deterministic per-step log.

The clutch is semi-active: it can hold but never push, so the transmitted
force is the smaller of the voltage-dependent capacity and the demanded
share of the load.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields, replace
from enum import Enum

import numpy as np

from .clutch import ClutchConfig, peak_holding_force
from .control import Command, ControlState, SensorSample, Thresholds, control_step, pwm_duty
from .kinetics import LinkageGeometry, clutch_to_fingertip, fingertip_to_clutch
from .waveform import SwitchMode, SwitchingProfile, switching_voltage

G = 9.81  # m/s^2

SENSOR_REST = 0.2     # idle sensor level (V)
SENSOR_HIGH = 2.5     # asserted sensor level (V)
SENSOR_LOW = 0.3      # released finger-pad level (V)
SENSOR_RAMP = 0.1     # sensor transition time (s)
RELEASE_HOLD = 0.5    # time the release pattern persists (s)
RELEASE_SETTLE = 0.2  # return-to-rest time after a release (s)


class ScenarioKind(Enum):
    STATIC_GRIP = "static_grip"
    CARRY = "carry"
    LIFT = "lift"


class IntentEvent(Enum):
    GRIP = "grip"
    RELEASE = "release"


@dataclass(frozen=True)
class ScenarioConfig:
    kind: ScenarioKind
    mass: float                      # held mass (kg)
    duration: float                  # s
    events: tuple                    # ordered (time_s, IntentEvent) pairs
    reps: int = 1                    # lift repetitions over the held interval
    dt: float = 1e-3                 # timestep (s)
    assisted: bool = True            # exoskeleton active
    lift_share: float = 0.5          # hand-end share of the lifted mass
    v_on: float = 2.0                # engaged clutch target (V)
    tau: float = 0.05                # switch transition time (s)
    m: int = 3                       # switch sine periods
    noise_sd: float = 0.05           # sensor noise sigma (V); 0 disables
    seed: int = 0

    def __post_init__(self):
        if self.mass < 0:
            raise ValueError(f"mass must be >= 0, got {self.mass}")
        if not self.duration > 0:
            raise ValueError(f"duration must be positive, got {self.duration}")
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.reps < 1:
            raise ValueError(f"reps must be >= 1, got {self.reps}")
        if not 0.0 < self.lift_share <= 1.0:
            raise ValueError(f"lift_share must lie in (0, 1], got {self.lift_share}")
        events = tuple((float(t), IntentEvent(e)) for t, e in self.events)
        object.__setattr__(self, "events", events)
        times = [t for t, _ in events]
        if times != sorted(times):
            raise ValueError("events must be time-ordered")
        if events and not (0.0 <= times[0] and times[-1] <= self.duration):
            raise ValueError(f"event times must lie within [0, {self.duration}] s")


def static_grip_scenario(assisted: bool = True, **overrides) -> ScenarioConfig:
    """Static grip endurance test: hold a 17.5 kg dumbbell for one minute."""
    cfg = ScenarioConfig(
        kind=ScenarioKind.STATIC_GRIP,
        mass=17.5,
        duration=60.0,
        events=((1.0, IntentEvent.GRIP), (58.0, IntentEvent.RELEASE)),
        assisted=assisted,
    )
    return replace(cfg, **overrides) if overrides else cfg


def carry_scenario(assisted: bool = True, **overrides) -> ScenarioConfig:
    """Treadmill carry: 9 kg extrusion held for a 30 s walk."""
    cfg = ScenarioConfig(
        kind=ScenarioKind.CARRY,
        mass=9.0,
        duration=30.0,
        events=((1.0, IntentEvent.GRIP), (28.0, IntentEvent.RELEASE)),
        assisted=assisted,
    )
    return replace(cfg, **overrides) if overrides else cfg


def lift_scenario(assisted: bool = True, **overrides) -> ScenarioConfig:
    """Repetitive lift: one end of a 20 kg extrusion, eight reps back to back."""
    cfg = ScenarioConfig(
        kind=ScenarioKind.LIFT,
        mass=20.0,
        duration=42.0,
        events=((1.0, IntentEvent.GRIP), (41.0, IntentEvent.RELEASE)),
        reps=8,
        assisted=assisted,
    )
    return replace(cfg, **overrides) if overrides else cfg


def _held_interval(scenario: ScenarioConfig, t: float):
    """Return (t_grip, t_end) of the hold containing t, or None."""
    t_grip = None
    for te, ev in scenario.events:
        if te > t:
            break
        if ev is IntentEvent.GRIP:
            t_grip = te
        else:
            t_grip = None
    if t_grip is None:
        return None
    t_end = scenario.duration
    for te, ev in scenario.events:
        if te > t_grip and ev is IntentEvent.RELEASE:
            t_end = te
            break
    return t_grip, t_end


def _lift_shape(u: float) -> float:
    """Trapezoidal load profile over one rep, u in [0, 1): up 25%, hold 50%, down 25%."""
    if u < 0.25:
        return u / 0.25
    if u < 0.75:
        return 1.0
    return (1.0 - u) / 0.25


def required_support(scenario: ScenarioConfig, t: float) -> float:
    """Load-path force (N) the hand must supply at time t."""
    if not 0.0 <= t <= scenario.duration:
        raise ValueError(f"t={t:.6g} s outside [0, {scenario.duration:.6g}] s")
    held = _held_interval(scenario, t)
    if held is None:
        return 0.0
    if scenario.kind is not ScenarioKind.LIFT:
        return scenario.mass * G
    t_grip, t_end = held
    span = t_end - t_grip
    if span <= 0.0:
        return 0.0
    u = (t - t_grip) / span * scenario.reps
    return scenario.mass * scenario.lift_share * G * _lift_shape(u - math.floor(u))


def synth_sensors(scenario: ScenarioConfig, t: float, rng=None) -> SensorSample:
    """Scripted fingertip sensor voltages at time t.

    A grip ramps the pad sensor high while the dorsum stays at rest; a
    release flips the pattern for a short hold before both settle back.
    Optional additive noise comes from the caller's rng, clipped to the
    sampling rail.
    """
    if not 0.0 <= t <= scenario.duration:
        raise ValueError(f"t={t:.6g} s outside [0, {scenario.duration:.6g}] s")
    s1, s2 = SENSOR_REST, SENSOR_REST
    last = None
    for te, ev in scenario.events:
        if te > t:
            break
        last = (te, ev)
    if last is not None:
        te, ev = last
        dt_ev = t - te
        if ev is IntentEvent.GRIP:
            ramp = min(dt_ev / SENSOR_RAMP, 1.0)
            s2 = SENSOR_REST + (SENSOR_HIGH - SENSOR_REST) * ramp
        else:
            if dt_ev < SENSOR_RAMP:
                ramp = dt_ev / SENSOR_RAMP
                s1 = SENSOR_REST + (SENSOR_HIGH - SENSOR_REST) * ramp
                s2 = SENSOR_HIGH + (SENSOR_LOW - SENSOR_HIGH) * ramp
            elif dt_ev < RELEASE_HOLD:
                s1, s2 = SENSOR_HIGH, SENSOR_LOW
            elif dt_ev < RELEASE_HOLD + RELEASE_SETTLE:
                ramp = (dt_ev - RELEASE_HOLD) / RELEASE_SETTLE
                s1 = SENSOR_HIGH + (SENSOR_REST - SENSOR_HIGH) * ramp
                s2 = SENSOR_LOW + (SENSOR_REST - SENSOR_LOW) * ramp
    if rng is not None and scenario.noise_sd > 0.0:
        s1 += scenario.noise_sd * rng.standard_normal()
        s2 += scenario.noise_sd * rng.standard_normal()
        s1 = min(max(s1, 0.0), 3.3)
        s2 = min(max(s2, 0.0), 3.3)
    return SensorSample(s1=s1, s2=s2, t=t)


class SupplyTracker:
    """Assembles the supply-voltage trajectory from successive transitions.

    While a transition is in flight the profile value is used; after tau
    elapses the residual ringing is discarded and the target is held.
    Retargeting mid-flight starts the new profile from the instantaneous
    voltage, so the assembled trajectory is continuous in
    boundary-consistent mode.
    """

    def __init__(self, v_initial: float = 0.0, mode: SwitchMode = SwitchMode.BOUNDARY_CONSISTENT):
        self.mode = mode
        self._hold = v_initial
        self._profile: SwitchingProfile | None = None
        self._t0 = 0.0

    def voltage(self, t: float) -> float:
        if self._profile is not None:
            dt_rel = t - self._t0
            if dt_rel <= self._profile.tau:
                return switching_voltage(max(dt_rel, 0.0), self._profile)
            self._hold = self._profile.v_target
            self._profile = None
        return self._hold

    def retarget(self, t: float, v_target: float, tau: float, m: int) -> SwitchingProfile:
        start = self.voltage(t)
        self._profile = SwitchingProfile(
            v_current=start, v_target=v_target, tau=tau, m=m, mode=self.mode
        )
        self._t0 = t
        self._hold = v_target
        return self._profile


SIMLOG_COLUMNS = (
    "t",
    "s1",
    "s2",
    "mode",
    "v_cmd",
    "duty",
    "i_coil",
    "f_clutch",
    "f_support",
    "f_required",
    "f_muscle_residual",
)


@dataclass(frozen=True)
class SimLog:
    """Per-step arrays of one scenario run; columns as in SIMLOG_COLUMNS."""

    t: np.ndarray
    s1: np.ndarray
    s2: np.ndarray
    mode: np.ndarray            # "off" / "engaged"
    v_cmd: np.ndarray
    duty: np.ndarray
    i_coil: np.ndarray
    f_clutch: np.ndarray
    f_support: np.ndarray
    f_required: np.ndarray
    f_muscle_residual: np.ndarray

    def __len__(self) -> int:
        return self.t.size

    def write_csv(self, fh) -> None:
        fh.write(",".join(SIMLOG_COLUMNS) + "\n")
        for k in range(len(self)):
            row = [
                repr(float(self.t[k])),
                repr(float(self.s1[k])),
                repr(float(self.s2[k])),
                str(self.mode[k]),
                repr(float(self.v_cmd[k])),
                repr(float(self.duty[k])),
                repr(float(self.i_coil[k])),
                repr(float(self.f_clutch[k])),
                repr(float(self.f_support[k])),
                repr(float(self.f_required[k])),
                repr(float(self.f_muscle_residual[k])),
            ]
            fh.write(",".join(row) + "\n")


def run_scenario(
    scenario: ScenarioConfig,
    clutch: ClutchConfig | None = None,
    geom: LinkageGeometry | None = None,
    thr: Thresholds | None = None,
) -> SimLog:
    """Run one scenario and return the per-step log.

    Per step: sensors feed the intent latch; latch commands retarget the
    soft-switching supply; the instantaneous supply voltage sets the coil
    current and the clutch capacity; the transmitted force is the smaller
    of capacity and the demanded per-finger load share; the remainder of
    the demand is the muscle residual. assisted=False means the device is
    not worn: the command voltage stays at zero and nothing is transmitted,
    not even the unpowered clutch's residual friction.
    """
    if scenario.dt > 1e-3 + 1e-12:
        raise ValueError(f"dt must be <= 1 ms for the control loop, got {scenario.dt:.6g} s")
    clutch = clutch if clutch is not None else ClutchConfig()
    geom = geom if geom is not None else LinkageGeometry()
    thr = thr if thr is not None else Thresholds()

    n_steps = int(round(scenario.duration / scenario.dt)) + 1
    rng = np.random.default_rng(scenario.seed) if scenario.noise_sd > 0.0 else None

    # Linear transmission factors; capacity clamps the ringing transient
    # into the characterized voltage range (force saturates beyond it).
    k_f2c = fingertip_to_clutch(1.0, geom)
    k_c2f = clutch_to_fingertip(1.0, geom)
    v_cap = clutch.force_model.v_max
    n_fingers = geom.n_fingers

    # Exact RL update, composed over the sim step from the coil contract's
    # shorter steps (exponential updates compose exactly).
    alpha = math.exp(-scenario.dt / clutch.electrical.time_constant)

    state = ControlState()
    supply = SupplyTracker(v_initial=0.0)
    i_coil = 0.0

    cols = {name: np.empty(n_steps) for name in SIMLOG_COLUMNS if name != "mode"}
    modes = np.empty(n_steps, dtype=object)

    for k in range(n_steps):
        t = min(k * scenario.dt, scenario.duration)  # guard the last-step rounding
        try:
            sample = synth_sensors(scenario, t, rng)
            if scenario.assisted:
                state, command = control_step(state, sample, thr)
                if command is Command.ENGAGE:
                    supply.retarget(t, scenario.v_on, scenario.tau, scenario.m)
                    state = replace(state, v_command=scenario.v_on)
                elif command is Command.DISENGAGE:
                    supply.retarget(t, 0.0, scenario.tau, scenario.m)
                    state = replace(state, v_command=0.0)
                v_s = supply.voltage(t)
            else:
                v_s = 0.0
            i_inf = v_s / clutch.electrical.r_coil
            i_coil = i_inf + (i_coil - i_inf) * alpha
            f_req = required_support(scenario, t)
            if scenario.assisted:
                capacity = peak_holding_force(min(abs(v_s), v_cap), clutch.force_model)
                demand = k_f2c * f_req / n_fingers
                f_clutch = min(capacity, demand)
            else:
                f_clutch = 0.0
            f_support = n_fingers * k_c2f * f_clutch
            residual = max(0.0, f_req - f_support)
            cols["t"][k] = t
            cols["s1"][k] = sample.s1
            cols["s2"][k] = sample.s2
            modes[k] = state.mode.value
            cols["v_cmd"][k] = state.v_command
            cols["duty"][k] = pwm_duty(abs(v_s))
            cols["i_coil"][k] = i_coil
            cols["f_clutch"][k] = f_clutch
            cols["f_support"][k] = f_support
            cols["f_required"][k] = f_req
            cols["f_muscle_residual"][k] = residual
        except ValueError as exc:
            raise ValueError(f"step {k} (t={t:.6g} s): {exc}") from exc
    return SimLog(mode=modes, **cols)


def residual_envelope(log: SimLog, mv_per_newton: float = 0.01, max_points: int = 4001):
    """Muscle-residual trace as (time_s, amplitude_mv) envelope breakpoints.

    Decimated to at most max_points breakpoints for the synthetic EMG
    generator; the final sample is always kept.
    """
    n = len(log)
    stride = max(1, int(math.ceil(n / max_points)))
    idx = np.arange(0, n, stride)
    if idx[-1] != n - 1:
        idx = np.append(idx, n - 1)
    return np.column_stack([log.t[idx], mv_per_newton * log.f_muscle_residual[idx]])


def electronics_overhead_w(
    clutch: ClutchConfig, v_on: float = 2.0, system_power_w: float = 5.68
) -> float:
    """Non-clutch share of the published whole-system power draw (W)."""
    per_clutch = v_on * v_on / clutch.r_power
    return system_power_w - 4.0 * per_clutch


def scenario_to_dict(scenario: ScenarioConfig) -> dict:
    d = {}
    for f in fields(ScenarioConfig):
        value = getattr(scenario, f.name)
        if f.name == "kind":
            value = value.value
        elif f.name == "events":
            value = [[t, ev.value] for t, ev in value]
        d[f.name] = value
    return d


def load_scenario(path) -> ScenarioConfig:
    """Read a scenario file: JSON mirroring the ScenarioConfig fields."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError(f"scenario file {path} must contain a JSON object")
    known = {f.name for f in fields(ScenarioConfig)}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown scenario fields {sorted(unknown)}; expected {sorted(known)}")
    if "kind" not in data:
        raise ValueError("scenario file must set 'kind'")
    data = dict(data)
    data["kind"] = ScenarioKind(data["kind"])
    data["events"] = tuple(
        (float(t), IntentEvent(ev)) for t, ev in data.get("events", ())
    )
    try:
        return ScenarioConfig(**data)
    except TypeError as exc:
        raise ValueError(f"bad scenario file {path}: {exc}") from exc
