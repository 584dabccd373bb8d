"""Grip-intent detection and actuation commands.

Two fingertip pressure sensors drive a latched two-state machine: engage
when the finger-pad sensor rises above the upper threshold while the
dorsum sensor stays below the lower one, disengage on the reversed
pattern, both debounced. Anything in between holds the current mode.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from .waveform import SwitchMode, SwitchingProfile

V_RAIL = 3.3          # sensor sampling rail (V)
H_BRIDGE_RAIL = 5.0   # actuation supply rail (V)


class Mode(Enum):
    OFF = "off"
    ENGAGED = "engaged"


class Command(Enum):
    NO_CHANGE = "no_change"
    ENGAGE = "engage"
    DISENGAGE = "disengage"


@dataclass(frozen=True)
class SensorSample:
    s1: float       # finger-dorsum sensor (V)
    s2: float       # finger-pad sensor (V)
    t: float = 0.0  # sample time (s)

    def __post_init__(self):
        if not 0.0 <= self.s1 <= V_RAIL or not 0.0 <= self.s2 <= V_RAIL:
            raise ValueError(
                f"sensor voltages must lie in [0, {V_RAIL}] V, got s1={self.s1}, s2={self.s2}"
            )


@dataclass(frozen=True)
class Thresholds:
    th1: float = 1.0      # lower threshold (V)
    th2: float = 2.0      # upper threshold (V)
    debounce_n: int = 3   # consecutive samples to accept a transition

    def __post_init__(self):
        if not 0.0 < self.th1 < self.th2:
            raise ValueError(f"need 0 < th1 < th2, got th1={self.th1}, th2={self.th2}")
        if self.debounce_n < 1:
            raise ValueError(f"debounce_n must be >= 1, got {self.debounce_n}")


@dataclass(frozen=True)
class ControlState:
    mode: Mode = Mode.OFF
    pending: int = 0        # consecutive samples toward the opposite mode
    v_command: float = 0.0  # commanded clutch target voltage (V)


def control_step(
    state: ControlState, sample: SensorSample, thr: Thresholds
) -> tuple[ControlState, Command]:
    """Advance the intent latch by one sensor sample.

    Strict inequalities on both thresholds; the transition fires only
    after debounce_n consecutive qualifying samples.
    """
    if state.mode is Mode.OFF:
        wants = sample.s2 > thr.th2 and sample.s1 < thr.th1
        fired_mode, command = Mode.ENGAGED, Command.ENGAGE
    else:
        wants = sample.s2 < thr.th1 and sample.s1 > thr.th2
        fired_mode, command = Mode.OFF, Command.DISENGAGE
    if not wants:
        if state.pending == 0:
            return state, Command.NO_CHANGE
        return replace(state, pending=0), Command.NO_CHANGE
    pending = state.pending + 1
    if pending < thr.debounce_n:
        return replace(state, pending=pending), Command.NO_CHANGE
    return replace(state, mode=fired_mode, pending=0), command


def apply_command(state: ControlState, command: Command, v_on: float = 2.0) -> ControlState:
    """Update the commanded target voltage after a transition command."""
    if command is Command.ENGAGE:
        return replace(state, v_command=v_on)
    if command is Command.DISENGAGE:
        return replace(state, v_command=0.0)
    return state


def command_to_profile(
    command: Command,
    state: ControlState,
    v_on: float = 2.0,
    tau: float = 0.05,
    m: int = 3,
    mode: SwitchMode = SwitchMode.BOUNDARY_CONSISTENT,
    v_start: float | None = None,
    v_max: float = 3.0,
) -> SwitchingProfile | None:
    """Build the supply transition for a latch command, or None for NO_CHANGE.

    v_start overrides the starting voltage when a previous transition is
    still in flight, keeping the assembled supply trajectory continuous.
    """
    if command is Command.NO_CHANGE:
        return None
    if not 0.0 <= v_on <= v_max:
        raise ValueError(f"v_on={v_on:.6g} V outside the clutch's range [0, {v_max:.6g}] V")
    start = state.v_command if v_start is None else v_start
    target = v_on if command is Command.ENGAGE else 0.0
    return SwitchingProfile(v_current=start, v_target=target, tau=tau, m=m, mode=mode)


def pwm_duty(v_cmd: float, v_supply: float = H_BRIDGE_RAIL) -> float:
    """Average-value PWM duty fraction realizing v_cmd from v_supply."""
    if not 0.0 <= v_cmd <= v_supply:
        raise ValueError(
            f"unreachable command: v_cmd={v_cmd:.6g} V not in [0, {v_supply:.6g}] V"
        )
    return v_cmd / v_supply
