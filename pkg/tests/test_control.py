import numpy as np
import pytest

from mrgrip.control import (
    Command,
    ControlState,
    Mode,
    SensorSample,
    Thresholds,
    apply_command,
    command_to_profile,
    control_step,
    pwm_duty,
)
from mrgrip.waveform import SwitchMode, switching_voltage

THR = Thresholds()

GRIP = SensorSample(s1=0.5, s2=2.5)
RELEASE = SensorSample(s1=2.5, s2=0.5)
AMBIGUOUS = SensorSample(s1=1.5, s2=1.5)


def run_sequence(state, samples, thr=THR):
    commands = []
    for sample in samples:
        state, command = control_step(state, sample, thr)
        commands.append(command)
    return state, commands


class TestLatch:
    def test_engage_after_debounce(self):
        state, commands = run_sequence(ControlState(), [GRIP] * 3)
        assert commands == [Command.NO_CHANGE, Command.NO_CHANGE, Command.ENGAGE]
        assert state.mode is Mode.ENGAGED

    def test_disengage_after_debounce(self):
        state, commands = run_sequence(ControlState(mode=Mode.ENGAGED), [RELEASE] * 3)
        assert commands[-1] is Command.DISENGAGE
        assert state.mode is Mode.OFF

    def test_ambiguous_band_holds_mode(self):
        for mode in Mode:
            state, commands = run_sequence(ControlState(mode=mode), [AMBIGUOUS] * 50)
            assert state.mode is mode
            assert all(c is Command.NO_CHANGE for c in commands)

    def test_ambiguous_sample_resets_debounce(self):
        state, commands = run_sequence(ControlState(), [GRIP, GRIP, AMBIGUOUS, GRIP, GRIP])
        assert all(c is Command.NO_CHANGE for c in commands)
        assert state.mode is Mode.OFF

    def test_engage_only_reachable_from_off(self):
        # the grip pattern is ignored while engaged, and vice versa
        state, commands = run_sequence(ControlState(mode=Mode.ENGAGED), [GRIP] * 10)
        assert state.mode is Mode.ENGAGED
        assert all(c is Command.NO_CHANGE for c in commands)
        state, commands = run_sequence(ControlState(), [RELEASE] * 10)
        assert state.mode is Mode.OFF
        assert all(c is Command.NO_CHANGE for c in commands)

    def test_no_chatter_under_alternating_noise(self):
        rng = np.random.default_rng(123)
        state = ControlState()
        transitions = 0
        for k in range(10_000):
            if k % 2 == 0:
                sample = SensorSample(
                    s1=float(np.clip(0.5 + 0.1 * rng.standard_normal(), 0, 0.9)),
                    s2=float(np.clip(2.5 + 0.1 * rng.standard_normal(), 2.1, 3.3)),
                )
            else:
                sample = AMBIGUOUS
            state, command = control_step(state, sample, THR)
            transitions += command is not Command.NO_CHANGE
        assert transitions == 0

    def test_latch_stability_in_ambiguous_band(self):
        rng = np.random.default_rng(99)
        for mode in Mode:
            state = ControlState(mode=mode)
            for _ in range(10_000):
                sample = SensorSample(
                    s1=float(rng.uniform(1.0, 2.0)), s2=float(rng.uniform(1.0, 2.0))
                )
                state, command = control_step(state, sample, THR)
                assert command is Command.NO_CHANGE
            assert state.mode is mode

    def test_strict_threshold_inequalities(self):
        # values sitting exactly on a threshold never qualify
        edge = SensorSample(s1=1.0, s2=2.0)
        state, commands = run_sequence(ControlState(), [edge] * 10)
        assert all(c is Command.NO_CHANGE for c in commands)


class TestProfiles:
    def test_engage_profile(self):
        profile = command_to_profile(Command.ENGAGE, ControlState(), v_on=2.0)
        assert profile.v_current == 0.0 and profile.v_target == 2.0

    def test_disengage_profile_from_engaged_state(self):
        state = ControlState(mode=Mode.ENGAGED, v_command=2.0)
        profile = command_to_profile(Command.DISENGAGE, state)
        assert profile.v_current == 2.0 and profile.v_target == 0.0

    def test_no_change_gives_none(self):
        assert command_to_profile(Command.NO_CHANGE, ControlState()) is None

    def test_v_on_outside_clutch_domain(self):
        with pytest.raises(ValueError, match="range"):
            command_to_profile(Command.ENGAGE, ControlState(), v_on=3.5)

    def test_midflight_retarget_is_continuous(self):
        engage = command_to_profile(Command.ENGAGE, ControlState(), v_on=2.0)
        t_switch = 0.37 * engage.tau
        v_now = switching_voltage(t_switch, engage)
        state = ControlState(mode=Mode.ENGAGED, v_command=2.0)
        disengage = command_to_profile(Command.DISENGAGE, state, v_start=v_now)
        assert disengage.mode is SwitchMode.BOUNDARY_CONSISTENT
        assert switching_voltage(0.0, disengage) == v_now

    def test_apply_command(self):
        state = apply_command(ControlState(), Command.ENGAGE, v_on=2.0)
        assert state.v_command == 2.0
        state = apply_command(state, Command.NO_CHANGE)
        assert state.v_command == 2.0
        state = apply_command(state, Command.DISENGAGE)
        assert state.v_command == 0.0


class TestPwm:
    def test_average_value(self):
        assert pwm_duty(2.0, 5.0) == pytest.approx(0.40, rel=1e-12)
        assert pwm_duty(0.0) == 0.0
        assert pwm_duty(5.0, 5.0) == 1.0

    def test_unreachable_command(self):
        with pytest.raises(ValueError, match="unreachable"):
            pwm_duty(5.1, 5.0)
        with pytest.raises(ValueError, match="unreachable"):
            pwm_duty(-0.1, 5.0)


class TestValidation:
    def test_sensor_rail(self):
        with pytest.raises(ValueError):
            SensorSample(s1=-0.1, s2=1.0)
        with pytest.raises(ValueError):
            SensorSample(s1=0.1, s2=3.4)

    def test_thresholds(self):
        with pytest.raises(ValueError):
            Thresholds(th1=2.0, th2=1.0)
        with pytest.raises(ValueError):
            Thresholds(th1=0.0, th2=1.0)
        with pytest.raises(ValueError):
            Thresholds(debounce_n=0)
