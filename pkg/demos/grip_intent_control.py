#!/usr/bin/env python3
"""Run the grip-intent latch over a noisy scripted sensor trace.

A grip, a spurious blip, and a release are scripted onto the two fingertip
pressure sensors with measurement noise; the debounced latch engages once,
ignores the blip, and disengages cleanly. The commanded voltage is turned
into soft-switch transitions and PWM duty for the 5 V bridge.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from mrgrip.control import (
    Command,
    ControlState,
    SensorSample,
    Thresholds,
    apply_command,
    control_step,
    pwm_duty,
)
from mrgrip.sim import SupplyTracker

OUT = Path(__file__).with_name("out")


def scripted_sensors(t, rng):
    """Rest -> grip at 1 s -> 20 ms blip at 4 s -> release at 6 s."""
    s1, s2 = 0.2, 0.2
    if 1.0 <= t < 6.0:
        s2 = 2.5
    if 4.0 <= t < 4.02:        # too short to pass the debounce
        s1, s2 = 2.5, 0.5
    if 6.0 <= t < 6.5:
        s1, s2 = 2.5, 0.3
    s1 = float(np.clip(s1 + 0.05 * rng.standard_normal(), 0.0, 3.3))
    s2 = float(np.clip(s2 + 0.05 * rng.standard_normal(), 0.0, 3.3))
    return s1, s2


def main():
    OUT.mkdir(exist_ok=True)
    rng = np.random.default_rng(17)
    thr = Thresholds()
    dt = 0.01  # 100 Hz control loop

    times = np.arange(0.0, 8.0, dt)
    state = ControlState()
    supply = SupplyTracker()
    log = {"s1": [], "s2": [], "mode": [], "v": [], "duty": []}
    transitions = []

    for t in times:
        s1, s2 = scripted_sensors(float(t), rng)
        state, command = control_step(state, SensorSample(s1=s1, s2=s2, t=float(t)), thr)
        if command is not Command.NO_CHANGE:
            state = apply_command(state, command)
            supply.retarget(float(t), state.v_command, tau=0.05, m=3)
            transitions.append((float(t), command.value))
        v = supply.voltage(float(t))
        log["s1"].append(s1)
        log["s2"].append(s2)
        log["mode"].append(1 if state.mode.value == "engaged" else 0)
        log["v"].append(v)
        log["duty"].append(pwm_duty(abs(v)))

    print("=== latch transitions ===")
    for t, name in transitions:
        print(f"  t = {t:5.2f} s: {name}")
    print(f"  spurious 20 ms blip at 4 s produced no transition "
          f"(debounce_n = {thr.debounce_n} at {1 / dt:.0f} Hz)")
    print()
    engaged_frac = float(np.mean(log["mode"]))
    print(f"engaged for {engaged_frac * 100:.1f}% of the trace, "
          f"final duty {log['duty'][-1]:.2f}")

    fig, axes = plt.subplots(3, 1, figsize=(8, 6), sharex=True)
    axes[0].plot(times, log["s1"], label="s1 (dorsum)", lw=0.8)
    axes[0].plot(times, log["s2"], label="s2 (pad)", lw=0.8)
    axes[0].axhline(thr.th1, color="gray", ls=":", lw=1)
    axes[0].axhline(thr.th2, color="gray", ls=":", lw=1)
    axes[0].set_ylabel("sensor (V)")
    axes[0].legend(loc="upper right")
    axes[1].plot(times, log["mode"], drawstyle="steps-post", color="tab:green")
    axes[1].set_ylabel("latched mode")
    axes[1].set_yticks([0, 1], ["off", "engaged"])
    axes[2].plot(times, log["v"], color="tab:red", lw=1.0)
    axes[2].set_ylabel("supply (V)")
    axes[2].set_xlabel("time (s)")
    for ax in axes:
        ax.grid(True, alpha=0.3)
    fig.suptitle("grip-intent latch over a noisy sensor trace")
    fig.tight_layout()
    fig.savefig(OUT / "grip_intent.svg")
    plt.close(fig)
    print(f"figure written to {OUT}/grip_intent.svg")


if __name__ == "__main__":
    main()
