#!/usr/bin/env python3
"""Walk through the clutch model: force curve, power budget, hysteresis, refit.

Sweeps the fitted force-voltage polynomial over its characterized range,
reproduces the force-to-power trade-off that fixes the recommended
operating point at 2.0 V, drives the Dahl hysteresis model through the
bench displacement cycle, and closes the loop by refitting the curve from
its own samples.

Writes SVG figures next to this script under out/.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from mrgrip.clutch import (
    ClutchConfig,
    ac_effective_resistance,
    fit_force_voltage,
    force_to_power_ratio,
    hysteresis_step,
    peak_holding_force,
    power_consumption,
)

OUT = Path(__file__).with_name("out")


def sweep(cfg):
    volts = np.linspace(0.0, 3.0, 301)
    force = np.array([peak_holding_force(float(v), cfg.force_model) for v in volts])
    power = np.array([power_consumption(float(v), cfg) for v in volts])
    ratio = np.array(
        [force_to_power_ratio(float(v), cfg) if v > 0 else np.nan for v in volts]
    )
    return volts, force, power, ratio


def hysteresis_cycle(cfg, v, n_per_leg=1500, cycles=2):
    leg = np.linspace(-0.010, 0.010, n_per_leg + 1)
    cycle = np.concatenate([leg, leg[::-1][1:]])
    path = np.concatenate([cycle] + [cycle[1:]] * (cycles - 1))
    state = cfg.hysteresis_state()
    xs, fs = [], []
    x_prev = path[0]
    for x in path[1:]:
        state, force = hysteresis_step(state, float(x - x_prev), v, cfg)
        x_prev = x
        xs.append(x * 1e3)  # mm for plotting
        fs.append(force)
    n_cycle = 2 * n_per_leg
    return np.array(xs[-n_cycle:]), np.array(fs[-n_cycle:])


def main():
    OUT.mkdir(exist_ok=True)
    cfg = ClutchConfig()

    print("=== coil electrical parameters (averages over four clutches) ===")
    coil = cfg.electrical
    print(f"  R = {coil.r_coil} ohm, L = {coil.l_series * 1e6:.2f} uH, Q = {coil.q_factor}")
    print(f"  L/R time constant      : {coil.time_constant * 1e6:.1f} us")
    print(f"  AC resistance (wL/Q)   : {ac_effective_resistance(coil):.2f} ohm at 100 kHz")
    print()

    volts, force, power, ratio = sweep(cfg)
    print("=== operating point trade-off ===")
    for v in (0.5, 1.0, 2.0, 3.0):
        idx = int(np.argmin(np.abs(volts - v)))
        print(
            f"  {v:.1f} V: force {force[idx]:7.1f} N   power {power[idx]:5.2f} W   "
            f"ratio {ratio[idx]:7.1f} N/W"
        )
    print("  force keeps rising past 2 V but the ratio halves; 2.0 V is the sweet spot")
    print()

    fig, ax1 = plt.subplots(figsize=(7, 4))
    ax1.plot(volts, force, color="tab:blue", label="peak holding force")
    ax1.set_xlabel("supply voltage (V)")
    ax1.set_ylabel("peak holding force (N)", color="tab:blue")
    ax2 = ax1.twinx()
    ax2.plot(volts[1:], ratio[1:], color="tab:red", label="force-to-power ratio")
    ax2.set_ylabel("force-to-power ratio (N/W)", color="tab:red")
    ax1.axvline(2.0, color="gray", ls="--", lw=1)
    ax1.set_title("clutch characterization sweep")
    fig.tight_layout()
    fig.savefig(OUT / "clutch_curve.svg")
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    for v in (0.5, 1.0, 1.5, 2.0):
        xs, fs = hysteresis_cycle(cfg, v)
        ax.plot(xs, fs, lw=1.2, label=f"{v:.1f} V")
    ax.set_xlabel("shaft displacement (mm)")
    ax.set_ylabel("transmitted force (N)")
    ax.set_title("hysteresis loops over the bench displacement cycle")
    ax.legend(title="supply voltage")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(OUT / "hysteresis_loops.svg")
    plt.close(fig)

    print("=== hysteresis loop heights (grow with voltage) ===")
    for v in (0.0, 0.5, 1.0, 1.5, 2.0):
        xs, fs = hysteresis_cycle(cfg, v, n_per_leg=600)
        print(f"  {v:.1f} V: height {fs.max() - fs.min():7.1f} N "
              f"(2 x capacity = {2 * peak_holding_force(v):7.1f} N)")
    print()

    print("=== refit from the model's own curve ===")
    samples = [(float(v), peak_holding_force(float(v))) for v in np.linspace(0, 3, 13)]
    result = fit_force_voltage(samples)
    print("  coefficient  truth        refit")
    for k, (truth, got) in enumerate(zip(cfg.force_model.coeffs, result.model.coeffs)):
        print(f"  c{k}          {truth:11.4f}  {got:11.4f}")
    print(f"  rmse {result.rmse:.2e} N")
    print()
    print(f"figures written to {OUT}/")


if __name__ == "__main__":
    main()
