#!/usr/bin/env python3
"""End-to-end static grip: assisted vs unassisted, down to the iEMG verdict.

Runs the one-minute 17.5 kg grip scenario with the exoskeleton on and off,
plots how the support force takes over the load within a fraction of a
second of the grip intent, then maps both muscle-residual traces to
synthetic EMG and compares their iEMG.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from mrgrip.emg import iemg, synth_emg
from mrgrip.sim import (
    electronics_overhead_w,
    residual_envelope,
    run_scenario,
    static_grip_scenario,
)
from mrgrip.clutch import ClutchConfig

OUT = Path(__file__).with_name("out")


def main():
    OUT.mkdir(exist_ok=True)
    assisted = run_scenario(static_grip_scenario(assisted=True))
    unassisted = run_scenario(static_grip_scenario(assisted=False))

    steady = (assisted.t >= 30.0) & (assisted.t <= 50.0)
    print("=== one-minute 17.5 kg static grip ===")
    print(f"  required load while held  : {assisted.f_required[steady][0]:7.2f} N")
    print(f"  assisted steady residual  : {assisted.f_muscle_residual[steady].max():7.2f} N")
    print(f"  unassisted steady residual: {unassisted.f_muscle_residual[steady].max():7.2f} N")

    engaged = np.where(assisted.f_support >= 0.95 * assisted.f_support[steady][0])[0]
    print(f"  support at 95% of steady  : {assisted.t[engaged[0]] - 1.0:7.3f} s "
          f"after the grip intent")
    cfg = ClutchConfig()
    per_clutch = 2.0**2 / cfg.r_power
    print(f"  electrical budget         : 4 x {per_clutch:.2f} W clutches "
          f"+ {electronics_overhead_w(cfg):.2f} W electronics")
    print()

    fig, axes = plt.subplots(2, 1, figsize=(8, 5.5), sharex=True)
    axes[0].plot(assisted.t, assisted.f_required, label="required", color="gray", lw=1.0)
    axes[0].plot(assisted.t, assisted.f_support, label="support (assisted)", lw=1.0)
    axes[0].plot(assisted.t, assisted.f_muscle_residual, label="muscle residual (assisted)",
                 lw=1.0)
    axes[0].set_ylabel("force (N)")
    axes[0].legend(loc="center right")
    axes[1].plot(unassisted.t, unassisted.f_muscle_residual,
                 label="muscle residual (unassisted)", color="tab:red", lw=1.0)
    axes[1].set_ylabel("force (N)")
    axes[1].set_xlabel("time (s)")
    axes[1].legend(loc="center right")
    for ax in axes:
        ax.grid(True, alpha=0.3)
    fig.suptitle("static grip: the clutch takes the load")
    fig.tight_layout()
    fig.savefig(OUT / "static_grip_forces.svg")
    plt.close(fig)

    emg_on = synth_emg(60.0, 2000.0, envelope=residual_envelope(assisted), seed=5)
    emg_off = synth_emg(60.0, 2000.0, envelope=residual_envelope(unassisted), seed=5)
    iemg_on, iemg_off = iemg(emg_on), iemg(emg_off)
    reduction = (1.0 - iemg_on / iemg_off) * 100.0
    print("=== residual-driven synthetic EMG ===")
    print(f"  iEMG unassisted: {iemg_off:8.2f} mV*s")
    print(f"  iEMG assisted  : {iemg_on:8.2f} mV*s")
    print(f"  reduction      : {reduction:8.2f}%")
    print("  (the modeled clutch fully covers a 17.5 kg grip, so the reduction")
    print("   exceeds the published 74.63% average, which includes everything a")
    print("   real forearm keeps doing besides holding the dumbbell)")
    print(f"figure written to {OUT}/static_grip_forces.svg")


if __name__ == "__main__":
    main()
