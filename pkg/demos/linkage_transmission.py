#!/usr/bin/env python3
"""Trace a fingertip load through the linkage and up to whole-hand support.

Prints the member forces for a unit fingertip load, the transmission
factor and the fingertip coefficient, then composes the linkage with the
clutch force model into the support-force curve and compares it against
the published closed-form polynomial and headline figure.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from mrgrip.kinetics import (
    LinkageGeometry,
    fingertip_coefficient,
    fingertip_to_clutch,
    member_forces,
    support_force,
    transmission_xi,
)
from mrgrip.report import (
    PUBLISHED_SUPPORT_AT_2V,
    coefficient_mismatch_summary,
    published_support_polynomial,
)

OUT = Path(__file__).with_name("out")


def main():
    OUT.mkdir(exist_ok=True)
    geom = LinkageGeometry()

    print("=== measured grip-posture geometry ===")
    print(f"  theta1={geom.theta1} deg, theta5={geom.theta5} deg, theta7={geom.theta7} deg")
    print(f"  d87={geom.d87} deg, d9_10={geom.d9_10} deg, "
          f"alpha={geom.alpha} deg, beta={geom.beta} deg")
    print(f"  levers l13={geom.l13} mm, l14={geom.l14} mm, {geom.n_fingers} fingers")
    print()

    forces = member_forces(10.0, geom)
    print("=== member forces for a 10 N fingertip load ===")
    print(f"  T3 = {forces.t3:7.2f} N   T4 = {forces.t4:7.2f} N   T5 = {forces.t5:7.2f} N")
    print(f"  transmission factor xi  = {transmission_xi(geom):.4f}")
    print(f"  clutch force demanded   = {forces.f_mrc:7.2f} N "
          f"({fingertip_to_clutch(1.0, geom):.4f} N per fingertip N)")
    print(f"  fingertip coefficient   = {fingertip_coefficient(geom):.5f} "
          f"(published rounding: 0.285)")
    print()

    volts = np.linspace(0.0, 3.0, 301)
    composed = np.array([support_force(float(v), geom) for v in volts])
    published = np.array([published_support_polynomial(float(v)) for v in volts])

    print("=== whole-hand support force at the recommended 2.0 V ===")
    print(f"  composed model        : {support_force(2.0, geom):7.2f} N")
    print(f"  published polynomial  : {published_support_polynomial(2.0):7.2f} N")
    print(f"  published headline    : {PUBLISHED_SUPPORT_AT_2V:7.2f} N")
    print(f"  {coefficient_mismatch_summary()}")
    print()

    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(volts, composed, label="composed (clutch model x linkage)", lw=1.5)
    ax.plot(volts, published, label="published closed form", ls="--", lw=1.2)
    ax.plot(2.0, PUBLISHED_SUPPORT_AT_2V, "o", color="tab:red", label="published headline at 2 V")
    ax.set_xlabel("supply voltage (V)")
    ax.set_ylabel("support force (N)")
    ax.set_title("whole-hand support force vs supply voltage")
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(OUT / "support_force.svg")
    plt.close(fig)
    print(f"figure written to {OUT}/support_force.svg")


if __name__ == "__main__":
    main()
