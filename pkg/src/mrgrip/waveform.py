"""Soft-switching supply-voltage profiles for clutch engage/disengage.

The transition is a decaying sinusoid ringing around the target voltage;
the overshoot drives fast magnetization and demagnetization of the coils.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np


class SwitchMode(Enum):
    # AS_PRINTED keeps the published transition equation verbatim, which
    # starts at 2*v_target - v_current. BOUNDARY_CONSISTENT flips the sign
    # of the difference term so the profile starts exactly at v_current.
    AS_PRINTED = "as-printed"
    BOUNDARY_CONSISTENT = "boundary-consistent"


@dataclass(frozen=True)
class SwitchingProfile:
    """One engage or disengage transition of the supply voltage.

    Endpoints normally lie inside the driving clutch's characterized
    range; a profile retargeted mid-transition starts from the
    instantaneous (possibly ringing) voltage, so only finiteness is
    enforced here.
    """

    v_current: float                # voltage before the switch (V)
    v_target: float                 # voltage after the switch (V)
    tau: float = 0.05               # transition duration (s)
    m: int = 3                      # sine periods over the transition
    mode: SwitchMode = SwitchMode.BOUNDARY_CONSISTENT

    def __post_init__(self):
        if not math.isfinite(self.v_current) or not math.isfinite(self.v_target):
            raise ValueError("profile voltages must be finite")
        if not self.tau > 0:
            raise ValueError(f"tau must be positive, got {self.tau}")
        m = int(self.m)
        if m != self.m or m < 1:
            raise ValueError(f"m must be an integer >= 1, got {self.m!r}")
        object.__setattr__(self, "m", m)


def switching_voltage(t: float, profile: SwitchingProfile) -> float:
    """Supply voltage (V) at time t within the transition, t in [0, tau]."""
    if not 0.0 <= t <= profile.tau:
        raise ValueError(f"t={t:.6g} s outside the transition [0, {profile.tau:.6g}] s")
    if t == 0.0 and profile.mode is SwitchMode.BOUNDARY_CONSISTENT:
        return profile.v_current
    if profile.mode is SwitchMode.AS_PRINTED:
        diff = profile.v_target - profile.v_current
    else:
        diff = profile.v_current - profile.v_target
    x = profile.m * t / profile.tau
    return profile.v_target + diff * math.exp(-x) * math.sin(2.0 * math.pi * x + math.pi / 2.0)


def sample_profile(profile: SwitchingProfile, dt: float) -> tuple[np.ndarray, np.ndarray]:
    """Uniformly sample the transition on [0, tau], both endpoints included.

    Returns (times, voltages). The grid uses ceil(tau/dt) intervals, so the
    effective step never exceeds dt.
    """
    if not 0.0 < dt <= profile.tau:
        raise ValueError(f"dt={dt:.6g} s must lie in (0, tau={profile.tau:.6g}] s")
    n = max(1, math.ceil(profile.tau / dt - 1e-12))
    times = np.linspace(0.0, profile.tau, n + 1)
    if profile.mode is SwitchMode.AS_PRINTED:
        diff = profile.v_target - profile.v_current
    else:
        diff = profile.v_current - profile.v_target
    x = profile.m * times / profile.tau
    volts = profile.v_target + diff * np.exp(-x) * np.sin(2.0 * np.pi * x + np.pi / 2.0)
    volts[0] = switching_voltage(0.0, profile)
    return times, volts
