"""Digital twin of an MR clutch-driven grip-assist hand exoskeleton.

Subpackages model the clutch electro-mechanics, the soft-switching supply
waveform, the finger-linkage statics, the grip-intent state machine, the
surface-EMG fatigue metrics, and a fixed-step scenario engine tying them
together.
"""

__version__ = "0.1.0"

from .clutch import (
    ClutchConfig,
    CoilElectrical,
    FitResult,
    ForceVoltageModel,
    HysteresisState,
    ac_effective_resistance,
    coil_current_step,
    fit_force_voltage,
    force_to_power_ratio,
    hysteresis_step,
    peak_holding_force,
    power_consumption,
)
from .control import (
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
from .emg import (
    AnalysisWindow,
    EmgTrace,
    bandpass,
    iemg,
    linear_envelope,
    mdf,
    reduction_percent,
    rms_windowed,
    segment,
    synth_emg,
)
from .kinetics import (
    LinkageGeometry,
    MemberForces,
    clutch_to_fingertip,
    fingertip_coefficient,
    fingertip_to_clutch,
    load_geometry,
    member_forces,
    support_force,
    transmission_xi,
)
from .report import Discrepancy, discrepancy_report, support_poly_audit
from .sim import (
    IntentEvent,
    ScenarioConfig,
    ScenarioKind,
    SimLog,
    SupplyTracker,
    carry_scenario,
    lift_scenario,
    load_scenario,
    required_support,
    residual_envelope,
    run_scenario,
    static_grip_scenario,
    synth_sensors,
)
from .waveform import SwitchMode, SwitchingProfile, sample_profile, switching_voltage
