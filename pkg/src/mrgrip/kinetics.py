"""Static force transmission of one finger linkage.

Maps fingertip load to clutch shaft force and back through the lever and
link angles of the frozen heavy-grip posture, and composes the per-finger
map with the clutch force model into a whole-hand support force.

Angles are stored in degrees as measured; lever lengths in millimetres.
All maps are linear in force.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields

from .clutch import DEFAULT_FORCE_MODEL, ForceVoltageModel, peak_holding_force

_SINGULARITY_EPS = 1e-9


@dataclass(frozen=True)
class LinkageGeometry:
    """Measured angles and lever lengths of the finger transmission.

    theta8 and theta9 never appear alone, only the differences d87 and
    d9_10, so the differences are stored directly.
    """

    theta1: float = 34.0    # fingertip member angle (deg)
    theta3: float = 0.0     # fingertip link angle at the second joint (deg)
    theta5: float = 34.0    # middle link angle (deg)
    theta7: float = 25.2    # proximal link angle (deg)
    theta10: float = 6.9    # base link angle (deg)
    d87: float = 50.0       # theta8 - theta7 (deg)
    d9_10: float = 43.1     # theta9 - theta10 (deg)
    alpha: float = 49.4     # V-connector angle on the linkage side (deg)
    beta: float = 110.7     # V-connector angle on the clutch side (deg)
    l13: float = 35.0       # V-connector lever length, linkage side (mm)
    l14: float = 30.0       # V-connector lever length, clutch side (mm)
    n_fingers: int = 4      # clutch-equipped fingers

    def __post_init__(self):
        if self.l13 <= 0 or self.l14 <= 0:
            raise ValueError(f"lever lengths must be positive, got l13={self.l13}, l14={self.l14}")
        if self.n_fingers < 1:
            raise ValueError(f"n_fingers must be >= 1, got {self.n_fingers}")


@dataclass(frozen=True)
class MemberForces:
    """Axial member forces for a given fingertip load."""

    t3: float       # fingertip member axial force (N)
    t4: float       # reaction at the fingertip joint (N)
    t5: float       # middle member axial force (N)
    f_load: float   # applied fingertip load (N)
    f_mrc: float    # clutch shaft force balancing the load (N)
    xi: float       # angular transmission factor


DEFAULT_GEOMETRY = LinkageGeometry()


def _checked(value: float, name: str) -> float:
    if abs(value) < _SINGULARITY_EPS:
        raise ValueError(f"singular linkage configuration: {name} vanishes")
    return value


def transmission_xi(geom: LinkageGeometry = DEFAULT_GEOMETRY) -> float:
    """Angular transmission factor of the link chain (dimensionless)."""
    r = math.radians
    num = math.cos(r(geom.theta3)) * math.cos(r(geom.theta7)) * math.cos(r(geom.theta10))
    den = (
        _checked(math.sin(r(geom.theta1)), "sin(theta1)")
        * _checked(math.cos(r(geom.theta5)), "cos(theta5)")
        * _checked(math.sin(r(geom.d87)), "sin(d87)")
        * _checked(math.sin(r(geom.d9_10)), "sin(d9_10)")
    )
    return num / den


def member_forces(f_load: float, geom: LinkageGeometry = DEFAULT_GEOMETRY) -> MemberForces:
    """Axial member forces balancing a fingertip load f_load (N)."""
    if f_load < 0:
        raise ValueError(f"f_load must be >= 0, got {f_load:.6g} N")
    r = math.radians
    sin1 = _checked(math.sin(r(geom.theta1)), "sin(theta1)")
    cos5 = _checked(math.cos(r(geom.theta5)), "cos(theta5)")
    t3 = f_load / sin1
    t4 = t3 * math.cos(r(geom.theta1))
    t5 = f_load * math.cos(r(geom.theta3)) / (sin1 * cos5)
    return MemberForces(
        t3=t3,
        t4=t4,
        t5=t5,
        f_load=f_load,
        f_mrc=fingertip_to_clutch(f_load, geom),
        xi=transmission_xi(geom),
    )


def fingertip_to_clutch(f_load: float, geom: LinkageGeometry = DEFAULT_GEOMETRY) -> float:
    """Clutch shaft force (N) required to balance a fingertip load (N)."""
    if f_load < 0:
        raise ValueError(f"f_load must be >= 0, got {f_load:.6g} N")
    r = math.radians
    sin_a = _checked(math.sin(r(geom.alpha)), "sin(alpha)")
    sin_b = _checked(math.sin(r(geom.beta)), "sin(beta)")
    return (sin_a * geom.l13) / (sin_b * geom.l14) * transmission_xi(geom) * f_load


def clutch_to_fingertip(f_mrc: float, geom: LinkageGeometry = DEFAULT_GEOMETRY) -> float:
    """Fingertip load (N) supported by a clutch shaft force (N)."""
    if f_mrc < 0:
        raise ValueError(f"f_mrc must be >= 0, got {f_mrc:.6g} N")
    r = math.radians
    sin_a = _checked(math.sin(r(geom.alpha)), "sin(alpha)")
    sin_b = _checked(math.sin(r(geom.beta)), "sin(beta)")
    xi = _checked(transmission_xi(geom), "xi")
    return (sin_b * geom.l14) / (sin_a * geom.l13) / xi * f_mrc


def fingertip_coefficient(geom: LinkageGeometry = DEFAULT_GEOMETRY) -> float:
    """Fingertip newtons supported per newton of clutch force (about 0.285)."""
    return clutch_to_fingertip(1.0, geom)


def support_force(
    v: float,
    geom: LinkageGeometry = DEFAULT_GEOMETRY,
    model: ForceVoltageModel = DEFAULT_FORCE_MODEL,
) -> float:
    """Whole-hand support force (N) at supply voltage v.

    Always computed by composing the clutch force model with the linkage
    map; the published closed-form support polynomial exists only in the
    discrepancy report.
    """
    return geom.n_fingers * clutch_to_fingertip(peak_holding_force(v, model), geom)


def load_geometry(path) -> LinkageGeometry:
    """Read a geometry override file: JSON with LinkageGeometry field names.

    Missing fields keep their defaults; unknown fields are rejected.
    """
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError(f"geometry file {path} must contain a JSON object")
    known = {f.name for f in fields(LinkageGeometry)}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown geometry fields {sorted(unknown)}; expected {sorted(known)}")
    try:
        coerced = {
            name: int(value) if name == "n_fingers" else float(value)
            for name, value in data.items()
        }
    except (TypeError, ValueError) as exc:
        raise ValueError(f"bad geometry file {path}: {exc}") from exc
    return LinkageGeometry(**coerced)
