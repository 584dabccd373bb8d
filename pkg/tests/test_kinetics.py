import json

import numpy as np
import pytest

from mrgrip.clutch import peak_holding_force
from mrgrip.kinetics import (
    LinkageGeometry,
    clutch_to_fingertip,
    fingertip_coefficient,
    fingertip_to_clutch,
    load_geometry,
    member_forces,
    support_force,
    transmission_xi,
)

UNITY = LinkageGeometry(
    theta1=90.0, theta3=0.0, theta5=0.0, theta7=0.0, theta10=0.0,
    d87=90.0, d9_10=90.0, alpha=45.0, beta=45.0, l13=10.0, l14=10.0,
)


class TestTransmission:
    def test_measured_geometry(self):
        assert transmission_xi() == pytest.approx(3.702, abs=1e-3)
        assert transmission_xi() == pytest.approx(3.7018950436866565, rel=1e-12)

    def test_unity_configuration(self):
        assert transmission_xi(UNITY) == pytest.approx(1.0, rel=1e-12)

    def test_degenerate_linkage(self):
        with pytest.raises(ValueError, match=r"sin\(d87\)"):
            transmission_xi(LinkageGeometry(d87=0.0))
        with pytest.raises(ValueError, match=r"sin\(theta1\)"):
            transmission_xi(LinkageGeometry(theta1=0.0))


class TestMemberForces:
    def test_perpendicular_member(self):
        forces = member_forces(10.0, LinkageGeometry(theta1=90.0))
        assert forces.t3 == pytest.approx(10.0, rel=1e-12)
        assert forces.t4 == pytest.approx(0.0, abs=1e-12)

    def test_measured_geometry(self):
        forces = member_forces(10.0)
        assert forces.t3 == pytest.approx(17.88, abs=0.01)  # 10/sin(34 deg)
        assert forces.t5 == pytest.approx(10.0 / np.sin(np.radians(34)) / np.cos(np.radians(34)), rel=1e-12)

    def test_zero_load(self):
        forces = member_forces(0.0)
        assert forces.t3 == forces.t4 == forces.t5 == forces.f_mrc == 0.0

    def test_negative_load_rejected(self):
        with pytest.raises(ValueError):
            member_forces(-1.0)


class TestFingertipClutchMaps:
    def test_unit_load(self):
        assert fingertip_to_clutch(1.0) == pytest.approx(3.5055, abs=1e-4)

    def test_zero(self):
        assert fingertip_to_clutch(0.0) == 0.0
        assert clutch_to_fingertip(0.0) == 0.0

    def test_linear_in_lever_length(self):
        doubled = LinkageGeometry(l13=70.0)
        assert fingertip_to_clutch(1.0, doubled) == pytest.approx(
            2.0 * fingertip_to_clutch(1.0), rel=1e-12
        )

    def test_coefficient_brackets_published_value(self):
        coeff = fingertip_coefficient()
        assert 0.2845 <= coeff <= 0.2860
        assert clutch_to_fingertip(100.0) == pytest.approx(28.53, abs=0.01)

    def test_identity_configuration(self):
        for f in (0.0, 1.0, 7.3):
            assert clutch_to_fingertip(f, UNITY) == pytest.approx(f, rel=1e-12)
            assert fingertip_to_clutch(f, UNITY) == pytest.approx(f, rel=1e-12)

    def test_round_trip(self):
        for f in (0.0, 0.5, 17.0, 363.504):
            assert clutch_to_fingertip(fingertip_to_clutch(f), LinkageGeometry()) == pytest.approx(
                f, rel=1e-12, abs=1e-15
            )

    def test_linearity(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            f, a = float(rng.uniform(0, 100)), float(rng.uniform(0, 10))
            assert fingertip_to_clutch(a * f) == pytest.approx(
                a * fingertip_to_clutch(f), rel=1e-12, abs=1e-15
            )


class TestSupportForce:
    def test_two_volts(self):
        value = support_force(2.0)
        assert 410.0 <= value <= 420.0
        assert value == pytest.approx(414.781, abs=1e-3)

    def test_zero_volts(self):
        assert support_force(0.0) == pytest.approx(9.51, abs=0.01)

    def test_linear_in_finger_count(self):
        single = support_force(2.0, LinkageGeometry(n_fingers=1))
        assert support_force(2.0) == pytest.approx(4.0 * single, rel=1e-12)

    def test_composes_with_clutch_model(self):
        coeff = fingertip_coefficient()
        for v in (0.0, 1.0, 2.0, 3.0):
            assert support_force(v) == pytest.approx(
                4.0 * coeff * peak_holding_force(v), rel=1e-12
            )

    def test_voltage_domain(self):
        with pytest.raises(ValueError, match="characterized range"):
            support_force(3.5)


class TestGeometryIO:
    def test_defaults_round_trip(self, tmp_path):
        path = tmp_path / "geom.json"
        path.write_text(json.dumps({"theta1": 30.0, "l13": 40.0}))
        geom = load_geometry(path)
        assert geom.theta1 == 30.0
        assert geom.l13 == 40.0
        assert geom.beta == 110.7  # untouched default

    def test_unknown_field_rejected(self, tmp_path):
        path = tmp_path / "geom.json"
        path.write_text(json.dumps({"theta99": 1.0}))
        with pytest.raises(ValueError, match="unknown geometry fields"):
            load_geometry(path)

    def test_validation(self):
        with pytest.raises(ValueError):
            LinkageGeometry(l13=0.0)
        with pytest.raises(ValueError):
            LinkageGeometry(n_fingers=0)
