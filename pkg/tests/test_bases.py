import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from poincare_chsh import bases
from poincare_chsh.angles import format_angle, parse_angle
from poincare_chsh.bases import (
    DR,
    HD,
    HR,
    GreatCircle,
    MeasurementDirection,
    bloch_vector,
    circle_point,
    ellipticity,
    projector_pair,
    rotated_x,
    rotated_z,
    rotation_matrix,
)
from poincare_chsh.errors import NotOnEllipticityCircle, ParseError

from conftest import D, H, L

thetas = st.floats(0, np.pi)
phis = st.floats(0, 2 * np.pi, exclude_max=True)
reals = st.floats(-20, 20, allow_nan=False)


def same_up_to_phase(u, v, tol=1e-12):
    return abs(abs(np.vdot(u, v)) - 1) < tol


def random_directions(rng, n):
    return [MeasurementDirection(np.arccos(rng.uniform(-1, 1)), rng.uniform(0, 2 * np.pi))
            for _ in range(n)]


class TestProjectorPair:
    def test_north_pole(self):
        np.testing.assert_allclose(projector_pair(MeasurementDirection(0, 0)).ket_a, H)

    def test_diagonal(self):
        np.testing.assert_allclose(projector_pair(MeasurementDirection(np.pi / 2, 0)).ket_a, D, atol=1e-15)

    def test_left_circular(self):
        np.testing.assert_allclose(projector_pair(MeasurementDirection(np.pi / 2, np.pi / 2)).ket_a, L,
                                   atol=1e-15)

    def test_orthonormal(self, rng):
        for d in random_directions(rng, 100):
            a, ap = projector_pair(d)
            assert abs(np.vdot(a, ap)) < 1e-12
            assert np.vdot(a, a).real == pytest.approx(1, abs=1e-12)
            assert np.vdot(ap, ap).real == pytest.approx(1, abs=1e-12)

    def test_completeness(self, rng):
        for d in random_directions(rng, 100):
            pa, pp = projector_pair(d).projectors()
            np.testing.assert_allclose(pa + pp, np.eye(2), atol=1e-12)

    @given(thetas, phis)
    def test_perp_is_antipode_ket(self, theta, phi):
        d = MeasurementDirection(theta, phi)
        assert same_up_to_phase(projector_pair(d).ket_a_perp, projector_pair(d.antipode()).ket_a)

    @given(thetas, phis)
    def test_ket_matches_bloch(self, theta, phi):
        d = MeasurementDirection(theta, phi)
        np.testing.assert_allclose(bases.ket_to_bloch(projector_pair(d).ket_a), bloch_vector(d),
                                   atol=1e-12)


class TestBlochVector:
    @given(phis)
    def test_pole(self, phi):
        np.testing.assert_allclose(bloch_vector(MeasurementDirection(0, phi)), [0, 0, 1])

    def test_d_on_x(self):
        np.testing.assert_allclose(bloch_vector(MeasurementDirection(np.pi / 2, 0)), [1, 0, 0], atol=1e-15)

    def test_l_on_y(self):
        np.testing.assert_allclose(bloch_vector(MeasurementDirection(np.pi / 2, np.pi / 2)), [0, 1, 0],
                                   atol=1e-15)

    @given(thetas, phis)
    def test_unit(self, theta, phi):
        assert np.linalg.norm(bloch_vector(MeasurementDirection(theta, phi))) == pytest.approx(1, abs=1e-12)

    @given(thetas, phis)
    def test_antipode(self, theta, phi):
        d = MeasurementDirection(theta, phi)
        np.testing.assert_allclose(d.antipode().bloch, -d.bloch, atol=1e-12)

    @given(thetas, phis)
    def test_from_bloch_round_trip(self, theta, phi):
        d = MeasurementDirection(theta, phi)
        np.testing.assert_allclose(MeasurementDirection.from_bloch(d.bloch).bloch, d.bloch, atol=1e-12)


ALL_CIRCLES = [HD, HR, DR, rotated_z(0.4), rotated_x(1.1), rotated_z(2.9), rotated_x(0.0)]


class TestGreatCircles:
    def test_hd_origin_is_h(self):
        np.testing.assert_allclose(circle_point(HD, 0).bloch, [0, 0, 1])

    def test_hr_quarter_is_l(self):
        np.testing.assert_allclose(circle_point(HR, np.pi / 2).bloch, [0, 1, 0], atol=1e-15)

    def test_hd_lower_half_uses_phi_pi(self):
        d = circle_point(HD, 3 * np.pi / 2)
        assert d.theta == pytest.approx(np.pi / 2)
        assert d.phi == pytest.approx(np.pi)

    def test_hd_native_is_polarizer_angle(self):
        np.testing.assert_allclose(HD.point_native(np.pi / 8).bloch, circle_point(HD, np.pi / 4).bloch)

    @pytest.mark.parametrize("c", ALL_CIRCLES, ids=lambda c: c.label())
    def test_planar_zero_mean(self, c):
        t = np.linspace(0, 2 * np.pi, 64, endpoint=False)
        pts = c.bloch(t)
        np.testing.assert_allclose(pts.mean(axis=0), 0, atol=1e-10)
        assert np.abs(pts @ c.normal).max() < 1e-10

    @pytest.mark.parametrize("c", ALL_CIRCLES, ids=lambda c: c.label())
    def test_half_period_antipodes(self, c):
        for t in np.linspace(0, 2 * np.pi, 13):
            np.testing.assert_allclose(c.point(t + np.pi).bloch, -c.point(t).bloch, atol=1e-10)

    @pytest.mark.parametrize("c", ALL_CIRCLES, ids=lambda c: c.label())
    def test_closure(self, c):
        for t in np.linspace(0, 2 * np.pi, 13):
            assert np.linalg.norm(c.point(t + 2 * np.pi).bloch - c.point(t).bloch) < 1e-10

    def test_rotz_zero_is_hd(self):
        for t in np.arange(0, 2 * np.pi, np.pi / 7):
            np.testing.assert_allclose(rotated_z(0).bloch(t), HD.bloch(t), atol=1e-10)

    def test_rotz_quarter_is_hr(self):
        for t in np.arange(0, 2 * np.pi, np.pi / 7):
            np.testing.assert_allclose(rotated_z(np.pi / 2).bloch(t), HR.bloch(t), atol=1e-10)

    def test_rotx_quarter_spans_dr(self):
        # same great circle as dr; the parameter origin sits at -y rather than +x
        c = rotated_x(np.pi / 2)
        for t in np.arange(0, 2 * np.pi, np.pi / 7):
            assert DR.contains(c.point(t))
            np.testing.assert_allclose(c.bloch(t), DR.bloch(t - np.pi / 2), atol=1e-10)

    @pytest.mark.parametrize("c", [rotated_z(0.7), rotated_x(2.2), rotated_z(np.pi / 2), HD])
    def test_su2_construction_agrees(self, c):
        for t in np.linspace(0, 2 * np.pi, 11):
            ket = bases.rotated_circle_kets(c, t)
            np.testing.assert_allclose(bases.ket_to_bloch(ket), c.bloch(t), atol=1e-12)

    def test_native_periods(self):
        assert HD.period == pytest.approx(np.pi)
        assert HR.period == DR.period == pytest.approx(2 * np.pi)
        assert HD.quarter_period == pytest.approx(np.pi / 4)


class TestEllipticity:
    def test_hr_linear(self):
        assert ellipticity(circle_point(HR, 0)) == pytest.approx(0)

    def test_hr_circular(self):
        assert ellipticity(circle_point(HR, np.pi / 2)) == pytest.approx(1)

    def test_dr_third(self):
        assert ellipticity(circle_point(DR, np.pi / 3)) == pytest.approx(np.tan(np.pi / 6))
        assert np.tan(np.pi / 6) == pytest.approx(0.5774, abs=1e-4)

    def test_off_circle(self):
        with pytest.raises(NotOnEllipticityCircle):
            ellipticity(MeasurementDirection(1.0, 0.4))


class TestRotationMatrix:
    def test_identity(self):
        np.testing.assert_allclose(rotation_matrix("y", 0), np.eye(2))

    @given(reals)
    def test_y_generates_hd(self, theta):
        out = rotation_matrix("y", theta) @ H
        np.testing.assert_allclose(out, [np.cos(theta / 2), np.sin(theta / 2)], atol=1e-12)

    @given(reals)
    def test_x_generates_lower_hr(self, theta):
        out = rotation_matrix("x", theta) @ H
        np.testing.assert_allclose(out, [np.cos(theta / 2), -1j * np.sin(theta / 2)], atol=1e-12)

    @given(reals, st.sampled_from("xyz"))
    def test_unitary(self, angle, axis):
        u = rotation_matrix(axis, angle)
        np.testing.assert_allclose(u.conj().T @ u, np.eye(2), atol=1e-12)

    def test_matches_exponential_with_minus_sign(self):
        from scipy.linalg import expm
        for axis, s in zip("xyz", (bases.SIGMA_X, bases.SIGMA_Y, bases.SIGMA_Z)):
            np.testing.assert_allclose(rotation_matrix(axis, 0.83), expm(-0.5j * 0.83 * s), atol=1e-12)

    def test_generation_on_circles(self):
        for theta in np.arange(0, 2 * np.pi, np.pi / 9):
            assert same_up_to_phase(rotation_matrix("y", theta) @ H,
                                    projector_pair(circle_point(HD, theta)).ket_a)
            # R_x walks the hr circle in the -y sense
            assert same_up_to_phase(rotation_matrix("x", theta) @ H,
                                    projector_pair(circle_point(HR, -theta)).ket_a)
            dr0 = projector_pair(circle_point(DR, 0)).ket_a
            assert same_up_to_phase(rotation_matrix("z", theta) @ dr0,
                                    projector_pair(circle_point(DR, theta)).ket_a)


class TestParsing:
    @pytest.mark.parametrize("text,value", [
        ("pi/4", np.pi / 4), ("-3pi/8", -3 * np.pi / 8), ("2*pi", 2 * np.pi), ("0.5", 0.5),
        ("pi", np.pi), ("  -pi/2 ", -np.pi / 2),
    ])
    def test_parse_angle(self, text, value):
        assert parse_angle(text) == pytest.approx(value)

    @pytest.mark.parametrize("text", ["pie", "pi/0", "nan", ""])
    def test_parse_angle_rejects(self, text):
        with pytest.raises(ParseError):
            parse_angle(text)

    @pytest.mark.parametrize("x,text", [(0, "0"), (np.pi / 4, "pi/4"), (-3 * np.pi / 8, "-3pi/8"),
                                        (2 * np.pi, "2pi"), (0.1, "0.1")])
    def test_format_angle(self, x, text):
        assert format_angle(x) == text

    def test_direction_forms(self):
        assert bases.parse_direction("theta=pi/2,phi=pi/2") == MeasurementDirection(np.pi / 2, np.pi / 2)
        np.testing.assert_allclose(bases.parse_direction("hd:pi/8").bloch, HD.point(np.pi / 4).bloch)
        np.testing.assert_allclose(bases.parse_direction("rotz:pi/2:pi/2").bloch, [0, 1, 0], atol=1e-15)
        np.testing.assert_allclose(bases.parse_direction("dr:pi").bloch, [-1, 0, 0], atol=1e-15)

    def test_circle_forms(self):
        assert bases.parse_circle("rotx:pi/2") == GreatCircle("rotx", np.pi / 2)
        with pytest.raises(ParseError):
            bases.parse_circle("xy")
