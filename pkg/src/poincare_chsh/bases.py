"""Measurement directions on the Poincare-Bloch sphere and great-circle bases.

|H> sits at the north pole, |D> on +x and |L> on +y.  A direction
(theta, phi) has projector pair

    |a>     = (cos(theta/2),  e^{i phi} sin(theta/2))
    |a_perp> = (sin(theta/2), -e^{i phi} cos(theta/2))
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .angles import format_angle, parse_angle
from .errors import NotOnEllipticityCircle, ParseError

TWO_PI = 2 * np.pi

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class MeasurementDirection:
    """Point on the sphere; theta in [0, pi], phi in [0, 2 pi)."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta, phi = float(self.theta), float(self.phi)
        if not (np.isfinite(theta) and np.isfinite(phi)):
            raise ValueError("direction angles must be finite")
        if not -1e-9 <= theta <= np.pi + 1e-9:
            raise ValueError(f"theta must lie in [0, pi], got {theta}")
        phi = phi % TWO_PI
        if phi >= TWO_PI:  # rounding of tiny negatives
            phi = 0.0
        object.__setattr__(self, "theta", min(max(theta, 0.0), np.pi))
        object.__setattr__(self, "phi", phi)

    @classmethod
    def from_bloch(cls, vec) -> "MeasurementDirection":
        x, y, z = np.asarray(vec, dtype=float) / np.linalg.norm(vec)
        theta = float(np.arctan2(np.hypot(x, y), z))
        if np.hypot(x, y) < 1e-15:
            return cls(theta, 0.0)
        return cls(theta, float(np.arctan2(y, x)))

    @property
    def bloch(self) -> np.ndarray:
        return bloch_vector(self)

    def antipode(self) -> "MeasurementDirection":
        return MeasurementDirection(np.pi - self.theta, self.phi + np.pi)

    def __str__(self):
        return f"theta={format_angle(self.theta)},phi={format_angle(self.phi)}"


class ProjectorPair(NamedTuple):
    ket_a: np.ndarray
    ket_a_perp: np.ndarray

    def projectors(self):
        a, ap = self
        return np.outer(a, a.conj()), np.outer(ap, ap.conj())

    def observable(self) -> np.ndarray:
        """|a><a| - |a_perp><a_perp|"""
        pa, pp = self.projectors()
        return pa - pp


H = MeasurementDirection(0.0, 0.0)
V = MeasurementDirection(np.pi, 0.0)
D = MeasurementDirection(np.pi / 2, 0.0)
A = MeasurementDirection(np.pi / 2, np.pi)
L = MeasurementDirection(np.pi / 2, np.pi / 2)
R = MeasurementDirection(np.pi / 2, 3 * np.pi / 2)


def projector_pair(d: MeasurementDirection) -> ProjectorPair:
    c, s = np.cos(d.theta / 2), np.sin(d.theta / 2)
    e = np.exp(1j * d.phi)
    return ProjectorPair(np.array([c, e * s]), np.array([s, -e * c]))


def bloch_vector(d: MeasurementDirection) -> np.ndarray:
    st = np.sin(d.theta)
    return np.array([st * np.cos(d.phi), st * np.sin(d.phi), np.cos(d.theta)])


def ket_to_bloch(ket) -> np.ndarray:
    """Bloch vector <sigma> of a (not necessarily normalized) single-photon ket."""
    k = np.asarray(ket, dtype=complex)
    k = k / np.linalg.norm(k)
    return np.array([np.real(np.vdot(k, s @ k)) for s in (SIGMA_X, SIGMA_Y, SIGMA_Z)])


def rotation_matrix(axis: str, angle: float) -> np.ndarray:
    """SU(2) rotation cos(angle/2) I - i sin(angle/2) sigma_axis.

    Acting on kets this turns the Bloch vector by +angle about ``axis``
    (right-hand rule).
    """
    c, s = np.cos(angle / 2), np.sin(angle / 2)
    if axis == "x":
        return np.array([[c, -1j * s], [-1j * s, c]])
    if axis == "y":
        return np.array([[c, -s], [s, c]], dtype=complex)
    if axis == "z":
        return np.array([[c - 1j * s, 0], [0, c + 1j * s]])
    raise ValueError(f"axis must be 'x', 'y' or 'z', got {axis!r}")


def so3_rotation(axis: str, angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    if axis == "x":
        return np.array([[1, 0, 0], [0, c, -s], [0, s, c]])
    if axis == "y":
        return np.array([[c, 0, s], [0, 1, 0], [-s, 0, c]])
    if axis == "z":
        return np.array([[c, -s, 0], [s, c, 0], [0, 0, 1]])
    raise ValueError(f"axis must be 'x', 'y' or 'z', got {axis!r}")


_E = np.eye(3)
_CANONICAL_AXES = {
    # (u, v): bloch(t) = cos(t) u + sin(t) v
    "hd": (_E[2], _E[0]),
    "hr": (_E[2], _E[1]),
    "dr": (_E[0], _E[1]),
}


@dataclass(frozen=True)
class GreatCircle:
    """One-parameter family of measurement directions.

    ``kind`` is ``hd``, ``hr``, ``dr``, ``rotz`` or ``rotx``; ``angle`` is the
    rotation applied to the hd circle for the last two.  Points are indexed
    by the Bloch angle ``t`` along the circle (period 2 pi).  Each circle also
    has a native parameter, the one used in the closed-form expressions:
    the polarizer angle alpha = t/2 for hd, theta for hr, phi for dr and t
    itself for rotated circles.
    """

    kind: str
    angle: float = 0.0

    def __post_init__(self):
        if self.kind not in ("hd", "hr", "dr", "rotz", "rotx"):
            raise ValueError(f"unknown great-circle kind {self.kind!r}")
        if self.kind in ("hd", "hr", "dr") and self.angle != 0.0:
            raise ValueError("canonical circles take no rotation angle")

    @property
    def axes(self):
        if self.kind in _CANONICAL_AXES:
            return _CANONICAL_AXES[self.kind]
        u, v = _CANONICAL_AXES["hd"]
        rot = so3_rotation("z" if self.kind == "rotz" else "x", self.angle)
        return rot @ u, rot @ v

    @property
    def normal(self) -> np.ndarray:
        u, v = self.axes
        return np.cross(u, v)

    @property
    def native_scale(self) -> float:
        """Bloch angle per unit of native parameter."""
        return 2.0 if self.kind == "hd" else 1.0

    @property
    def param_name(self) -> str:
        return {"hd": "alpha", "hr": "theta", "dr": "phi"}.get(self.kind, "t")

    @property
    def period(self) -> float:
        """Period of the native parameter."""
        return TWO_PI / self.native_scale

    @property
    def quarter_period(self) -> float:
        """Native-parameter step from an eigenstate to an unbiased one."""
        return self.period / 4

    def bloch(self, t):
        """Bloch vectors at Bloch angle(s) ``t``; shape ``t.shape + (3,)``."""
        u, v = self.axes
        t = np.asarray(t, dtype=float)[..., None]
        return np.cos(t) * u + np.sin(t) * v

    def bloch_native(self, x):
        return self.bloch(np.asarray(x, dtype=float) * self.native_scale)

    def point(self, t: float) -> MeasurementDirection:
        return MeasurementDirection.from_bloch(self.bloch(t))

    def point_native(self, x: float) -> MeasurementDirection:
        return self.point(x * self.native_scale)

    def contains(self, d: MeasurementDirection, tol: float = 1e-10) -> bool:
        return abs(float(self.normal @ bloch_vector(d))) < tol

    def label(self) -> str:
        if self.kind in ("rotz", "rotx"):
            return f"{self.kind}:{format_angle(self.angle)}"
        return self.kind


HD = GreatCircle("hd")
HR = GreatCircle("hr")
DR = GreatCircle("dr")


def rotated_z(angle: float) -> GreatCircle:
    return GreatCircle("rotz", float(angle))


def rotated_x(angle: float) -> GreatCircle:
    return GreatCircle("rotx", float(angle))


def circle_point(c: GreatCircle, t: float) -> MeasurementDirection:
    """Direction at Bloch angle ``t`` on circle ``c`` (for hd, t = 2 alpha)."""
    return c.point(t)


def rotated_circle_kets(c: GreatCircle, t: float) -> np.ndarray:
    """|a(t)> on a rotated circle built by SU(2) action on the hd ket."""
    base = rotation_matrix("y", t) @ np.array([1, 0], dtype=complex)
    if c.kind == "rotz":
        return rotation_matrix("z", c.angle) @ base
    if c.kind == "rotx":
        return rotation_matrix("x", c.angle) @ base
    if c.kind == "hd":
        return base
    raise ValueError("only hd-derived circles have an SU(2) construction")


def ellipticity(d: MeasurementDirection, tol: float = 1e-10) -> float:
    """Signed axis ratio c/d of the polarization ellipse for a point on hr or dr.

    The sign gives the handedness (positive towards |L>).
    """
    x, y, z = bloch_vector(d)
    if HR.contains(d, tol):
        return float(np.tan(np.arctan2(y, z) / 2))
    if DR.contains(d, tol):
        return float(np.tan(np.arctan2(y, x) / 2))
    raise NotOnEllipticityCircle(f"{d} lies on neither the hr nor the dr circle")


def parse_circle(text: str) -> GreatCircle:
    """``hd``, ``hr``, ``dr``, ``rotz:<angle>`` or ``rotx:<angle>``."""
    t = text.strip().lower()
    if t in ("hd", "hr", "dr"):
        return GreatCircle(t)
    kind, _, rest = t.partition(":")
    if kind in ("rotz", "rotx") and rest:
        return GreatCircle(kind, parse_angle(rest))
    raise ParseError(f"cannot parse great circle {text!r}")


def parse_direction(text: str) -> MeasurementDirection:
    """Parse ``theta=<rad>,phi=<rad>`` or a circle point ``hd:<x>``, ``rotz:<rot>:<t>``.

    Circle points take the circle's native parameter, so ``hd:pi/8`` is
    linear polarization at 22.5 degrees.
    """
    t = text.strip().lower()
    if t.startswith("theta="):
        fields = dict(item.split("=", 1) for item in t.split(",") if "=" in item)
        try:
            return MeasurementDirection(
                parse_angle(fields["theta"]), parse_angle(fields.get("phi", "0"))
            )
        except (KeyError, ValueError) as exc:
            raise ParseError(f"cannot parse direction {text!r}: {exc}") from exc
    parts = t.split(":")
    if parts[0] in ("hd", "hr", "dr") and len(parts) == 2:
        return GreatCircle(parts[0]).point_native(parse_angle(parts[1]))
    if parts[0] in ("rotz", "rotx") and len(parts) == 3:
        return GreatCircle(parts[0], parse_angle(parts[1])).point(parse_angle(parts[2]))
    raise ParseError(f"cannot parse direction {text!r}")
