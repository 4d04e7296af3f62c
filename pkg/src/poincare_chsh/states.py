"""Two-qubit polarization states and density matrices.

Amplitudes are always ordered (HH, HV, VH, VV), with photon 1 as the
left tensor factor.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonUnitary, OutOfRange, ParseError

ORDERING = ("HH", "HV", "VH", "VV")

_SQRT2 = np.sqrt(2.0)


class TwoQubitState:
    """Normalized pure state of a photon pair.

    Global phase is kept as given; compare states with :func:`fidelity`.
    """

    __slots__ = ("_amps",)

    def __init__(self, amplitudes, normalize=True):
        amps = np.array(amplitudes, dtype=complex).reshape(-1)
        if amps.shape != (4,):
            raise ValueError(f"expected 4 amplitudes, got {amps.size}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise ValueError("zero vector is not a state")
        if normalize:
            amps = amps / norm
        amps.setflags(write=False)
        self._amps = amps

    @property
    def amplitudes(self) -> np.ndarray:
        return self._amps

    def __array__(self, dtype=None, copy=None):
        return np.array(self._amps, dtype=dtype)

    def __repr__(self):
        parts = ", ".join(f"{a:.6g}" for a in self._amps)
        return f"TwoQubitState([{parts}])"


class DensityMatrix:
    """4x4 density operator on the (HH, HV, VH, VV) basis."""

    __slots__ = ("_m",)

    def __init__(self, matrix, check=True):
        m = np.array(matrix, dtype=complex)
        if m.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
        if check:
            if not np.allclose(m, m.conj().T, atol=1e-12, rtol=0):
                raise ValueError("density matrix is not Hermitian")
            if abs(np.trace(m) - 1) > 1e-12:
                raise ValueError("density matrix trace is not 1")
            if np.linalg.eigvalsh(m).min() < -1e-10:
                raise ValueError("density matrix is not positive semidefinite")
        m.setflags(write=False)
        self._m = m

    @property
    def matrix(self) -> np.ndarray:
        return self._m

    def __array__(self, dtype=None, copy=None):
        return np.array(self._m, dtype=dtype)

    def purity(self) -> float:
        return float(np.real(np.trace(self._m @ self._m)))

    def __repr__(self):
        return f"DensityMatrix(purity={self.purity():.6g})"


def as_density_matrix(rho) -> np.ndarray:
    """Return the raw 4x4 matrix for a state, density matrix or array."""
    if isinstance(rho, DensityMatrix):
        return rho.matrix
    if isinstance(rho, TwoQubitState):
        return density_matrix(rho).matrix
    m = np.asarray(rho, dtype=complex)
    if m.shape == (4,):
        return np.outer(m, m.conj())
    if m.shape != (4, 4):
        raise ValueError(f"cannot interpret shape {m.shape} as a two-qubit state")
    return m


@dataclass(frozen=True)
class NamedState:
    """Tag for one of the states used throughout: phi+, phi'+, chi, psi'+ or phi(delta)."""

    kind: str
    delta: float = 0.0

    _KINDS = ("phi+", "phi'+", "chi", "psi'+", "phi")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown state kind {self.kind!r}")
        if not np.isfinite(self.delta):
            raise ValueError("delta must be finite")

    @classmethod
    def parse(cls, text: str) -> "NamedState":
        """Parse ``phi+``, ``phi'+``, ``chi``, ``psi'+`` or ``phi:delta=<radians>``."""
        from .angles import parse_angle

        t = text.strip().lower()
        if t.startswith("phi:"):
            key, _, value = t[4:].partition("=")
            if key.strip() != "delta" or not value:
                raise ParseError(f"bad phi(delta) spec {text!r}")
            return cls("phi", parse_angle(value))
        if t in ("phi+", "phi'+", "chi", "psi'+"):
            return cls(t)
        raise ParseError(f"unknown state tag {text!r}")

    def __str__(self):
        if self.kind == "phi":
            return f"phi:delta={self.delta!r}"
        return self.kind


PHI_PLUS = NamedState("phi+")
PHI_PRIME_PLUS = NamedState("phi'+")
CHI = NamedState("chi")
PSI_PRIME_PLUS = NamedState("psi'+")


def phi_delta(delta: float) -> NamedState:
    return NamedState("phi", float(delta))


def make_named_state(tag) -> TwoQubitState:
    """Build the state vector for a :class:`NamedState` (or its string tag)."""
    if isinstance(tag, str):
        tag = NamedState.parse(tag)
    if tag.kind == "phi+":
        amps = [1, 0, 0, 1]
    elif tag.kind == "phi'+":
        amps = [1, 0, 0, 1j]
    elif tag.kind == "psi'+":
        amps = [0, 1, 1j, 0]
    elif tag.kind == "chi":
        amps = [1, 1j, -1, 1j]
    else:
        amps = [1, 0, 0, np.exp(1j * tag.delta)]
    return TwoQubitState(amps)


def product_state(ket1, ket2) -> TwoQubitState:
    return TwoQubitState(np.kron(np.asarray(ket1, complex), np.asarray(ket2, complex)))


def density_matrix(psi) -> DensityMatrix:
    amps = np.asarray(psi, dtype=complex).reshape(4)
    return DensityMatrix(np.outer(amps, amps.conj()), check=False)


def apply_single_qubit(psi, U, which=1) -> TwoQubitState:
    """Apply a 2x2 unitary to photon 1 or photon 2 of a pure state."""
    U = np.asarray(U, dtype=complex)
    if U.shape != (2, 2) or np.linalg.norm(U.conj().T @ U - np.eye(2)) >= 1e-10:
        raise NonUnitary("operator is not a 2x2 unitary")
    if which in (1, "photon1"):
        op = np.kron(U, np.eye(2))
    elif which in (2, "photon2"):
        op = np.kron(np.eye(2), U)
    else:
        raise ValueError(f"which must be 1 or 2, got {which!r}")
    return TwoQubitState(op @ np.asarray(psi, dtype=complex), normalize=False)


def apply_local_unitaries(psi, U1, U2) -> TwoQubitState:
    return apply_single_qubit(apply_single_qubit(psi, U1, 1), U2, 2)


def fidelity(psi1, psi2) -> float:
    """Overlap |<psi1|psi2>|^2 of two pure states."""
    v1 = np.asarray(psi1, dtype=complex).reshape(4)
    v2 = np.asarray(psi2, dtype=complex).reshape(4)
    return float(min(abs(np.vdot(v1, v2)) ** 2, 1.0))


def mix_with_white_noise(rho, p: float) -> DensityMatrix:
    """(1-p) rho + p I/4."""
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"noise fraction must lie in [0, 1], got {p}")
    m = as_density_matrix(rho)
    return DensityMatrix((1 - p) * m + p * np.eye(4) / 4)


def random_pure_state(rng) -> TwoQubitState:
    """Haar-random two-qubit pure state."""
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    return TwoQubitState(v)


def random_unitary(rng) -> np.ndarray:
    """Haar-random 2x2 unitary via QR of a complex Ginibre matrix."""
    z = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))) / _SQRT2
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / abs(d))


def state_to_dict(psi) -> dict:
    amps = np.asarray(psi, dtype=complex).reshape(4)
    return {
        "ordering": list(ORDERING),
        "amplitudes": [[float(a.real), float(a.imag)] for a in amps],
    }


def state_from_dict(data: dict) -> TwoQubitState:
    ordering = data.get("ordering", list(ORDERING))
    if list(ordering) != list(ORDERING):
        raise ParseError(f"unsupported amplitude ordering {ordering}")
    try:
        amps = [complex(re, im) for re, im in data["amplitudes"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad state record: {exc}") from exc
    return TwoQubitState(amps)
