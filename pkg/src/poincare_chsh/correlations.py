"""Joint measurement statistics for two photons.

The correlation <AB> is available by three independent routes:

* the correlation tensor, <AB> = a^T T b with T_ij = Tr[rho (sigma_i x sigma_j)];
* Born-rule joint probabilities, P(a,b) - P(a,b_perp) - P(a_perp,b) + P(a_perp,b_perp);
* the two-photon observable directly, Tr[(A x B) rho].

:func:`closed_form_expectation` tabulates the analytic results for the
named states in the hd, hr, dr and mixed hd-hr bases.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .bases import (
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    MeasurementDirection,
    ProjectorPair,
    bloch_vector,
    projector_pair,
)
from .errors import NotNormalized, UnsupportedCombination
from .states import NamedState, as_density_matrix

PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)
_PAULI_PAIRS = np.array([[np.kron(si, sj) for sj in PAULIS] for si in PAULIS])


class JointProbabilities(NamedTuple):
    p_ab: float
    p_ab_perp: float
    p_aperp_b: float
    p_aperp_bperp: float

    @property
    def total(self) -> float:
        return self.p_ab + self.p_ab_perp + self.p_aperp_b + self.p_aperp_bperp


def correlation_matrix(rho) -> np.ndarray:
    """Real 3x3 correlation tensor T_ij = Tr[rho (sigma_i x sigma_j)]."""
    m = as_density_matrix(rho)
    # Tr[rho P] = sum_kl rho_kl P_lk
    traces = np.einsum("kl,ijlk->ij", m, _PAULI_PAIRS)
    residue = np.abs(traces.imag).max()
    if residue > 1e-10:
        raise ValueError(f"correlation traces have imaginary residue {residue:.3g}")
    return traces.real


def local_bloch_vectors(rho):
    """Single-photon Bloch vectors (Tr[rho sigma_i x I], Tr[rho I x sigma_j])."""
    m = as_density_matrix(rho)
    eye = np.eye(2)
    r1 = np.array([np.trace(m @ np.kron(s, eye)).real for s in PAULIS])
    r2 = np.array([np.trace(m @ np.kron(eye, s)).real for s in PAULIS])
    return r1, r2


def _vec(d) -> np.ndarray:
    if isinstance(d, MeasurementDirection):
        return bloch_vector(d)
    return np.asarray(d, dtype=float)


def expectation_tensor(rho, a, b) -> float:
    """<AB> = a^T T b for directions (or Bloch vectors) ``a`` and ``b``."""
    T = correlation_matrix(rho)
    return float(_vec(a) @ T @ _vec(b))


def _pair(p) -> ProjectorPair:
    return projector_pair(p) if isinstance(p, MeasurementDirection) else ProjectorPair(*p)


def joint_probabilities(rho, a, b) -> JointProbabilities:
    """Born-rule probabilities of the four joint outcomes."""
    m = as_density_matrix(rho)
    pa, pap = _pair(a).projectors()
    pb, pbp = _pair(b).projectors()

    def prob(x, y):
        return float(np.clip(np.trace(m @ np.kron(x, y)).real, 0.0, 1.0))

    return JointProbabilities(prob(pa, pb), prob(pa, pbp), prob(pap, pb), prob(pap, pbp))


def expectation_probs(jp: JointProbabilities) -> float:
    """Signed sum P(a,b) - P(a,b_perp) - P(a_perp,b) + P(a_perp,b_perp)."""
    if abs(jp.total - 1.0) > 1e-9:
        raise NotNormalized(f"joint probabilities sum to {jp.total}")
    return jp.p_ab - jp.p_ab_perp - jp.p_aperp_b + jp.p_aperp_bperp


def expectation_operator(rho, a, b) -> float:
    """Tr[(A x B) rho] with A = |a><a| - |a_perp><a_perp|."""
    m = as_density_matrix(rho)
    op = np.kron(_pair(a).observable(), _pair(b).observable())
    return float(np.trace(op @ m).real)


def aspect_correlation(alpha_a: float, alpha_b: float) -> float:
    """Standard linear-polarizer correlation E(alpha_a, alpha_b) = cos 2(alpha_a - alpha_b)."""
    out = np.cos(2 * (np.asarray(alpha_a, float) - np.asarray(alpha_b, float)))
    return float(out) if out.ndim == 0 else out


# (state kind, basis pair) -> f(t_a, t_b), angles in each basis' native parameter
_CLOSED_FORMS = {
    ("phi+", "hd-hd"): aspect_correlation,
    ("phi'+", "hd-hd"): lambda a, b: np.cos(2 * a) * np.cos(2 * b),
    ("chi", "hd-hd"): lambda a, b: -np.sin(2 * a) * np.cos(2 * b),
    ("phi+", "hr-hr"): lambda a, b: np.cos(a + b),
    ("phi'+", "hr-hr"): lambda a, b: np.cos(a) * np.cos(b),
    ("chi", "hr-hr"): lambda a, b: np.cos(a) * np.sin(b),
    ("phi+", "dr-dr"): lambda a, b: np.cos(a + b),
    ("phi'+", "dr-dr"): lambda a, b: np.sin(a + b),
    ("chi", "dr-dr"): lambda a, b: np.sin(a) * np.cos(b),
    ("phi'+", "hd-hr"): lambda a, b: np.cos(2 * (a - b / 2)),
    ("chi", "hd-hr"): lambda a, b: -np.sin(2 * (a - b / 2)),
    ("phi+", "hd-hr"): lambda a, b: np.cos(2 * a) * np.cos(b),
}

CLOSED_FORM_TABLE = tuple(_CLOSED_FORMS)
BASIS_PAIRS = ("hd-hd", "hr-hr", "dr-dr", "hd-hr")


def closed_form_expectation(state, basis_pair: str, t_a, t_b):
    """Analytic <AB> for a named state in a tabulated basis pair.

    ``basis_pair`` is ``"hd-hd"``, ``"hr-hr"``, ``"dr-dr"`` or ``"hd-hr"``
    (photon 1 on hd, photon 2 on hr).  Angles are the native parameters:
    alpha for hd, theta for hr, phi for dr.  Array arguments broadcast.
    """
    kind = state.kind if isinstance(state, NamedState) else NamedState.parse(state).kind
    try:
        f = _CLOSED_FORMS[(kind, basis_pair)]
    except KeyError:
        raise UnsupportedCombination(
            f"no closed form for state {kind!r} in basis pair {basis_pair!r}"
        ) from None
    out = f(np.asarray(t_a, float), np.asarray(t_b, float))
    return float(out) if np.ndim(out) == 0 else np.asarray(out)
