"""Jones-calculus model of the optical bench and seeded coincidence counting.

Conventions: angles are measured from horizontal; a waveplate at angle x
is R(-x) J0 R(x) with R the 2D rotation; the quarter-wave plate with fast
axis horizontal is diag(1, i), the half-wave plate diag(1, -1).  A
projection is analyzer (QWP then HWP) followed by a fixed polarizing beam
splitter that transmits |H> (outcome +1) and reflects |V> (outcome -1).
"""
from __future__ import annotations

from dataclasses import astuple, dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize_scalar

from .bases import TWO_PI, MeasurementDirection, ProjectorPair, bloch_vector, ket_to_bloch, projector_pair
from .chsh import ChshSetting
from .correlations import joint_probabilities
from .states import (
    PHI_PLUS,
    PHI_PRIME_PLUS,
    TwoQubitState,
    apply_single_qubit,
    make_named_state,
)

_KINDS = ("polarizer", "hwp", "qwp", "quartz")


@dataclass(frozen=True)
class OpticalElement:
    """Polarizer, waveplate or tilted quartz phase plate.

    ``angle`` is the transmission or fast axis from horizontal; ``delta``
    is the retardance of a quartz plate.
    """

    kind: str
    angle: float = 0.0
    delta: float = 0.0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"element kind must be one of {_KINDS}, got {self.kind!r}")


def _rot(x):
    c, s = np.cos(x), np.sin(x)
    return np.array([[c, s], [-s, c]])


def jones_matrix(e: OpticalElement) -> np.ndarray:
    if e.kind == "quartz":
        return np.diag([1.0, np.exp(1j * e.delta)])
    j0 = {
        "polarizer": np.diag([1.0, 0.0]).astype(complex),
        "hwp": np.diag([1.0, -1.0]).astype(complex),
        "qwp": np.diag([1.0, 1j]),
    }[e.kind]
    return _rot(-e.angle) @ j0 @ _rot(e.angle)


def qwp(angle: float) -> np.ndarray:
    return jones_matrix(OpticalElement("qwp", angle))


def hwp(angle: float) -> np.ndarray:
    return jones_matrix(OpticalElement("hwp", angle))


def polarizer(angle: float) -> np.ndarray:
    return jones_matrix(OpticalElement("polarizer", angle))


def quartz_plate(delta: float) -> np.ndarray:
    return jones_matrix(OpticalElement("quartz", delta=delta))


class ProjectionSetting(NamedTuple):
    qwp_angle: float
    hwp_angle: float

    def analyzer(self) -> np.ndarray:
        """Jones matrix of the QWP followed by the HWP."""
        return hwp(self.hwp_angle) @ qwp(self.qwp_angle)


def _linear_angle(ket) -> float:
    """Orientation in [0, pi) of a linearly polarized ket."""
    x, _, z = ket_to_bloch(ket)
    return float(np.arctan2(x, z) / 2 % np.pi)


def projection_setting(d: MeasurementDirection) -> ProjectionSetting:
    """Waveplate angles whose analyzer sends |a> to |H> (up to phase).

    The QWP is aligned with an axis of the polarization ellipse, which turns
    |a> linear; the HWP then rotates that line onto horizontal.  Both angles
    are reported in [0, pi/2).
    """
    x, _, z = bloch_vector(d)
    q = _fold(np.arctan2(x, z) / 2) if np.hypot(x, z) > 1e-15 else 0.0
    lin = _linear_angle(qwp(q) @ projector_pair(d).ket_a)
    return ProjectionSetting(q, _fold(lin / 2))


def _fold(x: float) -> float:
    """Reduce to [0, pi/2), snapping values within 1e-12 of pi/2 to 0."""
    r = float(x % (np.pi / 2))
    return 0.0 if np.pi / 2 - r < 1e-12 or r < 1e-15 else r


def transmission(setting: ProjectionSetting, ket) -> float:
    """Probability that ``ket`` exits the horizontal port after the analyzer."""
    k = np.asarray(ket, dtype=complex)
    out = setting.analyzer() @ (k / np.linalg.norm(k))
    return float(abs(out[0]) ** 2)


def prepare_phi_delta(delta: float) -> TwoQubitState:
    """(|HH> + e^{i delta}|VV>)/sqrt 2, made by a quartz plate acting on photon 2 of phi+."""
    return apply_single_qubit(make_named_state(PHI_PLUS), quartz_plate(delta), 2)


_NULLING_PROJECTIONS = {
    "phi+": (("D", "A"),),
    "phi'+": (("D", "R"), ("A", "L")),
}


def nulling_probability(delta: float, projection=("D", "A")) -> float:
    """Coincidence probability of the product projection on Phi(delta)."""
    from . import bases

    a, b = (getattr(bases, p) for p in projection)
    psi = prepare_phi_delta(delta)
    ket = np.kron(projector_pair(a).ket_a, projector_pair(b).ket_a)
    return float(abs(np.vdot(ket, psi.amplitudes)) ** 2)


def tune_quartz_phase(target=PHI_PLUS, tolerance: float = 1e-12, projection=None) -> float:
    """Quartz phase that nulls the target's forbidden coincidence.

    phi+ is tuned on |D>|A>, phi'+ on |D>|R> (or |A>|L>).  A coarse scan
    brackets the minimum, golden-section search polishes it, and the result
    is returned in (-pi, pi].
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    kind = getattr(target, "kind", target)
    if projection is None:
        if kind not in _NULLING_PROJECTIONS:
            raise ValueError(f"no nulling projection known for {target!r}")
        projection = _NULLING_PROJECTIONS[kind][0]

    def f(x):
        return nulling_probability(x, projection)

    grid = np.linspace(0.0, TWO_PI, 64, endpoint=False)
    k = int(np.argmin([f(x) for x in grid]))
    step = grid[1] - grid[0]
    res = minimize_scalar(f, bracket=(grid[k] - step, grid[k], grid[k] + step),
                          method="golden", tol=1e-12)
    delta = float(res.x)
    if f(delta) > tolerance:
        raise RuntimeError(f"could not null the projection below {tolerance}: {f(delta)}")
    return float(np.pi - (np.pi - delta) % TWO_PI)


# ---------------------------------------------------------------- Monte Carlo

@dataclass(frozen=True)
class CoincidenceRecord:
    n_ab: int
    n_ab_perp: int
    n_aperp_b: int
    n_aperp_bperp: int
    pairs_total: int
    seed: int

    def counts(self):
        return (self.n_ab, self.n_ab_perp, self.n_aperp_b, self.n_aperp_bperp)

    def as_row(self):
        return astuple(self)


def substream(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for (seed, key...), reproducible and order-free."""
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key)))


def simulate_coincidences(rho, a, b, pairs: int, seed: int, key=()) -> CoincidenceRecord:
    """Draw ``pairs`` four-outcome events with Born-rule probabilities."""
    if pairs < 1:
        raise ValueError("pairs must be at least 1")
    p = np.array(joint_probabilities(rho, a, b), dtype=float)
    p = np.clip(p, 0.0, None)
    p /= p.sum()
    counts = substream(seed, *key).multinomial(int(pairs), p)
    return CoincidenceRecord(*(int(c) for c in counts), int(pairs), int(seed))


def estimate_expectation(rec: CoincidenceRecord):
    """Plug-in <AB> and its binomial standard error."""
    if rec.pairs_total < 1:
        raise ValueError("record holds no pairs")
    n = rec.pairs_total
    value = (rec.n_ab - rec.n_ab_perp - rec.n_aperp_b + rec.n_aperp_bperp) / n
    return value, float(np.sqrt(max(1.0 - value * value, 0.0) / n))


_CHSH_TERMS = ((0, 2, 1.0), (0, 3, -1.0), (1, 2, 1.0), (1, 3, 1.0))


def simulate_chsh_records(rho, setting: ChshSetting, pairs_per_setting: int, seed: int, key=()):
    """Records for (a,b), (a,b'), (a',b), (a',b'), each on its own substream."""
    dirs = (setting.a, setting.a_prime, setting.b, setting.b_prime)
    return [
        simulate_coincidences(rho, projector_pair(dirs[i]), projector_pair(dirs[j]),
                              pairs_per_setting, seed, key=(*key, n))
        for n, (i, j, _) in enumerate(_CHSH_TERMS)
    ]


def combine_chsh(records):
    est = [estimate_expectation(r) for r in records]
    s = sum(sign * v for (_, _, sign), (v, _) in zip(_CHSH_TERMS, est))
    err = float(np.sqrt(sum(e * e for _, e in est)))
    return float(s), err


def simulate_s(rho, setting: ChshSetting, pairs_per_setting: int, seed: int, key=()):
    """Estimated S and its standard error from four simulated coincidence records."""
    if pairs_per_setting < 1:
        raise ValueError("pairs_per_setting must be at least 1")
    return combine_chsh(simulate_chsh_records(rho, setting, pairs_per_setting, seed, key))
