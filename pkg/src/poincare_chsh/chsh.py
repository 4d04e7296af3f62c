"""CHSH parameter, violation landscapes and maximal-violation searches.

S = <AB> - <AB'> + <A'B> + <A'B'>.  Landscapes fix the two photon-1
settings (by default at 0 and a quarter period of the circle's native
parameter) and sweep the two photon-2 settings.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from .bases import DR, HD, HR, TWO_PI, GreatCircle, MeasurementDirection, bloch_vector
from .correlations import correlation_matrix
from .errors import ResolutionTooSmall
from .states import CHI, PHI_PLUS, PHI_PRIME_PLUS, NamedState

TSIRELSON = 2 * np.sqrt(2)


@dataclass(frozen=True)
class ChshSetting:
    a: MeasurementDirection
    a_prime: MeasurementDirection
    b: MeasurementDirection
    b_prime: MeasurementDirection
    # native circle parameters the directions were built from, if any
    params: tuple | None = field(default=None, compare=False)

    @classmethod
    def on_circles(cls, circle_a: GreatCircle, circle_b: GreatCircle,
                   t_a, t_a_prime, t_b, t_b_prime) -> "ChshSetting":
        """Setting from native parameters on a circle per photon."""
        return cls(
            circle_a.point_native(t_a),
            circle_a.point_native(t_a_prime),
            circle_b.point_native(t_b),
            circle_b.point_native(t_b_prime),
            params=(float(t_a), float(t_a_prime), float(t_b), float(t_b_prime)),
        )

    def bloch_vectors(self):
        return tuple(bloch_vector(d) for d in (self.a, self.a_prime, self.b, self.b_prime))


def chsh_from_vectors(T, a, a_prime, b, b_prime):
    """Vectorized S from Bloch vectors (last axis of length 3; other axes broadcast)."""
    def e(x, y):
        return np.einsum("...i,ij,...j->...", x, T, y)

    return e(a, b) - e(a, b_prime) + e(a_prime, b) + e(a_prime, b_prime)


def s_value(rho, setting: ChshSetting) -> float:
    T = correlation_matrix(rho)
    return float(chsh_from_vectors(T, *setting.bloch_vectors()))


def horodecki_smax(rho) -> float:
    """2 sqrt(M), M the sum of the two largest eigenvalues of T^T T."""
    T = correlation_matrix(rho)
    ev = np.sort(np.linalg.eigvalsh(T.T @ T))[::-1]
    return float(2 * np.sqrt(max(ev[0] + ev[1], 0.0)))


# ---------------------------------------------------------------- landscapes

@dataclass
class LandscapeGrid:
    """Signed S over photon-2 settings; ``s_values[i, j]`` is at (axis1[i], axis2[j])."""

    circle_a: GreatCircle
    circle_b: GreatCircle
    fixed_a: tuple
    axis1: np.ndarray
    axis2: np.ndarray
    s_values: np.ndarray
    state: str | None = None

    def argmax_abs(self):
        i, j = np.unravel_index(np.argmax(np.abs(self.s_values)), self.s_values.shape)
        return float(self.axis1[i]), float(self.axis2[j]), float(self.s_values[i, j])

    def violates(self) -> bool:
        return bool(np.abs(self.s_values).max() > 2 + 1e-9)


def _default_fixed(circle_a: GreatCircle, t_a, t_a_prime):
    if t_a is None:
        t_a = 0.0
    if t_a_prime is None:
        t_a_prime = t_a + circle_a.quarter_period
    return float(t_a), float(t_a_prime)


def landscape(rho, circle_a: GreatCircle, circle_b: GreatCircle, t_a=None, t_a_prime=None,
              resolution: int = 181, state: str | None = None) -> LandscapeGrid:
    """S over a ``resolution`` x ``resolution`` grid of (t_b, t_b') spanning one period."""
    if resolution < 2:
        raise ResolutionTooSmall(f"resolution must be at least 2, got {resolution}")
    t_a, t_a_prime = _default_fixed(circle_a, t_a, t_a_prime)
    T = correlation_matrix(rho)
    axis = np.linspace(0.0, circle_b.period, resolution)
    a = circle_a.bloch_native(t_a)
    ap = circle_a.bloch_native(t_a_prime)
    b = circle_b.bloch_native(axis)[:, None, :]
    bp = circle_b.bloch_native(axis)[None, :, :]
    s = chsh_from_vectors(T, a, ap, b, bp)
    return LandscapeGrid(circle_a, circle_b, (t_a, t_a_prime), axis, axis.copy(), s, state)


class LandscapeEquation(NamedTuple):
    state: NamedState
    circle_a: GreatCircle
    circle_b: GreatCircle
    formula: Callable


_R2 = np.sqrt(2)
_Q = np.pi / 4

# closed-form S(t_b, t_b') with photon 1 at (0, quarter period)
LANDSCAPE_EQUATIONS = {
    "phi+ hd-hd": LandscapeEquation(
        PHI_PLUS, HD, HD, lambda b, bp: 2 * _R2 * np.cos(b - bp + _Q) * np.sin(b + bp)),
    "phi'+ hd-hd": LandscapeEquation(
        PHI_PRIME_PLUS, HD, HD, lambda b, bp: -2 * np.sin(b + bp) * np.sin(b - bp)),
    "phi+ dr-dr": LandscapeEquation(
        PHI_PLUS, DR, DR,
        lambda b, bp: -2 * _R2 * np.sin(b / 2 - bp / 2 + _Q) * np.sin(b / 2 + bp / 2)),
    "phi'+ dr-dr": LandscapeEquation(
        PHI_PRIME_PLUS, DR, DR,
        lambda b, bp: 2 * _R2 * np.sin(b / 2 - bp / 2 + _Q) * np.cos(b / 2 + bp / 2)),
    "phi+ hd-hr": LandscapeEquation(
        PHI_PLUS, HD, HR, lambda b, bp: -2 * np.sin(b / 2 + bp / 2) * np.sin(b / 2 - bp / 2)),
    "chi hd-hr": LandscapeEquation(
        CHI, HD, HR,
        lambda b, bp: -2 * _R2 * np.cos(b / 2 + bp / 2) * np.cos(b / 2 - bp / 2 + _Q)),
    "chi hd-hd": LandscapeEquation(
        CHI, HD, HD, lambda b, bp: -2 * np.cos(b + bp) * np.cos(b - bp)),
}


# ---------------------------------------------------------------- paths

@dataclass(frozen=True)
class PathSpec:
    """Straight path t_b' = slope * t_b + offset, sampled from start to stop."""

    offset: float
    slope: float = 1.0
    start: float = 0.0
    stop: float = np.pi
    step: float = np.pi / 48

    def __post_init__(self):
        for name in ("offset", "slope", "start", "stop", "step"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"path {name} must be finite")
        if self.step <= 0:
            raise ValueError("path step must be positive")

    def samples(self) -> np.ndarray:
        span = self.stop - self.start
        n = round(span / self.step)
        if n < 1 or abs(n * self.step - span) > 1e-9 * max(1.0, abs(span)):
            raise ValueError(f"step {self.step} does not divide the range [{self.start}, {self.stop}]")
        return np.linspace(self.start, self.stop, n + 1)

    def partner(self, t_b):
        return self.slope * np.asarray(t_b, dtype=float) + self.offset


def path_scan(rho, circle_a: GreatCircle, circle_b: GreatCircle, fixed_a, path: PathSpec):
    """S along a path; returns (t_b, S) arrays."""
    t_a, t_a_prime = _default_fixed(circle_a, *(fixed_a or (None, None)))
    T = correlation_matrix(rho)
    t_b = path.samples()
    s = chsh_from_vectors(
        T,
        circle_a.bloch_native(t_a),
        circle_a.bloch_native(t_a_prime),
        circle_b.bloch_native(t_b),
        circle_b.bloch_native(path.partner(t_b)),
    )
    return t_b, s


class PathRow(NamedTuple):
    state: NamedState
    circle_a: GreatCircle
    circle_b: GreatCircle
    offset: float
    expected: Callable

    def path(self, samples: int = 50) -> PathSpec:
        period = self.circle_b.period
        return PathSpec(offset=self.offset, stop=period, step=period / (samples - 1))


# the six measured paths: photon-1 settings fixed at (0, quarter period)
PATH_ROWS = (
    PathRow(PHI_PLUS, HD, HD, np.pi / 4, lambda b: 2 * _R2 * np.cos(2 * b - np.pi / 4)),
    PathRow(PHI_PRIME_PLUS, HD, HD, np.pi / 2, lambda b: 2 * np.sin(2 * b + np.pi / 2)),
    PathRow(PHI_PLUS, DR, DR, -np.pi / 2, lambda b: -2 * _R2 * np.sin(b - np.pi / 4)),
    PathRow(PHI_PRIME_PLUS, DR, DR, -np.pi / 2, lambda b: 2 * _R2 * np.cos(b - np.pi / 4)),
    PathRow(PHI_PLUS, HD, HR, np.pi, lambda b: 2 * np.sin(b + np.pi / 2)),
    PathRow(CHI, HD, HR, np.pi / 2, lambda b: 2 * _R2 * np.sin(b - np.pi / 4)),
)


# ---------------------------------------------------------------- maximization

class MaxSearch(NamedTuple):
    s_max: float
    setting: ChshSetting


def _wrap(t):
    return np.mod(t, TWO_PI)


def _line_max(u, v, w):
    """Bloch angle on the circle spanned by (u, v) maximizing its dot product with w."""
    x, y = u @ w, v @ w
    if x * x + y * y < 1e-30:
        return None
    return float(np.arctan2(y, x))


def _refine(T, circle_a, circle_b, angles, sign, tol, max_sweeps=500):
    """Cyclic coordinate ascent on sign * S; each coordinate is maximized exactly.

    Along any one angle S is A cos t + B sin t + C, so the line search is
    closed-form.
    """
    ua, va = circle_a.axes
    ub, vb = circle_b.axes
    t = list(angles)
    for _ in range(max_sweeps):
        moved = 0.0
        for k in range(4):
            a, ap = circle_a.bloch(t[0]), circle_a.bloch(t[1])
            b, bp = circle_b.bloch(t[2]), circle_b.bloch(t[3])
            if k == 0:
                new = _line_max(ua, va, sign * (T @ (b - bp)))
            elif k == 1:
                new = _line_max(ua, va, sign * (T @ (b + bp)))
            elif k == 2:
                new = _line_max(ub, vb, sign * (T.T @ (a + ap)))
            else:
                new = _line_max(ub, vb, sign * (T.T @ (ap - a)))
            if new is None:
                continue
            d = abs((new - t[k] + np.pi) % TWO_PI - np.pi)
            moved = max(moved, d)
            t[k] = new
        if moved < tol:
            break
    return [float(x) for x in _wrap(np.array(t))]


def max_s_over_angles(rho, circle_a: GreatCircle, circle_b: GreatCircle,
                      grid: int = 24, tol: float = 1e-7) -> MaxSearch:
    """Largest |S| with both photon-1 settings on ``circle_a`` and both photon-2 on ``circle_b``.

    Exhaustive ``grid``-point search per angle, then coordinate ascent.
    Among equal grid maxima (to 1e-9) the lexicographically smallest
    angle tuple seeds the refinement.
    """
    if grid < 2:
        raise ResolutionTooSmall(f"grid must be at least 2, got {grid}")
    T = correlation_matrix(rho)
    t = np.arange(grid) * (TWO_PI / grid)
    E = circle_a.bloch(t) @ T @ circle_b.bloch(t).T  # E[i, k] = <a_i b_k>
    S = (E[:, None, :, None] - E[:, None, None, :]
         + E[None, :, :, None] + E[None, :, None, :])
    absS = np.abs(S)
    best = absS.max()
    flat = int(np.flatnonzero(absS.ravel() >= best - 1e-9)[0])
    idx = np.unravel_index(flat, S.shape)
    sign = 1.0 if S[idx] >= 0 else -1.0
    angles = _refine(T, circle_a, circle_b, [t[i] for i in idx], sign, tol)
    vecs = [circle_a.bloch(angles[0]), circle_a.bloch(angles[1]),
            circle_b.bloch(angles[2]), circle_b.bloch(angles[3])]
    s = float(chsh_from_vectors(T, *vecs))
    if abs(s) < best:  # refinement never loses ground; guard against pathological stalls
        angles = [float(t[i]) for i in idx]
        s = float(S[idx])
    native = (angles[0] / circle_a.native_scale, angles[1] / circle_a.native_scale,
              angles[2] / circle_b.native_scale, angles[3] / circle_b.native_scale)
    setting = ChshSetting.on_circles(circle_a, circle_b, *native)
    return MaxSearch(abs(s), setting)


def circle_pair_smax(rho, circle_a: GreatCircle, circle_b: GreatCircle) -> float:
    """Closed-form max |S| for settings confined to two great circles.

    With M the 2x2 block of T between the two circle planes, the maximum is
    2 sqrt(s1^2 + s2^2) over its singular values, i.e. twice its Frobenius norm.
    """
    T = correlation_matrix(rho)
    ua, va = circle_a.axes
    ub, vb = circle_b.axes
    M = np.array([ua, va]) @ T @ np.array([ub, vb]).T
    return float(2 * np.linalg.norm(M))


# ---------------------------------------------------------------- circle pairs

PANELS = {"zz": ("rotz", "rotz"), "xx": ("rotx", "rotx"),
          "zx": ("rotz", "rotx"), "xz": ("rotx", "rotz")}


@dataclass
class CirclePairScan:
    """max |S| over rotated-circle orientations; ``s_max[i, j]`` at (angles_a[i], angles_b[j])."""

    panel: str
    angles_a: np.ndarray
    angles_b: np.ndarray
    s_max: np.ndarray
    state: str | None = None

    def circles(self, i: int, j: int):
        ka, kb = PANELS[self.panel]
        return GreatCircle(ka, float(self.angles_a[i])), GreatCircle(kb, float(self.angles_b[j]))


def circle_pair_scan(rho, panel: str, resolution: int = 19, grid: int = 24,
                     state: str | None = None) -> CirclePairScan:
    """Grid of :func:`max_s_over_angles` over rotation angles in [0, pi] for both circles."""
    if panel not in PANELS:
        raise ValueError(f"panel must be one of {sorted(PANELS)}, got {panel!r}")
    if resolution < 2:
        raise ResolutionTooSmall(f"resolution must be at least 2, got {resolution}")
    ka, kb = PANELS[panel]
    angles = np.linspace(0.0, np.pi, resolution)
    out = np.empty((resolution, resolution))
    for i, xa in enumerate(angles):
        for j, xb in enumerate(angles):
            out[i, j] = max_s_over_angles(
                rho, GreatCircle(ka, float(xa)), GreatCircle(kb, float(xb)), grid=grid
            ).s_max
    return CirclePairScan(panel, angles, angles.copy(), out, state)


def best_circle_pair(rho, panels=("zz", "xx", "zx", "xz"), resolution: int = 7,
                     grid: int = 24, refine: bool = True):
    """Global max |S| over the rotated-circle family.

    Scans each panel on a ``resolution`` grid of orientations, then polishes
    the best orientation pair with Nelder-Mead.  Returns (s_max, circle_a, circle_b).
    """
    from scipy.optimize import minimize

    best = (-np.inf, None, None)
    for panel in panels:
        ka, kb = PANELS[panel]
        angles = np.linspace(0.0, np.pi, resolution, endpoint=False)
        for xa in angles:
            for xb in angles:
                ca, cb = GreatCircle(ka, float(xa)), GreatCircle(kb, float(xb))
                s = max_s_over_angles(rho, ca, cb, grid=grid).s_max
                if s > best[0]:
                    best = (s, ca, cb)
    s0, ca, cb = best
    if not refine:
        return best

    def objective(x):
        return -max_s_over_angles(
            rho, GreatCircle(ca.kind, float(x[0])), GreatCircle(cb.kind, float(x[1])), grid=grid
        ).s_max

    res = minimize(objective, [ca.angle, cb.angle], method="Nelder-Mead",
                   options={"xatol": 1e-6, "fatol": 1e-10, "initial_simplex":
                            [[ca.angle, cb.angle],
                             [ca.angle + np.pi / (2 * resolution), cb.angle],
                             [ca.angle, cb.angle + np.pi / (2 * resolution)]]})
    if -res.fun > s0:
        return (float(-res.fun), GreatCircle(ca.kind, float(res.x[0])),
                GreatCircle(cb.kind, float(res.x[1])))
    return best
