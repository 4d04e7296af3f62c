"""Command-line front end: state, landscape, path, maxsearch, circlescan, simulate.

Options may come from a JSON config file (``--config``); explicit flags win.
Exit codes: 0 success, 2 parse/validation error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from . import apparatus, chsh, serialization
from .angles import format_angle, parse_angle
from .bases import DR, HD, HR, parse_circle
from .correlations import correlation_matrix
from .errors import ChshError, ParseError
from .states import (
    DensityMatrix,
    NamedState,
    TwoQubitState,
    density_matrix,
    make_named_state,
    mix_with_white_noise,
)


@dataclass
class ScanConfig:
    state: str = "phi+"
    amplitudes: list | None = None  # four [re, im] pairs, overrides ``state``
    noise: float = 0.0
    circle_a: str = "hd"
    circle_b: str = "hd"
    fixed_a: list | None = None
    resolution: int | None = None
    grid: int = 24
    panel: str = "zz"
    row: int | None = None  # reference path row, 1-based
    path: dict | None = None  # offset, slope, start, stop, step
    samples: int = 50
    pairs: int | None = None
    seed: int = 0
    csv: str | None = None
    json: str | None = None
    image: str | None = None
    out: str | None = None
    series: str | None = None

    @classmethod
    def from_dict(cls, data: dict) -> "ScanConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ParseError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls(**data)
        cfg.validate()
        return cfg

    def to_dict(self) -> dict:
        return asdict(self)

    def validate(self):
        try:
            self.rho()
            parse_circle(self.circle_a)
            parse_circle(self.circle_b)
        except (ValueError, TypeError) as exc:
            raise ParseError(str(exc)) from exc
        if self.fixed_a is not None and len(self.fixed_a) != 2:
            raise ParseError("fixed_a needs two angles")
        if self.row is not None and not 1 <= self.row <= len(chsh.PATH_ROWS):
            raise ParseError(f"row must be between 1 and {len(chsh.PATH_ROWS)}")
        if self.pairs is not None and self.pairs < 1:
            raise ParseError("pairs must be positive")
        if self.panel not in chsh.PANELS:
            raise ParseError(f"panel must be one of {sorted(chsh.PANELS)}")

    def label(self) -> str:
        base = "custom" if self.amplitudes is not None else str(NamedState.parse(self.state))
        return base if not self.noise else f"{base}+noise({self.noise:g})"

    def rho(self) -> DensityMatrix:
        if self.amplitudes is not None:
            psi = TwoQubitState([complex(re, im) for re, im in self.amplitudes])
        else:
            psi = make_named_state(NamedState.parse(self.state))
        rho = density_matrix(psi)
        return mix_with_white_noise(rho, self.noise) if self.noise else rho


def parse_amplitudes(text: str) -> list:
    """Comma-separated complex numbers, e.g. ``0.7071,0,0,0.7071j``."""
    try:
        vals = [complex(v.strip().replace("i", "j")) for v in text.split(",")]
    except ValueError as exc:
        raise ParseError(f"cannot parse amplitudes {text!r}") from exc
    if len(vals) != 4:
        raise ParseError("expected four amplitudes ordered HH, HV, VH, VV")
    return [[v.real, v.imag] for v in vals]


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file; flags override its values")
    common.add_argument("--state", help="phi+, phi'+, chi, psi'+ or phi:delta=<rad>")
    common.add_argument("--amplitudes", type=parse_amplitudes,
                        help="raw amplitudes HH,HV,VH,VV (complex, comma separated)")
    common.add_argument("--noise", type=float, help="white-noise fraction p in [0, 1]")

    geom = argparse.ArgumentParser(add_help=False)
    geom.add_argument("--circle-a", dest="circle_a")
    geom.add_argument("--circle-b", dest="circle_b")
    geom.add_argument("--fixed-a", dest="fixed_a", nargs=2, type=parse_angle,
                      metavar=("T_A", "T_A_PRIME"))

    pathp = argparse.ArgumentParser(add_help=False)
    pathp.add_argument("--row", type=int, help="reference path row (1-6); sets state and circles")
    pathp.add_argument("--offset", type=parse_angle)
    pathp.add_argument("--slope", type=float)
    pathp.add_argument("--start", type=parse_angle)
    pathp.add_argument("--stop", type=parse_angle)
    pathp.add_argument("--step", type=parse_angle)
    pathp.add_argument("--samples", type=int, help="samples per reference path")
    pathp.add_argument("--pairs", type=int, help="Monte Carlo pairs per setting")
    pathp.add_argument("--seed", type=int)

    p = argparse.ArgumentParser(prog="poincare-chsh", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("state", parents=[common], help="amplitudes, rho, T and Horodecki S_max")
    s.add_argument("spec", nargs="?", help="state tag (same as --state)")
    s.add_argument("--json", help="write the state as JSON")

    s = sub.add_parser("landscape", parents=[common, geom], help="S over (t_b, t_b')")
    s.add_argument("--resolution", type=int)
    s.add_argument("--csv")
    s.add_argument("--json")
    s.add_argument("--image")

    s = sub.add_parser("path", parents=[common, geom, pathp], help="S along a straight path")
    s.add_argument("--out", help="series CSV (stdout if omitted)")

    s = sub.add_parser("maxsearch", parents=[common], help="max |S| per (hd, hr, dr) basis pair")
    s.add_argument("--grid", type=int)
    s.add_argument("--json")

    s = sub.add_parser("circlescan", parents=[common], help="max |S| over rotated great circles")
    s.add_argument("--panel", choices=sorted(chsh.PANELS))
    s.add_argument("--resolution", type=int)
    s.add_argument("--grid", type=int)
    s.add_argument("--csv")
    s.add_argument("--json")
    s.add_argument("--image")

    s = sub.add_parser("simulate", parents=[common, geom, pathp],
                       help="Monte Carlo coincidences along a path")
    s.add_argument("--out", help="coincidence records CSV")
    s.add_argument("--series", help="estimated S series CSV (stdout if omitted)")
    return p


_PATH_KEYS = ("offset", "slope", "start", "stop", "step")


def _load_config(args) -> ScanConfig:
    data = {}
    if args.config:
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except OSError:
            raise
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad config file: {exc}") from exc
    if getattr(args, "spec", None):
        data["state"] = args.spec
    path = dict(data.get("path") or {})
    for key, value in vars(args).items():
        if value is None or key in ("command", "config", "spec"):
            continue
        if key in _PATH_KEYS:
            path[key] = value
        else:
            data[key] = list(value) if isinstance(value, tuple) else value
    if path:
        data["path"] = path
    return ScanConfig.from_dict(data)


def _write(path, data):
    serialization.atomic_write(path, data)


def _fixed(cfg, circle):
    return tuple(cfg.fixed_a) if cfg.fixed_a is not None else (0.0, circle.quarter_period)


def _path_setup(cfg: ScanConfig):
    """(rho, label, circle_a, circle_b, fixed, PathSpec) for the path-based commands."""
    if cfg.row is not None:
        row = chsh.PATH_ROWS[cfg.row - 1]
        if cfg.amplitudes is None and cfg.state == "phi+" and row.state.kind != "phi+":
            cfg.state = str(row.state)
        ca, cb = row.circle_a, row.circle_b
        spec = row.path(cfg.samples)
        if cfg.path:
            spec = chsh.PathSpec(**{**spec.__dict__, **cfg.path})
    else:
        if not cfg.path or "offset" not in cfg.path:
            raise ParseError("path needs --row or at least --offset")
        ca, cb = parse_circle(cfg.circle_a), parse_circle(cfg.circle_b)
        defaults = {"stop": cb.period, "step": cb.period / (cfg.samples - 1)}
        try:
            spec = chsh.PathSpec(**{**defaults, **cfg.path})
        except TypeError as exc:
            raise ParseError(str(exc)) from exc
    return cfg.rho(), cfg.label(), ca, cb, _fixed(cfg, ca), spec


def cmd_state(cfg: ScanConfig, args) -> int:
    rho = cfg.rho()
    np.set_printoptions(precision=6, suppress=True, linewidth=100)
    print(f"state: {cfg.label()}")
    if cfg.amplitudes is not None or not cfg.noise:
        psi = (TwoQubitState([complex(*z) for z in cfg.amplitudes]) if cfg.amplitudes
               else make_named_state(cfg.state))
        print("amplitudes (HH, HV, VH, VV):")
        for name, a in zip(("HH", "HV", "VH", "VV"), psi.amplitudes):
            print(f"  {name}: {a.real:+.6f} {a.imag:+.6f}i")
        if getattr(args, "json", None):
            from .states import state_to_dict
            _write(args.json, json.dumps(state_to_dict(psi), indent=1))
    print("density matrix:")
    print(rho.matrix)
    print("correlation matrix T:")
    print(correlation_matrix(rho))
    smax = chsh.horodecki_smax(rho)
    tag = " (2 sqrt 2)" if abs(smax - chsh.TSIRELSON) < 1e-9 else ""
    print(f"S_max = {smax:.10f}{tag}")
    return 0


def cmd_landscape(cfg: ScanConfig, args) -> int:
    ca, cb = parse_circle(cfg.circle_a), parse_circle(cfg.circle_b)
    t_a, t_ap = _fixed(cfg, ca)
    grid = chsh.landscape(cfg.rho(), ca, cb, t_a, t_ap, cfg.resolution or 181, cfg.label())
    if cfg.csv:
        _write(cfg.csv, serialization.landscape_to_csv(grid))
    if cfg.json:
        _write(cfg.json, serialization.landscape_to_json(grid))
    if cfg.image:
        from .heatmap import landscape_png
        serialization.atomic_write(cfg.image, landscape_png(grid))
    x, y, s = grid.argmax_abs()
    print(f"{grid.state} {ca.label()}-{cb.label()} fixed_a=({format_angle(t_a)}, "
          f"{format_angle(t_ap)}) resolution={len(grid.axis1)}")
    print(f"max |S| = {abs(s):.10f} at ({cb.param_name}_b, {cb.param_name}_b') = "
          f"({format_angle(x)}, {format_angle(y)})")
    print(f"violation: {'yes' if grid.violates() else 'no'}")
    return 0


def cmd_path(cfg: ScanConfig, args) -> int:
    rho, label, ca, cb, fixed, spec = _path_setup(cfg)
    t_b, s = chsh.path_scan(rho, ca, cb, fixed, spec)
    t_bp = spec.partner(t_b)
    sim = err = None
    if cfg.pairs:
        sim, err = _simulate_series(rho, ca, cb, fixed, t_b, t_bp, cfg.pairs, cfg.seed)[:2]
    text = serialization.series_to_csv(t_b, t_bp, s, sim, err)
    if cfg.out:
        _write(cfg.out, text)
    else:
        sys.stdout.write(text)
    return 0


def _simulate_series(rho, ca, cb, fixed, t_b, t_bp, pairs, seed):
    sim, err, rows = [], [], []
    for k, (x, y) in enumerate(zip(t_b, t_bp)):
        setting = chsh.ChshSetting.on_circles(ca, cb, fixed[0], fixed[1], x, y)
        recs = apparatus.simulate_chsh_records(rho, setting, pairs, seed, key=(k,))
        s, e = apparatus.combine_chsh(recs)
        sim.append(s)
        err.append(e)
        dirs = (setting.a, setting.a_prime, setting.b, setting.b_prime)
        for n, (i, j, _) in enumerate(apparatus._CHSH_TERMS):
            rows.append((k, x, y, n, dirs[i], dirs[j], recs[n]))
    return np.array(sim), np.array(err), rows


def cmd_maxsearch(cfg: ScanConfig, args) -> int:
    rho = cfg.rho()
    circles = (HD, HR, DR)
    results = {}
    print(f"max |S| for {cfg.label()} (rows: photon 1, columns: photon 2)")
    print("        " + "".join(f"{c.kind:>12}" for c in circles))
    for ca in circles:
        line = f"{ca.kind:>8}"
        for cb in circles:
            r = chsh.max_s_over_angles(rho, ca, cb, grid=cfg.grid)
            results[f"{ca.kind}-{cb.kind}"] = r
            line += f"{r.s_max:12.8f}"
        print(line)
    print("optimal settings (native angles a, a', b, b'):")
    for key, r in results.items():
        angles = ", ".join(format_angle(x) for x in r.setting.params)
        print(f"  {key}: |S| = {r.s_max:.8f} at ({angles})")
    if cfg.json:
        _write(cfg.json, json.dumps({
            "state": cfg.label(),
            "s_max": {k: r.s_max for k, r in results.items()},
            "settings": {k: list(r.setting.params) for k, r in results.items()},
        }, indent=1))
    return 0


def cmd_circlescan(cfg: ScanConfig, args) -> int:
    scan = chsh.circle_pair_scan(cfg.rho(), cfg.panel, cfg.resolution or 19, cfg.grid, cfg.label())
    if cfg.csv:
        _write(cfg.csv, serialization.scan_to_csv(scan))
    if cfg.json:
        _write(cfg.json, serialization.scan_to_json(scan))
    if cfg.image:
        from .heatmap import scan_png
        serialization.atomic_write(cfg.image, scan_png(scan))
    i, j = np.unravel_index(np.argmax(scan.s_max), scan.s_max.shape)
    print(f"{scan.state} panel {scan.panel} resolution={len(scan.angles_a)}")
    print(f"max |S| = {scan.s_max[i, j]:.8f} at ({format_angle(scan.angles_a[i])}, "
          f"{format_angle(scan.angles_b[j])}); min = {scan.s_max.min():.8f}")
    return 0


def cmd_simulate(cfg: ScanConfig, args) -> int:
    if not cfg.pairs:
        raise ParseError("simulate needs --pairs")
    rho, label, ca, cb, fixed, spec = _path_setup(cfg)
    t_b, s = chsh.path_scan(rho, ca, cb, fixed, spec)
    t_bp = spec.partner(t_b)
    sim, err, rows = _simulate_series(rho, ca, cb, fixed, t_b, t_bp, cfg.pairs, cfg.seed)
    if cfg.out:
        _write(cfg.out, serialization.records_to_csv(rows))
    text = serialization.series_to_csv(t_b, t_bp, s, sim, err)
    if cfg.series:
        _write(cfg.series, text)
    else:
        sys.stdout.write(text)
    k = int(np.argmax(np.abs(sim)))
    print(f"# {label}: max |S_sim| = {abs(sim[k]):.5f} +/- {err[k]:.5f} at t_b = "
          f"{format_angle(t_b[k])}", file=sys.stderr)
    return 0


COMMANDS = {
    "state": cmd_state,
    "landscape": cmd_landscape,
    "path": cmd_path,
    "maxsearch": cmd_maxsearch,
    "circlescan": cmd_circlescan,
    "simulate": cmd_simulate,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        cfg = _load_config(args)
        return COMMANDS[args.command](cfg, args)
    except (ChshError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
