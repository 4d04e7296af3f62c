"""CSV and JSON readers/writers for grids, path series and coincidence records.

Every file is written atomically (temporary file in the same directory,
then rename).  Floats are written with 17 significant digits so that a
re-read reproduces the in-memory values.
"""
from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path

import numpy as np

from . import __version__
from .bases import GreatCircle, parse_circle
from .chsh import CirclePairScan, LandscapeGrid


def atomic_write(path, data, mode="w"):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, mode + ("b" if isinstance(data, bytes) else "")) as fh:
            fh.write(data)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _f(x) -> str:
    return format(float(x), ".17g")


def grid_to_csv(rows: np.ndarray, cols: np.ndarray, values: np.ndarray, corner: str) -> str:
    """First row holds the column axis, first column the row axis."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([corner, *map(_f, cols)])
    for x, row in zip(rows, values):
        w.writerow([_f(x), *map(_f, row)])
    return buf.getvalue()


def grid_from_csv(text: str):
    r = list(csv.reader(io.StringIO(text)))
    cols = np.array([float(v) for v in r[0][1:]])
    rows = np.array([float(line[0]) for line in r[1:]])
    values = np.array([[float(v) for v in line[1:]] for line in r[1:]])
    return rows, cols, values


def landscape_to_csv(grid: LandscapeGrid) -> str:
    return grid_to_csv(grid.axis1, grid.axis2, grid.s_values, "t_b\\t_b'")


def landscape_to_json(grid: LandscapeGrid) -> str:
    return json.dumps({
        "kind": "landscape",
        "version": __version__,
        "state": grid.state,
        "circle_a": grid.circle_a.label(),
        "circle_b": grid.circle_b.label(),
        "fixed_a": list(grid.fixed_a),
        "resolution": len(grid.axis1),
        "axis1": grid.axis1.tolist(),
        "axis2": grid.axis2.tolist(),
        "s_values": grid.s_values.tolist(),
    }, indent=1)


def landscape_from_json(text: str) -> LandscapeGrid:
    d = json.loads(text)
    return LandscapeGrid(
        parse_circle(d["circle_a"]), parse_circle(d["circle_b"]), tuple(d["fixed_a"]),
        np.array(d["axis1"]), np.array(d["axis2"]), np.array(d["s_values"]), d.get("state"),
    )


def scan_to_csv(scan: CirclePairScan) -> str:
    return grid_to_csv(scan.angles_a, scan.angles_b, scan.s_max, f"{scan.panel}:a\\b")


def scan_to_json(scan: CirclePairScan) -> str:
    return json.dumps({
        "kind": "circlescan",
        "version": __version__,
        "state": scan.state,
        "panel": scan.panel,
        "resolution": len(scan.angles_a),
        "angles_a": scan.angles_a.tolist(),
        "angles_b": scan.angles_b.tolist(),
        "s_max": scan.s_max.tolist(),
    }, indent=1)


def scan_from_json(text: str) -> CirclePairScan:
    d = json.loads(text)
    return CirclePairScan(d["panel"], np.array(d["angles_a"]), np.array(d["angles_b"]),
                          np.array(d["s_max"]), d.get("state"))


PATH_COLUMNS = ("t_b", "t_b_prime", "s_analytic", "s_simulated", "s_err")


def series_to_csv(t_b, t_b_prime, s_analytic, s_sim=None, s_err=None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    simulated = s_sim is not None
    w.writerow(PATH_COLUMNS if simulated else PATH_COLUMNS[:3])
    for k in range(len(t_b)):
        row = [_f(t_b[k]), _f(t_b_prime[k]), _f(s_analytic[k])]
        if simulated:
            row += [_f(s_sim[k]), _f(s_err[k])]
        w.writerow(row)
    return buf.getvalue()


def series_from_csv(text: str) -> dict:
    r = list(csv.reader(io.StringIO(text)))
    header, body = r[0], r[1:]
    return {name: np.array([float(line[i]) for line in body]) for i, name in enumerate(header)}


RECORD_COLUMNS = ("point", "t_b", "t_b_prime", "term", "a_theta", "a_phi", "b_theta", "b_phi",
                  "n_ab", "n_ab_perp", "n_aperp_b", "n_aperp_bperp", "pairs_total", "seed")


def records_to_csv(rows) -> str:
    """``rows`` yields (point, t_b, t_b', term, a, b, record) tuples."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(RECORD_COLUMNS)
    for point, t_b, t_bp, term, a, b, rec in rows:
        w.writerow([point, _f(t_b), _f(t_bp), term, _f(a.theta), _f(a.phi), _f(b.theta),
                    _f(b.phi), *rec.counts(), rec.pairs_total, rec.seed])
    return buf.getvalue()


def records_from_csv(text: str):
    from .apparatus import CoincidenceRecord

    out = []
    for row in csv.DictReader(io.StringIO(text)):
        out.append(CoincidenceRecord(
            int(row["n_ab"]), int(row["n_ab_perp"]), int(row["n_aperp_b"]),
            int(row["n_aperp_bperp"]), int(row["pairs_total"]), int(row["seed"])))
    return out


def circle_from_label(label: str) -> GreatCircle:
    return parse_circle(label)
