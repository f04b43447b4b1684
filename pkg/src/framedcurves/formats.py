"""CSV and JSON file formats.

Masked quantities (Frenet normals at flat nodes, phase and torsion outside
the valid runs) are written as ``0`` next to a ``0`` flag column, so numeric
columns never contain NaN. Floats are written at full round-trip precision.
"""
from __future__ import annotations

import csv
import io
import json
import math
import sys
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from .core import FrameField, Grid, SampledCurve, resample_arclength
from .errors import FramingError
from .frenet import FrenetField
from .invariants import InvariantField
from .rpaf import DensityField

CURVE_COLUMNS = ("s", "x", "y", "z")
FRENET_COLUMNS = ("s", "tx", "ty", "tz", "nx", "ny", "nz", "bx", "by", "bz", "kappa", "tau", "regular")
FRAME_COLUMNS = ("s", "tx", "ty", "tz", "d1x", "d1y", "d1z", "d2x", "d2y", "d2z")
DENSITY_COLUMNS = ("s", "u1", "u2", "u3")
INVARIANT_COLUMNS = ("s", "kappa", "theta", "tau", "valid")


class FormatError(FramingError):
    pass


def _fmt(x) -> str:
    return repr(float(x))


@contextmanager
def _open_out(path):
    if path is None or str(path) == "-":
        yield sys.stdout
    else:
        try:
            with open(path, "w", newline="", encoding="utf-8") as fh:
                yield fh
        except OSError as exc:
            raise OSError(f"cannot write {path}: {exc.strerror}") from exc


def _write_table(path, header, columns):
    rows = np.column_stack(columns)
    with _open_out(path) as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _read_table(path) -> tuple[list[str], np.ndarray]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror}") from exc
    reader = csv.reader(io.StringIO(text))
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise FormatError(f"{path}: empty file") from None
    rows = [r for r in reader if r and any(c.strip() for c in r)]
    try:
        data = np.array([[float(c) for c in r] for r in rows], dtype=float)
    except ValueError as exc:
        raise FormatError(f"{path}: {exc}") from None
    if data.size == 0:
        data = data.reshape(0, len(header))
    if data.shape[1] != len(header):
        raise FormatError(f"{path}: rows do not match header {header}")
    return header, data


def sniff_header(path) -> list[str]:
    header, _ = _read_table(path)
    return header


def _masked(values, mask):
    return np.where(mask, np.nan_to_num(values, nan=0.0), 0.0)


# curves

def write_curve(path, curve: SampledCurve):
    _write_table(path, CURVE_COLUMNS, [curve.grid.nodes, curve.points])


def load_curve(path, resample: bool = False, n: int | None = None) -> SampledCurve:
    """Read a curve CSV with header ``s,x,y,z`` or ``x,y,z``.

    Without an ``s`` column the points are parametrized by cumulative chord
    length and resampled uniformly. With one, it must already be a uniform grid
    starting at 0 unless ``resample`` is set.
    """
    header, data = _read_table(path)
    if header == list(CURVE_COLUMNS):
        s, pts = data[:, 0], data[:, 1:]
    elif header == list(CURVE_COLUMNS[1:]):
        s, pts = None, data
    else:
        raise FormatError(f"{path}: expected header s,x,y,z or x,y,z, got {','.join(header)}")
    if s is None or resample:
        return resample_arclength(pts, n or len(pts))
    try:
        return SampledCurve.from_arrays(s, pts)
    except FramingError as exc:
        raise FormatError(f"{path}: {exc} (use --resample)") from None


# frames

def write_frenet(path, fr: FrenetField):
    m = fr.regular_mask
    _write_table(
        path,
        FRENET_COLUMNS,
        [
            fr.grid.nodes,
            fr.t,
            _masked(fr.n, m[:, None]),
            _masked(fr.b, m[:, None]),
            fr.kappa,
            _masked(fr.tau, m & np.isfinite(fr.tau)),
            m.astype(float),
        ],
    )


def write_frame(path, frame: FrameField):
    _write_table(path, FRAME_COLUMNS, [frame.grid.nodes, frame.t, frame.d1, frame.d2])


def load_frame(path) -> FrameField:
    header, data = _read_table(path)
    if header != list(FRAME_COLUMNS):
        raise FormatError(f"{path}: expected header {','.join(FRAME_COLUMNS)}")
    grid = Grid.from_nodes(data[:, 0])
    return FrameField(grid, data[:, 1:4], data[:, 4:7], data[:, 7:10])


# densities

def write_densities(path, d: DensityField):
    cols = [d.grid.nodes, d.u1, d.u2]
    header = DENSITY_COLUMNS if d.u3 is not None else DENSITY_COLUMNS[:3]
    if d.u3 is not None:
        cols.append(d.u3)
    _write_table(path, header, cols)


def load_densities(path) -> DensityField:
    header, data = _read_table(path)
    if header not in (list(DENSITY_COLUMNS), list(DENSITY_COLUMNS[:3])):
        raise FormatError(f"{path}: expected header s,u1,u2[,u3]")
    grid = Grid.from_nodes(data[:, 0])
    u3 = data[:, 3] if len(header) == 4 else None
    return DensityField(grid, data[:, 1], data[:, 2], u3)


# invariants and reports

def write_invariants(path, inv: InvariantField):
    m = inv.valid_mask
    _write_table(
        path,
        INVARIANT_COLUMNS,
        [
            inv.grid.nodes,
            inv.kappa,
            _masked(inv.theta, m),
            _masked(inv.tau, m & np.isfinite(inv.tau)),
            m.astype(float),
        ],
    )


def _round9(value):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return None if not math.isfinite(value) else float(f"{value:.9g}")
    if isinstance(value, dict):
        return {k: _round9(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round9(v) for v in value]
    return value


def dump_report(report: dict, fmt: str = "json") -> str:
    """Serialize a flat or nested report; numbers carry 9 significant digits."""
    report = _round9(report)
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=False) + "\n"
    if fmt == "csv":
        lines = ["key,value"]

        def walk(prefix, obj):
            for k, v in obj.items():
                key = f"{prefix}{k}"
                if isinstance(v, dict):
                    walk(key + ".", v)
                else:
                    lines.append(f"{key},{'' if v is None else json.dumps(v)}")

        walk("", report)
        return "\n".join(lines) + "\n"
    raise FormatError(f"unknown report format {fmt!r}")


def write_report(path, report: dict, fmt: str = "json"):
    with _open_out(path) as fh:
        fh.write(dump_report(report, fmt))
