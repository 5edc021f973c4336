"""CSV and snapshot writers.  Every file is written to a temporary sibling and
renamed into place, so an interrupted run never leaves a truncated file.
Numbers are printed with 17 significant digits (exact float round trip).
"""
from __future__ import annotations

import os
import tempfile
from pathlib import Path

import numpy as np

from .field import BC, DIRICHLET, Field

FMT = "%.17g"


def fmt(x) -> str:
    return FMT % float(x)


def atomic_write_text(path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def _cell(x) -> str:
    if isinstance(x, (str, np.str_)):
        return str(x)
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return fmt(x)


def write_csv(path, header, columns) -> Path:
    """Write equal-length columns under a comma-separated header."""
    cols = [np.asarray(c).ravel() for c in columns]
    lines = [",".join(header)]
    for row in zip(*cols):
        lines.append(",".join(_cell(x) for x in row))
    return atomic_write_text(path, "\n".join(lines) + "\n")


def read_csv(path) -> dict:
    data = np.genfromtxt(path, delimiter=",", names=True, ndmin=1)
    return {name: np.atleast_1d(data[name]) for name in data.dtype.names}


def write_profile_csv(path, profile) -> Path:
    return write_csv(path, ("t", "U", "V"), (profile.t, profile.U, profile.V))


def write_energy_scan_csv(path, scan) -> Path:
    return write_csv(path, ("t", "E"), (scan.t_samples, scan.E))


def write_growth_csv(path, fit) -> Path:
    return write_csv(path, ("R", "J", "J_over_R_pow"), (fit.radii, fit.J, fit.constants))


def write_eigenpair_csv(path, f: Field, pair) -> Path:
    """Nodes of the disc as ``x1,x2,phi,psi`` plus a ``.lambda`` sidecar."""
    mask = pair.mask if pair.mask is not None else np.ones(f.shape, bool)
    X = f.mesh()
    header = ("x1", "x2")[: f.dims] + ("phi", "psi")
    cols = [x[mask] for x in X] + [pair.phi[mask], pair.psi[mask]]
    path = write_csv(path, header, cols)
    atomic_write_text(str(path) + ".lambda", f"lambda_R={fmt(pair.lambda_R)}\nR={fmt(pair.R)}\n")
    return path


def write_decay_csv(path, report) -> Path:
    return write_csv(path, ("R", "I"), (report.radii, report.I))


def write_energy_history_csv(path, state) -> Path:
    steps = np.asarray(state.history_steps, dtype=int)
    return write_csv(path, ("step", "time", "J"), (steps, steps * state.dt, state.energy_history))


# -- snapshots ---------------------------------------------------------------


def _array_lines(a: np.ndarray):
    a = np.atleast_2d(a)
    return [" ".join(fmt(x) for x in row) for row in a]


def snapshot_text(f: Field) -> str:
    """Header ``dims nx ny h ox oy bc_x1 bc_x2`` then u and v row by row (row = x1 index)."""
    if f.dims == 2:
        nx, ny = f.shape
        ox, oy = f.origin
        b1, b2 = f.bc[0].kind, f.bc[1].kind
        u, v = f.u, f.v
    else:
        nx, ny = f.shape[0], 1
        ox, oy = f.origin[0], 0.0
        b1, b2 = f.bc[0].kind, "none"
        u, v = f.u[:, None], f.v[:, None]
    head = f"{f.dims} {nx} {ny} {fmt(f.h)} {fmt(ox)} {fmt(oy)} {b1} {b2}"
    return "\n".join([head] + _array_lines(u) + _array_lines(v)) + "\n"


def write_snapshot(path, f: Field) -> Path:
    return atomic_write_text(path, snapshot_text(f))


def _bc_from_data(kind: str, u: np.ndarray, v: np.ndarray, axis: int) -> BC:
    if kind != DIRICHLET:
        return BC(kind)
    # Dirichlet data lives in the edge rows; constant edges are recorded as end states.
    lo_u, hi_u = np.take(u, 0, axis=axis), np.take(u, -1, axis=axis)
    lo_v, hi_v = np.take(v, 0, axis=axis), np.take(v, -1, axis=axis)
    if all(np.ptp(a) == 0 for a in (lo_u, hi_u, lo_v, hi_v)):
        return BC.dirichlet((float(lo_u.flat[0]), float(lo_v.flat[0])),
                            (float(hi_u.flat[0]), float(hi_v.flat[0])))
    return BC.dirichlet()


def read_snapshot(path) -> Field:
    with open(path) as fh:
        head = fh.readline().split()
        if len(head) != 8:
            raise ValueError(f"{path}: malformed snapshot header")
        dims, nx, ny = int(head[0]), int(head[1]), int(head[2])
        h, ox, oy = float(head[3]), float(head[4]), float(head[5])
        data = np.loadtxt(fh, ndmin=2)
    if data.shape != (2 * nx, ny):
        raise ValueError(f"{path}: expected {2 * nx}x{ny} values, found {data.shape}")
    u, v = data[:nx], data[nx:]
    if dims == 1:
        u, v = u[:, 0], v[:, 0]
        return Field(u, v, h, (ox,), (_bc_from_data(head[6], u, v, 0),))
    bc = (_bc_from_data(head[6], u, v, 0), _bc_from_data(head[7], u, v, 1))
    return Field(u, v, h, (ox, oy), bc)
