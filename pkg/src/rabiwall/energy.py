"""Ginzburg-Landau energy on grids, cube-translation scans and growth fits.

The energy of a window is a sum of per-cell contributions.  A cell carries
the mean of the squared node differences along each of its edges (one
gradient sample per face) and the corner average of W, so energies of
adjacent windows add up exactly.  Summed over a whole grid, the derivative
of the energy with respect to an interior node is ``h^d (-Lap_h u + W_u)``
with the standard 3/5-point Laplacian.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid

from . import potential as pot
from .errors import DegenerateFit, WindowOutOfDomain
from .field import PERIODIC, Field, central_diff
from .potential import Params

_SNAP_TOL = 1e-6
ZERO_DENSITY = 1e-14


@dataclass(frozen=True)
class EnergyScan:
    R: float
    t_samples: np.ndarray
    E: np.ndarray
    total_variation: float


@dataclass(frozen=True)
class GrowthFit:
    exponent: float
    constants: np.ndarray
    radii: np.ndarray
    J: np.ndarray


def _snap(f: Field, axis: int, x: float) -> int:
    """Nearest node index to coordinate ``x`` on ``axis``."""
    pos = (x - f.origin[axis]) / f.h
    if pos < -_SNAP_TOL or pos > f.shape[axis] - 1 + _SNAP_TOL:
        lo, hi = f.extent(axis)
        raise WindowOutOfDomain(f"window edge {x} outside [{lo}, {hi}] on axis {axis}")
    return int(np.clip(round(pos), 0, f.shape[axis] - 1))


def window_indices(f: Field, window) -> tuple:
    """Node index ranges ``(i0, i1)`` per axis for an axis-aligned box."""
    if window is None:
        return tuple((0, n - 1) for n in f.shape)
    if f.dims == 1 and np.ndim(window[0]) == 0:
        window = (window,)
    if len(window) != f.dims:
        raise WindowOutOfDomain("window needs one (lo, hi) pair per axis")
    out = []
    for k, (lo, hi) in enumerate(window):
        if hi < lo:
            raise WindowOutOfDomain(f"empty window on axis {k}: ({lo}, {hi})")
        out.append((_snap(f, k, lo), _snap(f, k, hi)))
    return tuple(out)


def _cell_energies(u, v, h, params: Params):
    d = u.ndim
    W = pot.potential_value((u, v), params)
    grad = 0.0
    for k in range(d):
        for arr in (u, v):
            sq = np.diff(arr, axis=k) ** 2
            for j in range(d):
                if j != k:
                    sq = 0.5 * (np.take(sq, range(0, sq.shape[j] - 1), axis=j)
                                + np.take(sq, range(1, sq.shape[j]), axis=j))
            grad = grad + sq
    corners = W
    for k in range(d):
        corners = 0.5 * (np.take(corners, range(0, corners.shape[k] - 1), axis=k)
                         + np.take(corners, range(1, corners.shape[k]), axis=k))
    return 0.5 * h ** (d - 2) * grad + h**d * corners


def gl_energy(f: Field, window, params: Params) -> float:
    """Energy of ``f`` over the box ``window`` (None = the whole node range)."""
    idx = window_indices(f, window)
    sl = tuple(slice(i0, i1 + 1) for i0, i1 in idx)
    u, v = f.u[sl], f.v[sl]
    if any(i1 == i0 for i0, i1 in idx):
        return 0.0
    return float(np.sum(_cell_energies(u, v, f.h, params)))


def cell_density(f: Field, params: Params) -> np.ndarray:
    """Per-cell energy array divided by the cell volume."""
    return _cell_energies(f.u, f.v, f.h, params) / f.h**f.dims


def total_energy(f: Field, params: Params) -> float:
    """Energy of the full grid; periodic axes include the wrap-around cells."""
    u, v = f.u, f.v
    for k, bc in enumerate(f.bc):
        if bc.kind == PERIODIC:
            first = np.take(u, [0], axis=k)
            u = np.concatenate([u, first], axis=k)
            v = np.concatenate([v, np.take(v, [0], axis=k)], axis=k)
    return float(np.sum(_cell_energies(u, v, f.h, params)))


def _scan_ts(f: Field, t_min, t_max, steps):
    ts = np.linspace(t_min, t_max, steps)
    idx = np.round((ts - f.origin[1]) / f.h).astype(int)
    idx = np.unique(idx)
    return f.origin[1] + idx * f.h


def energy_translation_scan(
    f: Field, R: float, t_min: float, t_max: float, steps: int, params: Params
) -> EnergyScan:
    """E(t) over the translated cubes [-R, R] x [t - R, t + R].

    Sample points are snapped to grid rows (duplicates dropped) so every
    cube is grid aligned.
    """
    if f.dims != 2:
        raise ValueError("translation scans need a 2D field")
    if steps < 2:
        raise ValueError("steps must be >= 2")
    ts = _scan_ts(f, t_min, t_max, steps)
    E = np.array([gl_energy(f, ((-R, R), (t - R, t + R)), params) for t in ts])
    tv = float(np.sum(np.abs(np.diff(E))))
    return EnergyScan(R=float(R), t_samples=ts, E=E, total_variation=tv)


def boundary_flux(f: Field, R: float, t: float) -> float:
    """Surface integral of du/dx2 du/dnu + dv/dx2 dv/dnu over the boundary of Q_t.

    For solutions this equals dE/dt.  Derivatives are second-order central
    differences; face integrals use the trapezoidal rule.
    """
    (i0, i1), (j0, j1) = window_indices(f, ((-R, R), (t - R, t + R)))
    d1u, d1v = central_diff(f.u, f, 0), central_diff(f.v, f, 0)
    d2u, d2v = central_diff(f.u, f, 1), central_diff(f.v, f, 1)
    h = f.h
    top = d2u[i0:i1 + 1, j1] ** 2 + d2v[i0:i1 + 1, j1] ** 2
    bottom = d2u[i0:i1 + 1, j0] ** 2 + d2v[i0:i1 + 1, j0] ** 2
    right = d2u[i1, j0:j1 + 1] * d1u[i1, j0:j1 + 1] + d2v[i1, j0:j1 + 1] * d1v[i1, j0:j1 + 1]
    left = d2u[i0, j0:j1 + 1] * d1u[i0, j0:j1 + 1] + d2v[i0, j0:j1 + 1] * d1v[i0, j0:j1 + 1]
    return float(
        trapezoid(top, dx=h) - trapezoid(bottom, dx=h) + trapezoid(right, dx=h) - trapezoid(left, dx=h)
    )


def centered_energy_derivative(f: Field, R: float, t: float, delta: float, params: Params) -> float:
    e_plus = gl_energy(f, ((-R, R), (t + delta - R, t + delta + R)), params)
    e_minus = gl_energy(f, ((-R, R), (t - delta - R, t - delta + R)), params)
    return (e_plus - e_minus) / (2.0 * delta)


def energy_growth_exponent(f: Field, radii, params: Params) -> GrowthFit:
    """Least-squares slope of log J([-R, R]^d) against log R.

    ``constants`` holds J / R^(d-1) for each radius.
    """
    radii = np.asarray(radii, dtype=float)
    if radii.size < 3:
        raise ValueError("need at least 3 radii")
    J = np.array([gl_energy(f, tuple((-R, R) for _ in range(f.dims)), params) for R in radii])
    ratios = J / radii ** (f.dims - 1)
    # W at the end states is zero only up to rounding, so "zero" means density at roundoff level
    if np.any(J <= ZERO_DENSITY * (2 * radii) ** f.dims):
        raise DegenerateFit("zero energy in some window; exponent undefined", np.zeros_like(radii))
    slope = float(np.polyfit(np.log(radii), np.log(J), 1)[0])
    return GrowthFit(exponent=slope, constants=ratios, radii=radii, J=J)
