"""Gradient-flow relaxation u_t = Lap u - W_u, v_t = Lap v - W_v on 2D grids and
the diagnostics that test whether the relaxed state is one-dimensional.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field as dc_field, replace

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from . import potential as pot
from .energy import total_energy
from .errors import (
    LevelSetMissing,
    NoConvergence,
    NonFinite,
    ReferenceNotSigned,
    StabilityViolation,
    WrongAlpha,
)
from .field import Field, central_diff, interior_mask, laplacian, neg_laplacian_matrix
from .linearized import assemble_operator
from .potential import Params

log = logging.getLogger(__name__)

ENERGY_TOL = 1e-10
ADMISSIBLE_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class FlowState:
    field: Field
    time: float = 0.0
    step_count: int = 0
    dt: float = 0.1
    energy_history: np.ndarray = dc_field(default_factory=lambda: np.zeros(0))
    history_steps: np.ndarray = dc_field(default_factory=lambda: np.zeros(0, dtype=int))
    warnings: tuple = ()


@dataclass(frozen=True)
class LimitingProfiles:
    upper_u: np.ndarray
    upper_v: np.ndarray
    lower_u: np.ndarray
    lower_v: np.ndarray
    warnings: tuple = ()


@dataclass(frozen=True, eq=False)
class SlopeReport:
    sigma: np.ndarray
    tau: np.ndarray
    evaluated: np.ndarray
    sigma_mean: float
    sigma_std: float
    tau_mean: float
    tau_std: float
    sup_diff: float

    @property
    def stddev(self) -> float:
        return max(self.sigma_std, self.tau_std)


def max_stable_dt(params: Params) -> float:
    """2 / sup|D^2 W| over the admissible region; energy decay is guaranteed below it."""
    return 2.0 / pot.max_hessian_eigenvalue(params)


class GradientFlow:
    """Time stepper with a fixed factorisation of (I - dt Lap_h) on the free nodes.

    Dirichlet edge nodes keep their initial values.  ``scheme="explicit"``
    replaces the implicit diffusion by forward Euler and needs dt <= h^2/(2d).
    """

    def __init__(self, field: Field, params: Params, dt: float, scheme: str = "semi-implicit"):
        if dt <= 0:
            raise ValueError("dt must be positive")
        self.params = params
        self.dt = float(dt)
        self.scheme = scheme
        self.template = field
        self.mask = interior_mask(field)
        if scheme == "explicit":
            if dt > field.h**2 / (2 * field.dims):
                raise StabilityViolation(f"explicit scheme needs dt <= h^2/{2 * field.dims}")
            self._lu = None
        elif scheme == "semi-implicit":
            neg_lap = neg_laplacian_matrix(field, self.mask)
            m = neg_lap.shape[0]
            self._lu = splu((sp.identity(m, format="csc") + self.dt * neg_lap).tocsc())
        else:
            raise ValueError(f"unknown scheme {scheme!r}")
        # Lap_h of the boundary data, seen from the free nodes.
        bu = np.where(self.mask, 0.0, field.u)
        bv = np.where(self.mask, 0.0, field.v)
        self._bnd_u = np.nan_to_num(laplacian(bu, field))[self.mask]
        self._bnd_v = np.nan_to_num(laplacian(bv, field))[self.mask]

    def step(self, u: np.ndarray, v: np.ndarray):
        wu, wv = pot.gradient_arrays(u, v, self.params)
        dt = self.dt
        new_u = u.copy()
        new_v = v.copy()
        if self._lu is None:
            lap_u, lap_v = laplacian(u, self.template), laplacian(v, self.template)
            new_u[self.mask] = (u + dt * (lap_u - wu))[self.mask]
            new_v[self.mask] = (v + dt * (lap_v - wv))[self.mask]
        else:
            new_u[self.mask] = self._lu.solve(u[self.mask] - dt * wu[self.mask] + dt * self._bnd_u)
            new_v[self.mask] = self._lu.solve(v[self.mask] - dt * wv[self.mask] + dt * self._bnd_v)
        return new_u, new_v


def initial_state(field: Field, params: Params, dt: float) -> FlowState:
    e0 = total_energy(field, params)
    return FlowState(field, 0.0, 0, float(dt), np.array([e0]), np.array([0]))


def evolve(
    state: FlowState,
    steps: int,
    params: Params,
    sample_every: int = 1,
    solver: GradientFlow | None = None,
    energy_tol: float = ENERGY_TOL,
) -> FlowState:
    """Advance ``steps`` time steps, checking energy decay after every step."""
    solver = solver or GradientFlow(state.field, params, state.dt)
    f = state.field
    u, v = np.array(f.u), np.array(f.v)
    e_prev = total_energy(f, params)
    hist = list(state.energy_history)
    hsteps = list(state.history_steps)
    warnings = list(state.warnings)
    n0 = state.step_count
    for k in range(1, steps + 1):
        u, v = solver.step(u, v)
        if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v))):
            raise NonFinite(f"non-finite values after step {n0 + k}")
        e = total_energy(f.with_values(u, v), params)
        if e > e_prev + energy_tol * max(1.0, abs(e_prev)):
            raise StabilityViolation(
                f"energy increased from {e_prev:.15g} to {e:.15g} at step {n0 + k}; reduce dt"
            )
        e_prev = e
        if (n0 + k) % sample_every == 0 or k == steps:
            hist.append(e)
            hsteps.append(n0 + k)
    new_field = f.with_values(u, v)
    adm = pot.in_admissible_region((u, v), params, ADMISSIBLE_TOL)
    if not np.all(adm):
        msg = f"admissibility violated at {int(np.sum(~adm))} nodes (step {n0 + steps})"
        log.warning(msg)
        warnings.append(msg)
    return FlowState(
        new_field,
        state.time + steps * solver.dt,
        n0 + steps,
        solver.dt,
        np.array(hist),
        np.array(hsteps, dtype=int),
        tuple(warnings),
    )


def step_change(a: Field, b: Field, dt: float) -> float:
    return max(float(np.max(np.abs(a.u - b.u))), float(np.max(np.abs(a.v - b.v)))) / dt


def elliptic_residual(f: Field, params: Params) -> float:
    """sup over free nodes of |Lap_h u - W_u|, |Lap_h v - W_v|."""
    m = interior_mask(f)
    wu, wv = pot.gradient_arrays(f.u, f.v, params)
    ru = (laplacian(f.u, f) - wu)[m]
    rv = (laplacian(f.v, f) - wv)[m]
    return float(max(np.max(np.abs(ru)), np.max(np.abs(rv))))


def run_to_convergence(
    state: FlowState,
    params: Params,
    tol: float = 1e-10,
    max_steps: int = 100000,
    chunk: int = 50,
    sample_every: int = 10,
    callback=None,
):
    """Evolve in chunks until the per-step change over dt drops to ``tol``.

    ``callback(state)`` runs after each chunk (diagnostics); returns
    (state, converged).
    """
    solver = GradientFlow(state.field, params, state.dt)
    while state.step_count < max_steps:
        n = min(chunk, max_steps - state.step_count)
        state = evolve(state, n - 1, params, sample_every, solver) if n > 1 else state
        last = state.field
        state = evolve(state, 1, params, sample_every, solver)
        if callback is not None:
            callback(state)
        if step_change(last, state.field, state.dt) <= tol:
            return state, True
    return state, False


def relax_newton(f: Field, params: Params, tol: float = 1e-10, max_iter: int = 30) -> Field:
    """Newton iteration for Lap_h u = W_u, Lap_h v = W_v on the free nodes of ``f``.

    The Jacobian of -Lap_h u + W_u is the linearized operator on the same
    nodes.  Boundary nodes keep their values.
    """
    m = interior_mask(f)
    u, v = np.array(f.u), np.array(f.v)
    for it in range(max_iter):
        g = f.with_values(u, v)
        wu, wv = pot.gradient_arrays(u, v, params)
        F = np.concatenate([(-laplacian(u, g) + wu)[m], (-laplacian(v, g) + wv)[m]])
        res = float(np.max(np.abs(F)))
        if res <= tol:
            return g
        J = assemble_operator(g, params, m)
        delta = splu(J.tocsc()).solve(-F)
        k = delta.size // 2
        u[m] += delta[:k]
        v[m] += delta[k:]
    raise NoConvergence(f"Newton relaxation stalled at residual {res:.3e}", res, max_iter)


# -- diagnostics -------------------------------------------------------------


def limiting_profiles(f: Field, margin: int = 1, tol: float = 1e-10) -> LimitingProfiles:
    """Row averages of the top and bottom ``margin`` rows in x2 as +/- infinity surrogates."""
    if f.dims != 2:
        raise ValueError("limiting profiles need a 2D field")
    warnings = []
    du = np.diff(f.u, axis=1)
    dv = np.diff(f.v, axis=1)
    if np.any(du < -tol) or np.any(dv > tol):
        msg = "field is not monotone in x2"
        log.warning(msg)
        warnings.append(msg)
    return LimitingProfiles(
        upper_u=f.u[:, -margin:].mean(axis=1),
        upper_v=f.v[:, -margin:].mean(axis=1),
        lower_u=f.u[:, :margin].mean(axis=1),
        lower_v=f.v[:, :margin].mean(axis=1),
        warnings=tuple(warnings),
    )


def slope_fields(f: Field, threshold: float = 1e-6, derivatives=None) -> SlopeReport:
    """sigma = (du/dx1)/(du/dx2), tau = (dv/dx1)/(dv/dx2) over the monotone region.

    Nodes count when |du/dx2| and |dv/dx2| are at least ``threshold`` times
    their maxima.  ``derivatives`` may supply (d1u, d1v, d2u, d2v) directly.
    """
    if derivatives is None:
        d1u, d1v = central_diff(f.u, f, 0), central_diff(f.v, f, 0)
        d2u, d2v = central_diff(f.u, f, 1), central_diff(f.v, f, 1)
    else:
        d1u, d1v, d2u, d2v = derivatives
    inner = interior_mask(f)
    big = (
        inner
        & (np.abs(d2u) >= threshold * np.max(np.abs(d2u)))
        & (np.abs(d2v) >= threshold * np.max(np.abs(d2v)))
    )
    wrong = big & ~((d2u > 0) & (d2v < 0))
    if np.sum(wrong) > 0.01 * np.sum(inner):
        raise ReferenceNotSigned(
            f"monotonicity du/dx2 > 0 > dv/dx2 fails at {int(np.sum(wrong))} nodes"
        )
    ok = big & ~wrong
    with np.errstate(divide="ignore", invalid="ignore"):
        sigma = np.where(ok, d1u / d2u, np.nan)
        tau = np.where(ok, d1v / d2v, np.nan)
    s, t = sigma[ok], tau[ok]
    return SlopeReport(
        sigma=sigma,
        tau=tau,
        evaluated=ok,
        sigma_mean=float(np.mean(s)),
        sigma_std=float(np.std(s)),
        tau_mean=float(np.mean(t)),
        tau_std=float(np.std(t)),
        sup_diff=float(np.max(np.abs(s - t))),
    )


def decoupling_check(f: Field, params: Params):
    """(sup |u + v - sqrt(1 + omega)|, S-energy over the largest centred square window).

    The S-energy is the nodal sum of |grad S|^2 + 2 omega S^2.
    """
    if params.alpha != 2.0:
        raise WrongAlpha(f"decoupling holds only for alpha = 2, got {params.alpha}")
    S = f.u + f.v - math.sqrt(1.0 + params.omega)
    sup_dev = float(np.max(np.abs(S)))
    half = min(min(abs(lo), abs(hi)) for lo, hi in (f.extent(k) for k in range(f.dims)))
    X = f.mesh()
    inside = np.ones(f.shape, dtype=bool)
    for x in X:
        inside &= np.abs(x) <= half + 1e-12
    grad2 = sum(central_diff(S, f, k) ** 2 for k in range(f.dims))
    dens = grad2 + 2.0 * params.omega * S**2
    return sup_dev, f.h**f.dims * float(np.sum(dens[inside]))


def level_crossings(f: Field) -> np.ndarray:
    """x2 position per x1 column where u - v changes sign (linear interpolation)."""
    g = f.u - f.v
    x2 = f.axis(1)
    out = np.empty(f.shape[0])
    for i in range(f.shape[0]):
        col = g[i]
        sgn = np.signbit(col)
        idx = np.nonzero(sgn[:-1] != sgn[1:])[0]
        if idx.size == 0:
            raise LevelSetMissing(f"column {i} has no sign change of u - v")
        k = idx[0]
        out[i] = x2[k] - col[k] * (x2[k + 1] - x2[k]) / (col[k + 1] - col[k])
    return out


def flatness_metric(f: Field) -> float:
    """Max deviation of the {u = v} crossings from their least-squares line / domain height."""
    x1 = f.axis(0)
    c = level_crossings(f)
    slope, icpt = np.polyfit(x1, c, 1)
    lo, hi = f.extent(1)
    return float(np.max(np.abs(c - (slope * x1 + icpt))) / (hi - lo))


def with_dt(state: FlowState, dt: float) -> FlowState:
    return replace(state, dt=float(dt))
