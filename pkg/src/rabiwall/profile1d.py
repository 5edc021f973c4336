"""One-dimensional domain walls: U'' = W_u(U, V), V'' = W_v(U, V) on the line,
connecting (a, b) at -infinity to (b, a) at +infinity.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from . import potential as pot
from .errors import MonotonicityLost, NoConvergence, ParamsOutOfRange
from .potential import Params

log = logging.getLogger(__name__)

CONTINUATION_STEP = 0.25
# Roundoff floor for the discrete monotonicity test in far tails.
MONOTONE_TOL = 1e-13


@dataclass(frozen=True)
class Grid1D:
    half_length: float
    n: int
    center: float = 0.0

    def __post_init__(self):
        if not self.half_length > 0:
            raise ValueError("half_length must be positive")
        if self.n < 3 or self.n % 2 == 0:
            raise ValueError(f"n must be odd and >= 3, got {self.n}")

    @property
    def h(self) -> float:
        return 2.0 * self.half_length / (self.n - 1)

    @property
    def nodes(self) -> np.ndarray:
        return self.center + np.linspace(-self.half_length, self.half_length, self.n)


@dataclass(frozen=True, eq=False)
class Profile1D:
    grid: Grid1D
    U: np.ndarray
    V: np.ndarray
    residual_inf: float = float("nan")
    newton_iters: int = 0
    shift: float = 0.0

    def __post_init__(self):
        for name in ("U", "V"):
            arr = np.array(getattr(self, name), dtype=float)
            if arr.shape != (self.grid.n,):
                raise ValueError(f"{name} must have length {self.grid.n}")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def t(self) -> np.ndarray:
        """Node coordinates after re-centring (U - V changes sign at t = 0)."""
        return self.grid.nodes - self.shift

    @property
    def h(self) -> float:
        return self.grid.h


def decay_rate(params: Params) -> float:
    """Tail rate of the alpha=2 wall with the same omega/alpha ratio."""
    w2 = min(2.0 * params.ratio, 1.0 - 1e-6)
    return math.sqrt((1.0 - w2) / 2.0)


def recommended_half_length(params: Params, factor: float = 20.0) -> float:
    return factor / decay_rate(params)


def analytic_profile_alpha2(omega, t):
    """Closed-form alpha=2 wall: U, V = (s +- d tanh(kappa t)) / 2.

    s = sqrt(1 + omega), d = b - a = sqrt(1 - omega), kappa = sqrt((1 - omega)/2).
    """
    if not (0.0 < omega < 1.0):
        raise ParamsOutOfRange(f"alpha=2 closed form needs 0 < omega < 1, got {omega}")
    s = math.sqrt(1.0 + omega)
    d = math.sqrt(1.0 - omega)
    kappa = math.sqrt((1.0 - omega) / 2.0)
    th = np.tanh(kappa * np.asarray(t, dtype=float))
    return 0.5 * (s + d * th), 0.5 * (s - d * th)


def analytic_derivative_alpha2(omega, t):
    """(U', V') of the closed-form alpha=2 wall."""
    d = math.sqrt(1.0 - omega)
    kappa = math.sqrt((1.0 - omega) / 2.0)
    sech2 = 1.0 / np.cosh(kappa * np.asarray(t, dtype=float)) ** 2
    du = 0.5 * d * kappa * sech2
    return du, -du


def discrete_residual(U, V, h, params: Params):
    """Interior residual (U'' - W_u, V'' - W_v) of the central-difference system."""
    U = np.asarray(U)
    V = np.asarray(V)
    wu, wv = pot.gradient_arrays(U[1:-1], V[1:-1], params)
    ru = (U[:-2] - 2.0 * U[1:-1] + U[2:]) / h**2 - wu
    rv = (V[:-2] - 2.0 * V[1:-1] + V[2:]) / h**2 - wv
    return ru, rv


def _jacobian_banded(U, V, h, params: Params):
    """Banded (l = u = 2) Jacobian for unknowns interleaved as U_1, V_1, U_2, V_2, ..."""
    w_uu, w_uv, w_vv = pot.hessian_arrays(U[1:-1], V[1:-1], params)
    m = len(w_uu)
    N = 2 * m
    ab = np.zeros((5, N))
    inv_h2 = 1.0 / h**2
    # ab[2 + i - j, j] = J[i, j]
    ab[2, 0::2] = -2.0 * inv_h2 - w_uu
    ab[2, 1::2] = -2.0 * inv_h2 - w_vv
    ab[1, 1::2] = -w_uv  # J[2k, 2k+1]
    ab[3, 0::2] = -w_uv  # J[2k+1, 2k]
    ab[0, 2:] = inv_h2  # J[i, i+2]
    ab[4, : N - 2] = inv_h2  # J[i+2, i]
    return ab


def _newton(U, V, h, params: Params, tol, max_iters):
    """Damped Newton; iteration k first tests the residual, then steps.

    An already converged iterate therefore returns unchanged after one
    iteration.  This matters: the truncated problem keeps a near-zero
    translation mode, and a step taken from a converged state would slide
    the wall by residual / (tiny eigenvalue).
    """
    U = U.copy()
    V = V.copy()

    def resid(U_, V_):
        ru, rv = discrete_residual(U_, V_, h, params)
        r = np.empty(2 * len(ru))
        r[0::2], r[1::2] = ru, rv
        return r

    r = resid(U, V)
    norm = np.linalg.norm(r)
    res_inf = float("nan")
    for it in range(1, max_iters + 1):
        res_inf = float(np.max(np.abs(r))) if r.size else 0.0
        if not np.isfinite(res_inf):
            raise NoConvergence("Newton iterate became non-finite", res_inf, it)
        if res_inf <= tol:
            return U, V, res_inf, it
        step = solve_banded((2, 2), _jacobian_banded(U, V, h, params), -r)
        lam = 1.0
        for _ in range(21):
            U_try = U.copy()
            V_try = V.copy()
            U_try[1:-1] += lam * step[0::2]
            V_try[1:-1] += lam * step[1::2]
            r_try = resid(U_try, V_try)
            norm_try = np.linalg.norm(r_try)
            if norm_try <= (1.0 - 1e-4 * lam) * norm or norm_try <= tol:
                break
            lam *= 0.5
        U, V, r, norm = U_try, V_try, r_try, norm_try
    res_inf = float(np.max(np.abs(r))) if r.size else 0.0
    if res_inf <= tol:
        return U, V, res_inf, max_iters
    raise NoConvergence(
        f"Newton did not reach residual {tol:g} in {max_iters} iterations "
        f"(last residual {res_inf:.3e})",
        res_inf,
        max_iters,
    )


def crossing_point(t, U, V) -> float:
    """Location where U - V changes sign, by linear interpolation."""
    g = np.asarray(U) - np.asarray(V)
    idx = np.nonzero(np.diff(np.sign(g)) != 0)[0]
    exact = np.nonzero(g == 0.0)[0]
    if exact.size:
        return float(t[exact[0]])
    if idx.size == 0:
        raise MonotonicityLost("U - V does not change sign on the grid")
    k = idx[0]
    return float(t[k] - g[k] * (t[k + 1] - t[k]) / (g[k + 1] - g[k]))


def check_monotone(p: Profile1D):
    """Return (min forward difference of U, max forward difference of V)."""
    return float(np.min(np.diff(p.U))), float(np.max(np.diff(p.V)))


def seed_profile(params: Params, grid: Grid1D):
    """alpha=2 closed form at the same omega/alpha ratio; same end states (a, b), (b, a)."""
    t = grid.nodes - grid.center
    return analytic_profile_alpha2(2.0 * params.ratio, t)


def solve_profile(
    params: Params,
    grid: Grid1D,
    init: Profile1D | None = None,
    tol: float = 1e-10,
    max_iters: int = 50,
    continuation_step: float = CONTINUATION_STEP,
) -> Profile1D:
    """Damped Newton solve of the truncated heteroclinic problem.

    Dirichlet data (a, b) at the left end and (b, a) at the right end.  Without
    ``init`` the solve starts from the exact alpha=2 wall with the same end
    states and, when alpha is far from 2, walks alpha in steps of at most
    ``continuation_step`` keeping omega/alpha fixed.
    """
    h = grid.h
    if init is not None:
        if init.grid.n != grid.n:
            raise ValueError("init profile lives on a different grid")
        U0, V0 = np.array(init.U), np.array(init.V)
        path = [params.alpha]
    else:
        U0, V0 = seed_profile(params, grid)
        U0, V0 = np.array(U0), np.array(V0)
        nsteps = int(math.ceil(abs(params.alpha - 2.0) / continuation_step))
        path = list(np.linspace(2.0, params.alpha, nsteps + 1)[1:]) if nsteps else [params.alpha]

    U, V = U0, V0
    total_iters = 0
    res = float("nan")
    for alpha_k in path:
        pk = params if alpha_k == params.alpha else pot.validate_params(alpha_k, alpha_k * params.ratio)
        U[0], V[0] = params.a, params.b
        U[-1], V[-1] = params.b, params.a
        U, V, res, iters = _newton(U, V, h, pk, tol, max_iters)
        total_iters += iters
        log.debug("alpha=%.4f converged in %d iterations, residual %.2e", alpha_k, iters, res)

    shift = crossing_point(grid.nodes, U, V)
    prof = Profile1D(grid, U, V, residual_inf=res, newton_iters=total_iters, shift=shift)
    du_min, dv_max = check_monotone(prof)
    if du_min < -MONOTONE_TOL or dv_max > MONOTONE_TOL:
        raise MonotonicityLost(
            f"converged profile is not monotone (min dU={du_min:.3e}, max dV={dv_max:.3e}); "
            "try a longer window"
        )
    return prof


def profile_energy(p: Profile1D, params: Params) -> float:
    """1D Ginzburg-Landau energy, assembled cell by cell.

    Each cell carries (dU^2 + dV^2) / (2h) from the forward differences across
    it plus the trapezoidal share h (W_k + W_{k+1}) / 2 of the potential.
    """
    h = p.h
    dU = np.diff(p.U)
    dV = np.diff(p.V)
    W = pot.potential_value((p.U, p.V), params)
    return float(np.sum(0.5 * (dU**2 + dV**2) / h + 0.5 * h * (W[:-1] + W[1:])))


def analytic_energy_alpha2(omega: float) -> float:
    """Exact line energy of the alpha=2 wall, 2 d^2 kappa / 3."""
    d2 = 1.0 - omega
    kappa = math.sqrt((1.0 - omega) / 2.0)
    return 2.0 * d2 * kappa / 3.0


def constant_profile(state, grid: Grid1D) -> Profile1D:
    return Profile1D(grid, np.full(grid.n, state[0]), np.full(grid.n, state[1]), 0.0, 0)


def sample_profile(p: Profile1D, t):
    """Evaluate the profile at ``t`` (re-centred coordinates), constant beyond the ends."""
    t = np.asarray(t, dtype=float)
    return np.interp(t, p.t, p.U), np.interp(t, p.t, p.V)
