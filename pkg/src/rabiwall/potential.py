"""Double-well potential of the Rabi-coupled two-component condensate.

    W(u, v) = (1 - u^2 - v^2)^2 / 4 + (omega - alpha*u*v)^2 / (2*alpha)

All pointwise functions accept scalars or numpy arrays for ``u`` and ``v``
and broadcast.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ParamsOutOfRange

DEFAULT_ADMISSIBLE_TOL = 1e-10


@dataclass(frozen=True)
class Params:
    alpha: float
    omega: float
    a: float
    b: float
    c: float

    @property
    def ratio(self) -> float:
        """omega / alpha, the value of u*v on the hyperbola."""
        return self.omega / self.alpha


class StatePoint(NamedTuple):
    u: float
    v: float


@dataclass(frozen=True)
class HessianW:
    w_uu: float
    w_uv: float
    w_vv: float

    @property
    def w_vu(self):
        return self.w_uv

    def matrix(self) -> np.ndarray:
        return np.array([[self.w_uu, self.w_uv], [self.w_uv, self.w_vv]])


def validate_params(alpha: float, omega: float) -> Params:
    """Check ``0 < omega < alpha/2`` and compute the steady-state constants.

    ``a < b`` are the roots of ``x^2 - s x + omega/alpha`` with
    ``s = sqrt(1 + 2 omega/alpha)``; the larger root is formed first and the
    smaller one recovered from the product ``a*b = omega/alpha`` so small
    ratios do not cancel.
    """
    alpha = float(alpha)
    omega = float(omega)
    if not (math.isfinite(alpha) and math.isfinite(omega)):
        raise ParamsOutOfRange(f"alpha and omega must be finite, got ({alpha}, {omega})")
    if alpha <= 0:
        raise ParamsOutOfRange(f"alpha must be > 0, got {alpha}")
    if not (0.0 < omega < alpha / 2):
        raise ParamsOutOfRange(
            f"parameters violate 0 < omega < alpha/2: omega={omega}, alpha/2={alpha / 2}"
        )
    p = omega / alpha
    s = math.sqrt(1.0 + 2.0 * p)
    b = 0.5 * (s + math.sqrt(1.0 - 2.0 * p))
    a = p / b
    c = math.sqrt((1.0 + omega) / (2.0 + alpha))
    return Params(alpha=alpha, omega=omega, a=a, b=b, c=c)


def potential_value(p, params: Params):
    u, v = p
    return 0.25 * (1.0 - u * u - v * v) ** 2 + (params.omega - params.alpha * u * v) ** 2 / (
        2.0 * params.alpha
    )


def gradient_arrays(u, v, params: Params):
    r = u * u + v * v - 1.0
    q = params.alpha * u * v - params.omega
    return u * r + v * q, v * r + u * q


def potential_gradient(p, params: Params):
    """Return ``(W_u, W_v)``; these are the right-hand sides of the system."""
    u, v = p
    return gradient_arrays(u, v, params)


def hessian_arrays(u, v, params: Params):
    alpha, omega = params.alpha, params.omega
    uu, vv = u * u, v * v
    w_uu = 3.0 * uu + vv - 1.0 + alpha * vv
    w_vv = uu + 3.0 * vv - 1.0 + alpha * uu
    w_uv = (2.0 + 2.0 * alpha) * u * v - omega
    return w_uu, w_uv, w_vv


def potential_hessian(p, params: Params) -> HessianW:
    u, v = p
    return HessianW(*hessian_arrays(u, v, params))


def wuv_lower_bound(params: Params) -> float:
    """Lower bound ``(2/alpha + 1) omega`` of W_uv on the admissible region."""
    return (2.0 / params.alpha + 1.0) * params.omega


def steady_states(params: Params) -> list[StatePoint]:
    return [
        StatePoint(params.a, params.b),
        StatePoint(params.b, params.a),
        StatePoint(params.c, params.c),
    ]


def in_admissible_region(p, params: Params, tol: float = DEFAULT_ADMISSIBLE_TOL):
    """Closed region between the unit circle and the hyperbola ``uv = omega/alpha``."""
    if tol < 0:
        raise ValueError("tol must be >= 0")
    u, v = p
    ok = (
        (np.asarray(u) > -tol)
        & (np.asarray(v) > -tol)
        & (u * u + v * v <= 1.0 + tol)
        & (u * v >= params.ratio - tol)
    )
    if np.ndim(ok) == 0:
        return bool(ok)
    return ok


def sample_admissible(params: Params, n: int, rng: np.random.Generator):
    """Uniform samples from the admissible region by rejection in polar coordinates."""
    out_u, out_v = [], []
    need = n
    while need > 0:
        k = max(4 * need, 64)
        r = np.sqrt(rng.uniform(0.0, 1.0, k))
        th = rng.uniform(0.0, 0.5 * np.pi, k)
        u, v = r * np.cos(th), r * np.sin(th)
        keep = u * v >= params.ratio
        out_u.append(u[keep])
        out_v.append(v[keep])
        need -= int(keep.sum())
    return np.concatenate(out_u)[:n], np.concatenate(out_v)[:n]


def max_hessian_eigenvalue(params: Params, samples: int = 201) -> float:
    """Largest |eigenvalue| of D^2 W over a deterministic grid of the admissible region."""
    g = np.linspace(0.0, 1.0, samples)
    u, v = np.meshgrid(g, g, indexing="ij")
    mask = (u * u + v * v <= 1.0) & (u * v >= params.ratio)
    w_uu, w_uv, w_vv = hessian_arrays(u[mask], v[mask], params)
    mean = 0.5 * (w_uu + w_vv)
    rad = np.sqrt(0.25 * (w_uu - w_vv) ** 2 + w_uv**2)
    return float(np.max(np.maximum(np.abs(mean + rad), np.abs(mean - rad))))


def state_stability(p, params: Params) -> str:
    """'stable' if D^2 W is positive definite at ``p``, otherwise 'unstable'."""
    eig = np.linalg.eigvalsh(potential_hessian(p, params).matrix())
    return "stable" if eig[0] > 0 else "unstable"
