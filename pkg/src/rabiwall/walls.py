"""Constructors for 1D and 2D wall fields used as backgrounds and initial data."""
from __future__ import annotations

import math

import numpy as np

from . import profile1d as p1
from .field import BC, DIRICHLET, PERIODIC, Field
from .potential import Params


def _profile_values(params: Params, s, profile):
    if profile is None:
        if params.alpha != 2.0:
            raise ValueError("closed-form walls exist only for alpha = 2; pass a solved profile")
        return p1.analytic_profile_alpha2(params.omega, s)
    return p1.sample_profile(profile, s)


def wall_field(
    params: Params,
    shape,
    h: float,
    origin,
    bc=None,
    theta: float = 0.0,
    bend: float = 0.0,
    profile: p1.Profile1D | None = None,
) -> Field:
    """2D wall u(x) = U(x1 sin(theta) + (x2 - bend sin(2 pi x1 / P)) cos(theta)).

    ``theta`` tilts the wall normal away from e2 toward e1; ``bend`` is the
    amplitude of a one-period sinusoidal displacement with P = n1*h (the
    periodic length).  Without ``profile`` the alpha=2 closed form is used.
    Dirichlet axes whose BC carries end states get those values written into
    their first and last rows.
    """
    shape = tuple(shape)
    bc = tuple(bc) if bc else (BC.periodic(), BC.dirichlet((params.a, params.b), (params.b, params.a)))
    x1 = origin[0] + h * np.arange(shape[0])
    x2 = origin[1] + h * np.arange(shape[1])
    X1, X2 = np.meshgrid(x1, x2, indexing="ij")
    period = shape[0] * h
    disp = bend * np.sin(2.0 * math.pi * (X1 - origin[0]) / period) if bend else 0.0
    s = math.sin(theta) * X1 + math.cos(theta) * (X2 - disp)
    u, v = _profile_values(params, s, profile)
    u, v = np.array(u), np.array(v)
    _apply_end_states(u, v, bc)
    return Field(u, v, h, tuple(origin), bc)


def _apply_end_states(u, v, bc):
    for k, b in enumerate(bc):
        if b.kind == DIRICHLET and b.left is not None and np.ndim(b.left) == 1:
            idx = [slice(None)] * u.ndim
            idx[k] = 0
            u[tuple(idx)], v[tuple(idx)] = b.left
            idx[k] = -1
            u[tuple(idx)], v[tuple(idx)] = b.right


def planar_wall(params: Params, profile: p1.Profile1D | None, n1: int, h: float,
                x2_range, x1_origin: float = 0.0, bc=None) -> Field:
    """x1-invariant wall across x2 in ``x2_range`` (node aligned when h matches the profile)."""
    lo, hi = x2_range
    n2 = int(round((hi - lo) / h)) + 1
    return wall_field(params, (n1, n2), h, (x1_origin, lo), bc=bc, profile=profile)


def wall_derivatives_alpha2(params: Params, f: Field, theta: float = 0.0):
    """Exact (du/dx1, dv/dx1, du/dx2, dv/dx2) of the straight alpha=2 wall at the nodes of ``f``."""
    X1, X2 = f.mesh()
    s = math.sin(theta) * X1 + math.cos(theta) * X2
    du, dv = p1.analytic_derivative_alpha2(params.omega, s)
    return math.sin(theta) * du, math.sin(theta) * dv, math.cos(theta) * du, math.cos(theta) * dv


def line_field(profile: p1.Profile1D, bc=None) -> Field:
    """Profile as a 1D Field on its own (re-centred) nodes."""
    bc = bc or (BC.dirichlet(),)
    return Field(profile.U, profile.V, profile.h, (float(profile.t[0]),), tuple(bc))


def periodic_x1_bc(params: Params):
    return (BC(PERIODIC), BC.dirichlet((params.a, params.b), (params.b, params.a)))
