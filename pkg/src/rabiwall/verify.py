"""Small-scale invariant suite behind ``rabiwall verify``.

Each check returns ``(value, tolerance, passed)``.  A check that raises is
reported with status ``error`` and counts as a failure.  The mutation mode
``flip_wuv`` swaps the sign of the mixed second derivative of W for the
duration of the run; a healthy suite must notice.
"""
from __future__ import annotations

import contextlib
import logging
import math
from dataclasses import dataclass

import numpy as np

from . import energy, flow, linearized as lin, potential as pot, profile1d as p1, walls
from .field import BC, central_diff

log = logging.getLogger(__name__)

MUTATIONS = ("none", "flip_wuv")


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    value: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@contextlib.contextmanager
def mutation(kind: str):
    if kind not in MUTATIONS:
        raise ValueError(f"unknown mutation {kind!r}; choose from {', '.join(MUTATIONS)}")
    if kind == "none":
        yield
        return
    original = pot.hessian_arrays

    def flipped(u, v, params):
        w_uu, w_uv, w_vv = original(u, v, params)
        return w_uu, -w_uv, w_vv

    pot.hessian_arrays = flipped
    try:
        yield
    finally:
        pot.hessian_arrays = original


# -- checks ------------------------------------------------------------------


def check_alpha2_oracle(rng):
    P = pot.validate_params(2.0, 0.6)
    prof = p1.solve_profile(P, p1.Grid1D(20.0, 4001))
    U, V = p1.analytic_profile_alpha2(0.6, prof.t)
    err = max(np.max(np.abs(prof.U - U)), np.max(np.abs(prof.V - V)))
    return err, 1e-6, err <= 1e-6


def _fd_points(rng, n=1000):
    P = pot.validate_params(2.5, 0.7)
    u, v = pot.sample_admissible(P, n, rng)
    return P, u, v


def _rel(a, b):
    return np.abs(a - b) / np.maximum(np.abs(a), 1e-3)


def check_gradient_fd(rng):
    P, u, v = _fd_points(rng)
    e = 1e-6
    wu, wv = pot.gradient_arrays(u, v, P)
    W = lambda x, y: pot.potential_value((x, y), P)  # noqa: E731
    fu = (W(u + e, v) - W(u - e, v)) / (2 * e)
    fv = (W(u, v + e) - W(u, v - e)) / (2 * e)
    err = float(max(np.max(_rel(wu, fu)), np.max(_rel(wv, fv))))
    return err, 1e-6, err <= 1e-6


def check_hessian_fd(rng):
    P, u, v = _fd_points(rng)
    e = 1e-6
    w_uu, w_uv, w_vv = pot.hessian_arrays(u, v, P)
    gp, gm = pot.gradient_arrays(u + e, v, P), pot.gradient_arrays(u - e, v, P)
    hp, hm = pot.gradient_arrays(u, v + e, P), pot.gradient_arrays(u, v - e, P)
    f_uu = (gp[0] - gm[0]) / (2 * e)
    f_uv = (hp[0] - hm[0]) / (2 * e)
    f_vu = (gp[1] - gm[1]) / (2 * e)
    f_vv = (hp[1] - hm[1]) / (2 * e)
    err = float(max(np.max(_rel(w_uu, f_uu)), np.max(_rel(w_uv, f_uv)),
                    np.max(_rel(w_uv, f_vu)), np.max(_rel(w_vv, f_vv))))
    return err, 1e-6, err <= 1e-6


def check_wuv_bound(rng):
    worst = math.inf
    for alpha, omega in ((2.0, 0.6), (3.0, 1.2), (4.0, 0.5)):
        P = pot.validate_params(alpha, omega)
        u, v = pot.sample_admissible(P, 1000, rng)
        w_uv = pot.potential_hessian((u, v), P).w_uv
        worst = min(worst, float(np.min(w_uv - pot.wuv_lower_bound(P))))
    return worst, -1e-12, worst >= -1e-12


def check_steady_states(rng):
    grad, rel = 0.0, 0.0
    for alpha, omega in ((2.0, 0.6), (3.0, 1.2), (4.0, 0.5)):
        P = pot.validate_params(alpha, omega)
        for s in pot.steady_states(P):
            grad = max(grad, float(np.hypot(*pot.potential_gradient(s, P))))
        rel = max(rel, abs(P.a**2 + P.b**2 - 1.0), abs(P.a * P.b - P.ratio))
    return grad, 1e-12, grad <= 1e-12 and rel <= 1e-14


def _kernel_residual(h):
    P = pot.validate_params(2.0, 0.6)
    n1 = int(round(2.0 / h))
    n2 = int(round(20.0 / h)) + 1
    f = walls.wall_field(P, (n1, n2), h, (-1.0, -10.0))
    d = walls.wall_derivatives_alpha2(P, f)
    L = lin.apply_L(f, lin.PerturbationPair(d[2], d[3]), P)
    inner = slice(1, -1)
    return max(np.max(np.abs(L.xi[:, inner])), np.max(np.abs(L.eta[:, inner])))


def check_kernel_order(rng):
    res = [_kernel_residual(h) for h in (0.2, 0.1, 0.05, 0.025)]
    ratios = [res[i] / res[i + 1] for i in range(3)]
    worst = min(ratios, key=lambda r: abs(r - 4.0))
    return worst, 0.5, all(3.5 <= r <= 4.5 for r in ratios)


def _ladder_background():
    P = pot.validate_params(2.0, 0.6)
    h = 0.5
    n1 = int(round(44.0 / h)) + 1
    bc = (BC.free(), BC.dirichlet((P.a, P.b), (P.b, P.a)))
    return P, walls.planar_wall(P, None, n1, h, (-30.0, 30.0), x1_origin=-22.0, bc=bc)


def check_spectrum_ladder(rng):
    P, f = _ladder_background()
    lams = [lin.principal_eigenpair(f, R, P).lambda_R for R in (5.0, 10.0, 20.0)]
    ok = min(lams) >= -1e-8 and all(lams[i + 1] <= lams[i] + 1e-12 for i in range(2))
    return min(lams), -1e-8, ok


def check_spectrum_dense(rng):
    P, f = _ladder_background()
    lam = lin.principal_eigenpair(f, 5.0, P).lambda_R
    err = abs(lam - lin.dense_lowest_eigenvalue(f, 5.0, P))
    return err, 1e-8, err <= 1e-8


def check_growth_exponent(rng):
    P = pot.validate_params(2.0, 0.6)
    f = walls.planar_wall(P, None, 321, 0.5, (-90.0, 90.0), x1_origin=-80.0, bc=(BC.free(), BC.dirichlet()))
    fit = energy.energy_growth_exponent(f, (10.0, 20.0, 40.0, 80.0), P)
    spread = float((fit.constants.max() - fit.constants.min()) / fit.constants.mean())
    ok = abs(fit.exponent - 1.0) <= 0.05 and spread <= 0.05
    return abs(fit.exponent - 1.0), 0.05, ok


def _scan_field():
    P = pot.validate_params(2.0, 0.6)
    h = 0.1
    f = walls.planar_wall(P, None, 241, h, (-42.0, 62.0), x1_origin=-12.0, bc=(BC.free(), BC.dirichlet()))
    return P, f


def check_scan_flux(rng):
    P, f = _scan_field()
    scan = energy.energy_translation_scan(f, 10.0, -30.0, 50.0, 81, P)
    t_mid = float(scan.t_samples[len(scan.t_samples) // 2])
    flux = energy.boundary_flux(f, 10.0, t_mid)
    fd = energy.centered_energy_derivative(f, 10.0, t_mid, 0.1, P)
    rel = abs(flux - fd) / abs(fd)
    return rel, 1e-3, rel <= 1e-3


def check_scan_tails(rng):
    P, f = _scan_field()
    scan = energy.energy_translation_scan(f, 10.0, -30.0, 50.0, 81, P)
    tail = max(scan.E[0], scan.E[-1]) / scan.E.max()
    return tail, 1e-6, tail <= 1e-6


def _tilted(h, half):
    P = pot.validate_params(2.0, 0.6)
    n = int(round(2 * half / h)) + 1
    bc = (BC.dirichlet(), BC.dirichlet())
    f = walls.wall_field(P, (n, n), h, (-half, -half), bc=bc, theta=0.3)
    return P, f


def _derivs(g):
    return [central_diff(a, g, k, edges="nan") for k in (0, 1) for a in (g.u, g.v)]


def check_q_bound(rng):
    P, f = _tilted(0.05, 4.0)
    g = flow.relax_newton(f, P)
    d1u, d1v, d2u, d2v = _derivs(g)
    q = lin.q_ratio_form(g, (d2u, d2v), lin.slope_pair((d2u, d2v), (d1u, d1v)), P)
    excess = float(np.nanmax(q.pointwise - q.bound))
    return excess, 1e-6, excess <= 1e-6


def check_q_exact(rng):
    P, f = _tilted(0.1, 4.0)
    d1u, d1v, d2u, d2v = walls.wall_derivatives_alpha2(P, f, 0.3)
    q = lin.q_ratio_form(f, (d2u, d2v), lin.slope_pair((d2u, d2v), (d1u, d1v)), P)
    worst = float(np.nanmax(np.abs(q.pointwise)))
    return worst, 1e-8, worst <= 1e-8


def check_flatness(rng):
    P = pot.validate_params(2.0, 0.6)
    h = 0.25
    f = walls.wall_field(P, (64, 64), h, (-8.0, -7.875), bend=0.1)
    state = flow.initial_state(f, P, 0.25)
    state, _ = flow.run_to_convergence(state, P, tol=1e-8, max_steps=3000)
    flat = flow.flatness_metric(state.field)
    sl = flow.slope_fields(state.field)
    worst = max(flat, sl.stddev, sl.sup_diff)
    return worst, 1e-3, worst <= 1e-3


CHECKS = (
    ("alpha2_oracle", check_alpha2_oracle),
    ("gradient_fd", check_gradient_fd),
    ("hessian_fd", check_hessian_fd),
    ("wuv_bound", check_wuv_bound),
    ("steady_states", check_steady_states),
    ("kernel_order", check_kernel_order),
    ("spectrum_ladder", check_spectrum_ladder),
    ("spectrum_dense", check_spectrum_dense),
    ("growth_exponent", check_growth_exponent),
    ("scan_flux", check_scan_flux),
    ("scan_tails", check_scan_tails),
    ("q_bound", check_q_bound),
    ("q_exact", check_q_exact),
    ("flatness", check_flatness),
)


def run_checks(seed: int = 0, mutate: str = "none", only=None) -> list[CheckResult]:
    out = []
    with mutation(mutate), np.errstate(over="ignore", invalid="ignore"):
        for name, fn in CHECKS:
            if only is not None and name not in only:
                continue
            rng = np.random.default_rng(seed)
            try:
                value, tol, ok = fn(rng)
                status = "pass" if ok else "fail"
            except Exception as exc:  # a crash is a failed check, not a crashed report
                log.warning("check %s raised %s: %s", name, type(exc).__name__, exc)
                value, tol, status = math.nan, math.nan, "error"
            out.append(CheckResult(name, status, float(value), float(tol)))
    return out


def report_text(results) -> str:
    lines = ["check_name,status,value,tolerance"]
    lines += [f"{r.name},{r.status},{r.value:.17g},{r.tolerance:.17g}" for r in results]
    return "\n".join(lines) + "\n"
