"""Linearized operator L = -Lap + D^2 W about a background field, its quadratic
forms, principal Dirichlet eigenpairs on discs, and the slope-ratio form Q.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from . import potential as pot
from .errors import (
    GridMismatch,
    IterationStall,
    ReferenceNotSigned,
    SupportTouchesBoundary,
    WindowOutOfDomain,
    ZeroCenterGap,
)
from .field import PERIODIC, Field, central_diff, interior_mask, laplacian, neg_laplacian_matrix, shift
from .potential import Params

log = logging.getLogger(__name__)

SLOPE_THRESHOLD = 1e-10


class PerturbationPair(NamedTuple):
    xi: np.ndarray
    eta: np.ndarray


class SlopePair(NamedTuple):
    sigma: np.ndarray
    tau: np.ndarray
    threshold: float = SLOPE_THRESHOLD


@dataclass(frozen=True, eq=False)
class EigenPair:
    lambda_R: float
    phi: np.ndarray
    psi: np.ndarray
    R: float
    normalization: float
    iterations: int = 0
    mask: np.ndarray | None = None


@dataclass(frozen=True, eq=False)
class QForm:
    pointwise: np.ndarray  # NaN off the evaluation set
    total: float
    bound: np.ndarray  # -(sigma - tau)^2 P, NaN off the evaluation set
    evaluated: np.ndarray


@dataclass(frozen=True)
class DecayReport:
    radii: np.ndarray
    I: np.ndarray
    cutoff_bound: np.ndarray
    truncated: bool


def _check_grid(f: Field, *arrays):
    for a in arrays:
        if np.shape(a) != f.shape:
            raise GridMismatch(f"array of shape {np.shape(a)} does not match field {f.shape}")


def apply_L(f: Field, p: PerturbationPair, params: Params) -> PerturbationPair:
    """L applied at every node; Dirichlet edge nodes are identity rows."""
    xi, eta = (np.asarray(a, dtype=float) for a in p)
    _check_grid(f, xi, eta)
    w_uu, w_uv, w_vv = pot.hessian_arrays(f.u, f.v, params)
    out_xi = -laplacian(xi, f) + w_uu * xi + w_uv * eta
    out_eta = -laplacian(eta, f) + w_uv * xi + w_vv * eta
    edge = ~interior_mask(f)
    out_xi[edge] = xi[edge]
    out_eta[edge] = eta[edge]
    return PerturbationPair(out_xi, out_eta)


def _check_support(f: Field, xi, eta):
    for k, bc in enumerate(f.bc):
        if bc.kind == PERIODIC:
            continue
        for end in (0, -1):
            idx = [slice(None)] * f.dims
            idx[k] = end
            if np.any(xi[tuple(idx)] != 0) or np.any(eta[tuple(idx)] != 0):
                raise SupportTouchesBoundary("perturbation must vanish on non-periodic boundary nodes")


def quadratic_form(f: Field, p: PerturbationPair, params: Params) -> float:
    """Discrete integral of |grad xi|^2 + |grad eta|^2 + (xi, eta) D^2W (xi, eta)^T.

    Gradients are edge differences; the potential term is a nodal sum.  For
    pairs vanishing on non-periodic edges this is exactly h^d <p, L p>.
    """
    xi, eta = (np.asarray(a, dtype=float) for a in p)
    _check_grid(f, xi, eta)
    _check_support(f, xi, eta)
    h = f.h
    grad = 0.0
    for k, bc in enumerate(f.bc):
        for a in (xi, eta):
            if bc.kind == PERIODIC:
                d = np.roll(a, -1, axis=k) - a
            else:
                d = np.diff(a, axis=k)
            grad += float(np.sum(d * d))
    w_uu, w_uv, w_vv = pot.hessian_arrays(f.u, f.v, params)
    pot_term = float(np.sum(w_uu * xi * xi + 2.0 * w_uv * xi * eta + w_vv * eta * eta))
    return h**f.dims * (grad / h**2 + pot_term)


def inner(f: Field, p: PerturbationPair, q: PerturbationPair) -> float:
    return f.h**f.dims * float(np.sum(p[0] * q[0] + p[1] * q[1]))


# -- sparse assembly -------------------------------------------------------


def assemble_operator(f: Field, params: Params, mask: np.ndarray | None = None) -> sp.csr_matrix:
    """Sparse matrix of L on the nodes selected by ``mask`` (zero Dirichlet data outside).

    Unknowns are ordered (xi on mask nodes in C order, then eta).
    """
    if mask is None:
        mask = interior_mask(f)
    mask = np.asarray(mask, dtype=bool) & interior_mask(f)
    nodes = np.flatnonzero(mask.ravel())
    K = neg_laplacian_matrix(f, mask)
    w_uu, w_uv, w_vv = (np.ravel(w)[nodes] for w in pot.hessian_arrays(f.u, f.v, params))
    return sp.bmat(
        [[K + sp.diags(w_uu), sp.diags(w_uv)], [sp.diags(w_uv), K + sp.diags(w_vv)]], format="csr"
    )


def disc_mask(f: Field, R: float, center=None) -> np.ndarray:
    """Nodes with |x - center| <= R; the disc must sit inside the domain."""
    center = np.zeros(f.dims) if center is None else np.asarray(center, dtype=float)
    for k, bc in enumerate(f.bc):
        lo, hi = f.extent(k)
        if bc.kind == PERIODIC:
            if 2 * R >= f.shape[k] * f.h:
                raise WindowOutOfDomain(f"disc of radius {R} wraps the periodic axis {k}")
        elif center[k] - R <= lo or center[k] + R >= hi:
            raise WindowOutOfDomain(f"disc of radius {R} leaves the domain on axis {k}")
    X = f.mesh()
    r2 = sum((X[k] - center[k]) ** 2 for k in range(f.dims))
    return r2 <= R * R * (1 + 1e-12)


def gershgorin_lower(A: sp.csr_matrix) -> float:
    A = A.tocsr()
    diag = A.diagonal()
    absrow = np.asarray(abs(A).sum(axis=1)).ravel()
    return float(np.min(diag - (absrow - np.abs(diag))))


def rayleigh_quotient(A, x) -> float:
    return float(x @ (A @ x) / (x @ x))


def dense_lowest_eigenvalue(f: Field, R: float, params: Params, center=None) -> float:
    A = assemble_operator(f, params, disc_mask(f, R, center)).toarray()
    return float(np.linalg.eigvalsh(A)[0])


def principal_eigenpair(
    f: Field,
    R: float,
    params: Params,
    center=None,
    tol: float = 1e-10,
    max_iter: int = 500,
    block: int = 4,
    seed: int = 0,
) -> EigenPair:
    """Lowest eigenpair of L on the disc of radius ``R`` (Dirichlet outside).

    Shifted block inverse iteration with one sparse LU factorisation and a
    Rayleigh-Ritz step per sweep; the shift is min(0, Gershgorin lower bound) - 1.
    The eigenvector is replaced by (|phi|, -|psi|) before the final Rayleigh
    quotient and scaled so that phi - psi = 1 at the node nearest ``center``.
    """
    mask = disc_mask(f, R, center) & interior_mask(f)
    A = assemble_operator(f, params, mask)
    N = A.shape[0]
    sigma = min(0.0, gershgorin_lower(A)) - 1.0
    lu = splu((A - sigma * sp.identity(N, format="csr")).tocsc())
    k = max(1, min(block, N))
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((N, k))
    X, _ = np.linalg.qr(X)
    theta_prev = np.inf
    for it in range(1, max_iter + 1):
        Y = lu.solve(X)
        Qm, _ = np.linalg.qr(Y)
        H = Qm.T @ (A @ Qm)
        theta, S = np.linalg.eigh(0.5 * (H + H.T))
        X = Qm @ S
        if abs(theta[0] - theta_prev) <= tol * max(1.0, abs(theta[0])):
            x = X[:, 0]
            res = np.linalg.norm(A @ x - theta[0] * x)
            if res <= np.sqrt(tol):
                break
        theta_prev = theta[0]
    else:
        raise IterationStall(f"Rayleigh quotient not converged to {tol:g} in {max_iter} iterations")

    m = N // 2
    x = X[:, 0]
    x = np.concatenate([np.abs(x[:m]), -np.abs(x[m:])])
    lam = rayleigh_quotient(A, x)

    nodes = np.flatnonzero(mask.ravel())
    phi = np.zeros(f.u.size)
    psi = np.zeros(f.u.size)
    phi[nodes] = x[:m]
    psi[nodes] = x[m:]
    phi = phi.reshape(f.shape)
    psi = psi.reshape(f.shape)

    c = np.zeros(f.dims) if center is None else np.asarray(center, dtype=float)
    X_ = f.mesh()
    r2 = sum((X_[j] - c[j]) ** 2 for j in range(f.dims))
    ic = np.unravel_index(np.argmin(np.where(mask, r2, np.inf)), f.shape)
    gap = phi[ic] - psi[ic]
    if gap <= 1e-14 * max(np.max(np.abs(phi)), np.max(np.abs(psi)), 1e-300):
        raise ZeroCenterGap("phi - psi vanishes at the disc centre")
    phi /= gap
    psi /= gap
    return EigenPair(lam, phi, psi, float(R), float(phi[ic] - psi[ic]), it, mask)


def difference_range(f: Field, pair: EigenPair, rho: float, center=None) -> tuple[float, float]:
    """Min and max of phi - psi on the disc of radius ``rho``.

    Tracks how the normalized eigenfunctions behave on a fixed subwindow as R
    grows; no bound is asserted, the numbers are reported as measured.
    """
    if rho > pair.R:
        raise WindowOutOfDomain(f"subwindow radius {rho} exceeds the eigen disc {pair.R}")
    m = disc_mask(f, rho, center)
    d = (pair.phi - pair.psi)[m]
    return float(d.min()), float(d.max())


# -- slope fields and the ratio form ----------------------------------------


def slope_pair(reference: PerturbationPair, kernel: PerturbationPair,
               threshold: float = SLOPE_THRESHOLD) -> SlopePair:
    """sigma = xi/phi, tau = eta/psi where |phi|, |psi| >= threshold * max; NaN elsewhere."""
    phi, psi = (np.asarray(a, dtype=float) for a in reference)
    xi, eta = (np.asarray(a, dtype=float) for a in kernel)
    with np.errstate(divide="ignore", invalid="ignore"):
        ok_phi = np.abs(phi) >= threshold * np.nanmax(np.abs(phi))
        ok_psi = np.abs(psi) >= threshold * np.nanmax(np.abs(psi))
        sigma = np.where(ok_phi, xi / phi, np.nan)
        tau = np.where(ok_psi, eta / psi, np.nan)
    return SlopePair(sigma, tau, threshold)


def _signed_set(f: Field, reference: PerturbationPair, threshold: float) -> np.ndarray:
    phi, psi = reference
    with np.errstate(invalid="ignore"):
        big = (np.abs(phi) >= threshold * np.nanmax(np.abs(phi))) & (
            np.abs(psi) >= threshold * np.nanmax(np.abs(psi))
        )
    big &= interior_mask(f)
    if np.any(phi[big] <= 0) or np.any(psi[big] >= 0):
        raise ReferenceNotSigned("reference pair must satisfy phi > 0 > psi on the evaluation set")
    return big


def _div_form(f: Field, coeff_sq_root: np.ndarray, s: np.ndarray, face: str):
    """sum over neighbours of c_face (s_nb - s) / h^2 with c_face from the reference."""
    out = np.zeros_like(s)
    for k, bc in enumerate(f.bc):
        for step in (1, -1):
            s_nb = shift(s, k, step, bc)
            r_nb = shift(coeff_sq_root, k, step, bc)
            if face == "geometric":
                c = coeff_sq_root * r_nb
            else:
                c = 0.5 * (coeff_sq_root**2 + r_nb**2)
            out = out + c * (s_nb - s)
    return out / f.h**2


def q_ratio_form(
    f: Field,
    reference: PerturbationPair,
    slopes: SlopePair,
    params: Params,
    face: str = "geometric",
) -> QForm:
    """Pointwise -sigma div(phi^2 grad sigma) - tau div(psi^2 grad tau).

    The face coefficient phi_i phi_j ("geometric") makes this identical, node
    by node, to -xi Lap xi + sigma^2 phi Lap phi - eta Lap eta + tau^2 psi Lap psi;
    "arithmetic" uses (phi_i^2 + phi_j^2)/2 and agrees to second order.
    """
    phi, psi = (np.asarray(a, dtype=float) for a in reference)
    sigma, tau = np.asarray(slopes.sigma, float), np.asarray(slopes.tau, float)
    _check_grid(f, phi, psi, sigma, tau)
    signed = _signed_set(f, (phi, psi), slopes.threshold)
    with np.errstate(invalid="ignore"):
        q = -sigma * _div_form(f, phi, sigma, face) - tau * _div_form(f, psi, tau, face)
    ok = signed & np.isfinite(q)
    q = np.where(ok, q, np.nan)
    w_uv = pot.hessian_arrays(f.u, f.v, params)[1]
    P = -w_uv * phi * psi
    bound = np.where(ok, -((sigma - tau) ** 2) * P, np.nan)
    total = f.h**f.dims * float(np.nansum(q))
    return QForm(q, total, bound, ok)


def q_ratio_expanded(f: Field, reference: PerturbationPair, slopes: SlopePair) -> np.ndarray:
    """-xi Lap xi + sigma^2 phi Lap phi - eta Lap eta + tau^2 psi Lap psi, NaN where undefined."""
    phi, psi = (np.asarray(a, dtype=float) for a in reference)
    sigma, tau = slopes.sigma, slopes.tau
    xi, eta = sigma * phi, tau * psi
    with np.errstate(invalid="ignore"):
        return (
            -xi * laplacian(xi, f)
            + sigma**2 * phi * laplacian(phi, f)
            - eta * laplacian(eta, f)
            + tau**2 * psi * laplacian(psi, f)
        )


def _radius2(f: Field):
    X = f.mesh()
    return sum(x * x for x in X)


def _weighted_density(f: Field, phi, psi, slopes: SlopePair) -> np.ndarray:
    dens = np.zeros(f.shape)
    for s, w in ((slopes.sigma, phi), (slopes.tau, psi)):
        for k in range(f.dims):
            g = central_diff(np.asarray(s, float), f, k)
            dens = dens + np.where(np.isfinite(g), (w * g) ** 2, 0.0)
    return dens


def weighted_dirichlet_integral(f: Field, reference: PerturbationPair, slopes: SlopePair, R: float) -> float:
    """I(R) alone, without the cut-off bound."""
    phi, psi = (np.asarray(a, dtype=float) for a in reference)
    dens = _weighted_density(f, phi, psi, slopes)
    return f.h**f.dims * float(np.sum(dens[_radius2(f) <= R * R]))


def caccioppoli_decay(f: Field, reference: PerturbationPair, slopes: SlopePair, radii) -> DecayReport:
    """Weighted Dirichlet integrals I(R) = int_{B_R} phi^2 |grad sigma|^2 + psi^2 |grad tau|^2.

    Alongside I(R) the logarithmic cut-off bound
    int_{R<|x|<R^2} (xi^2 + eta^2) / (|x| ln R)^2 is reported, truncated to
    the grid when R^2 exceeds it (``truncated`` set).
    """
    radii = np.asarray(radii, dtype=float)
    if np.any(np.diff(radii) <= 0):
        raise ValueError("radii must be increasing")
    phi, psi = (np.asarray(a, dtype=float) for a in reference)
    _signed_set(f, (phi, psi), slopes.threshold)
    dens = _weighted_density(f, phi, psi, slopes)
    r2 = _radius2(f)
    vol = f.h**f.dims
    I = np.array([vol * float(np.sum(dens[r2 <= R * R])) for R in radii])

    xi = np.nan_to_num(slopes.sigma * phi)
    eta = np.nan_to_num(slopes.tau * psi)
    r = np.sqrt(r2)
    max_r = min(
        min(abs(lo), abs(hi)) if f.bc[k].kind != PERIODIC else 0.5 * f.shape[k] * f.h
        for k, (lo, hi) in enumerate(f.extent(j) for j in range(f.dims))
    )
    truncated = bool(np.any(radii**2 > max_r))
    if truncated:
        log.warning("R^2 exceeds the domain for some radii; cut-off bound truncated")
    bound = []
    for R in radii:
        ann = (r > R) & (r < R * R)
        with np.errstate(divide="ignore"):
            g2 = np.where(ann, 1.0 / (r * np.log(R)) ** 2, 0.0)
        bound.append(vol * float(np.sum((xi**2 + eta**2) * g2)))
    return DecayReport(radii, I, np.array(bound), truncated)


def check_quadratic_growth(f: Field, radii, direction: int = 0) -> np.ndarray:
    """int_{B_R} (d_e u)^2 + (d_e v)^2 divided by R^2, for e = e_{direction}."""
    radii = np.asarray(radii, dtype=float)
    xi = central_diff(f.u, f, direction)
    eta = central_diff(f.v, f, direction)
    r2 = _radius2(f)
    dens = xi**2 + eta**2
    vol = f.h**f.dims
    return np.array([vol * float(np.sum(dens[r2 <= R * R])) / R**2 for R in radii])
