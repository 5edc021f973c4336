"""Two-component grid functions and the finite-difference stencils shared by
the energy, linearization and flow modules.

Arrays are indexed ``[i1]`` in 1D and ``[i1, i2]`` in 2D, node ``i`` on axis
``k`` sitting at ``origin[k] + i*h``.  A periodic axis with ``n`` nodes has
period ``n*h`` (node ``n`` is node ``0``).  On a Dirichlet axis the first and
last node carry fixed data; stencils are only evaluated strictly inside.  A
free axis uses mirrored ghost nodes (homogeneous Neumann).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field, replace

import numpy as np

PERIODIC = "periodic"
DIRICHLET = "dirichlet"
FREE = "free"
_KINDS = (PERIODIC, DIRICHLET, FREE)


@dataclass(frozen=True)
class BC:
    kind: str
    left: object = None
    right: object = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown boundary condition {self.kind!r}")

    @classmethod
    def periodic(cls):
        return cls(PERIODIC)

    @classmethod
    def dirichlet(cls, left=None, right=None):
        return cls(DIRICHLET, left, right)

    @classmethod
    def free(cls):
        return cls(FREE)


@dataclass(frozen=True, eq=False)
class Field:
    u: np.ndarray
    v: np.ndarray
    h: float
    origin: tuple = (0.0,)
    bc: tuple = dc_field(default_factory=tuple)

    def __post_init__(self):
        u = np.array(self.u, dtype=float)
        v = np.array(self.v, dtype=float)
        if u.shape != v.shape:
            raise ValueError(f"u and v shapes differ: {u.shape} vs {v.shape}")
        if u.ndim not in (1, 2):
            raise ValueError("fields are 1D or 2D")
        if not self.h > 0:
            raise ValueError("spacing h must be positive")
        if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v))):
            raise ValueError("field values must be finite")
        origin = tuple(float(x) for x in np.atleast_1d(self.origin))
        if len(origin) != u.ndim:
            raise ValueError("origin must have one entry per axis")
        bc = tuple(self.bc) if self.bc else tuple(BC.free() for _ in range(u.ndim))
        if len(bc) != u.ndim:
            raise ValueError("bc must have one entry per axis")
        u.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "h", float(self.h))
        object.__setattr__(self, "origin", origin)
        object.__setattr__(self, "bc", bc)

    @property
    def dims(self) -> int:
        return self.u.ndim

    @property
    def shape(self) -> tuple:
        return self.u.shape

    def axis(self, k: int) -> np.ndarray:
        return self.origin[k] + self.h * np.arange(self.shape[k])

    def mesh(self):
        return np.meshgrid(*[self.axis(k) for k in range(self.dims)], indexing="ij")

    def extent(self, k: int) -> tuple:
        """Coordinate range covered by nodes on axis ``k``."""
        return self.origin[k], self.origin[k] + self.h * (self.shape[k] - 1)

    def with_values(self, u, v) -> "Field":
        return replace(self, u=u, v=v)

    def copy(self) -> "Field":
        return self.with_values(self.u.copy(), self.v.copy())


def shift(arr: np.ndarray, axis: int, step: int, bc: BC) -> np.ndarray:
    """Values at the ``step`` (+1 or -1) neighbour along ``axis``.

    Dirichlet boundary nodes have no neighbour outside the grid; those entries
    are returned as NaN so they cannot leak into interior results.
    """
    if bc.kind == PERIODIC:
        return np.roll(arr, -step, axis=axis)
    out = np.empty_like(arr)
    n = arr.shape[axis]
    src = [slice(None)] * arr.ndim
    dst = [slice(None)] * arr.ndim
    if step == 1:
        dst[axis], src[axis] = slice(0, n - 1), slice(1, n)
        edge_dst, edge_src = n - 1, n - 2
    else:
        dst[axis], src[axis] = slice(1, n), slice(0, n - 1)
        edge_dst, edge_src = 0, 1
    out[tuple(dst)] = arr[tuple(src)]
    e_dst = [slice(None)] * arr.ndim
    e_dst[axis] = edge_dst
    if bc.kind == FREE:
        e_src = [slice(None)] * arr.ndim
        e_src[axis] = edge_src
        out[tuple(e_dst)] = arr[tuple(e_src)]
    else:
        out[tuple(e_dst)] = np.nan
    return out


def interior_mask(f: Field) -> np.ndarray:
    """True at nodes where the stencils are evaluated (not Dirichlet edges)."""
    mask = np.ones(f.shape, dtype=bool)
    for k, bc in enumerate(f.bc):
        if bc.kind == DIRICHLET:
            idx = [slice(None)] * f.dims
            idx[k] = 0
            mask[tuple(idx)] = False
            idx[k] = -1
            mask[tuple(idx)] = False
    return mask


def laplacian(arr: np.ndarray, f: Field) -> np.ndarray:
    """Second-order (3-/5-point) Laplacian; NaN on Dirichlet edge nodes."""
    out = -2.0 * f.dims * arr
    for k, bc in enumerate(f.bc):
        out = out + shift(arr, k, 1, bc) + shift(arr, k, -1, bc)
    return out / f.h**2


def central_diff(arr: np.ndarray, f: Field, axis: int, edges: str = "one-sided") -> np.ndarray:
    """Second-order central difference along ``axis``.

    On non-periodic edges: second-order one-sided differences, or NaN with
    ``edges="nan"`` when only genuinely centred values are wanted.
    """
    bc = f.bc[axis]
    if bc.kind == PERIODIC:
        return (np.roll(arr, -1, axis=axis) - np.roll(arr, 1, axis=axis)) / (2.0 * f.h)
    out = np.gradient(arr, f.h, axis=axis, edge_order=2)
    if edges == "nan":
        idx = [slice(None)] * arr.ndim
        for end in (0, -1):
            idx[axis] = end
            out[tuple(idx)] = np.nan
    return out


def gradient(arr: np.ndarray, f: Field) -> list:
    return [central_diff(arr, f, k) for k in range(f.dims)]


def constant_field(value, shape, h, origin=None, bc=None) -> Field:
    shape = tuple(np.atleast_1d(shape))
    origin = tuple(origin) if origin is not None else tuple(0.0 for _ in shape)
    u = np.full(shape, float(value[0]))
    v = np.full(shape, float(value[1]))
    return Field(u, v, h, origin, tuple(bc) if bc else ())


def neg_laplacian_matrix(f: Field, mask: np.ndarray):
    """Sparse -Lap_h on the nodes selected by ``mask`` (C order), zero data outside."""
    import scipy.sparse as sp

    nodes = np.flatnonzero(mask.ravel())
    m = nodes.size
    label = -np.ones(f.u.size, dtype=int)
    label[nodes] = np.arange(m)
    grid_index = np.arange(f.u.size, dtype=float).reshape(f.shape)
    rows, cols = [], []
    for k, bc in enumerate(f.bc):
        for step in (1, -1):
            nb = shift(grid_index, k, step, bc).ravel()[nodes]
            ok = ~np.isnan(nb)
            nb_label = np.full(m, -1)
            nb_label[ok] = label[nb[ok].astype(int)]
            keep = nb_label >= 0
            rows.append(np.arange(m)[keep])
            cols.append(nb_label[keep])
    r = np.concatenate(rows + [np.arange(m)])
    c = np.concatenate(cols + [np.arange(m)])
    off = sum(len(x) for x in rows)
    vals = np.concatenate([np.full(off, -1.0), np.full(m, 2.0 * f.dims)]) / f.h**2
    return sp.coo_matrix((vals, (r, c)), shape=(m, m)).tocsr()
