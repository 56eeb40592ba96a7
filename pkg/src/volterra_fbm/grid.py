"""Uniform time grids, sampled functions and product quadrature for
weakly singular power kernels.

Every integral in this package has the form of a power kernel
``(t - s)**-theta`` (or its left-sided mirror ``(s - a)**-theta``)
against a function known at the grid nodes.  The quadrature used
throughout replaces the integrand by its piecewise-linear interpolant
and integrates each cell against the kernel in closed form, so it is
exact for piecewise-linear data and keeps its order on kernels with
``theta`` up to 2 provided the integrand vanishes at the singular
endpoint (increment-type integrands).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import SingularityError

__all__ = [
    "TimeGrid",
    "GridFunction",
    "BivariateKernelValues",
    "build_grid",
    "singular_weighted_integral",
    "power_cell_weights",
    "row_singular_integrals",
    "prefix_singular_integrals",
    "left_singular_integral",
]

# |phi(endpoint)| above this (relative to the integrand scale) with
# theta >= 1 is a non-integrable singularity, not rounding noise.
_ENDPOINT_ATOL = 1e-12


@dataclass(frozen=True)
class TimeGrid:
    """Uniform partition of [0, T] into n cells, nodes t_i = i*T/n."""

    n: int
    T: float
    nodes: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.T <= 0:
            raise ValueError(f"horizon must be positive, got T={self.T}")
        if self.n < 2:
            raise ValueError(f"need at least 2 cells, got n={self.n}")
        object.__setattr__(self, "nodes", np.linspace(0.0, self.T, self.n + 1))

    @property
    def h(self) -> float:
        return self.T / self.n


def build_grid(T: float, n: int) -> TimeGrid:
    """Uniform grid on [0, T] with n cells."""
    return TimeGrid(n=int(n), T=float(T))


@dataclass(frozen=True)
class GridFunction:
    """d-dimensional function sampled at the grid nodes; values has
    shape (n+1, d)."""

    grid: TimeGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim == 1:
            v = v[:, None]
        if v.shape[0] != self.grid.n + 1:
            raise ValueError(
                f"expected {self.grid.n + 1} node values, got {v.shape[0]}"
            )
        if not np.all(np.isfinite(v)):
            raise ValueError("grid function values must be finite")
        object.__setattr__(self, "values", v)

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    @classmethod
    def from_callable(cls, grid: TimeGrid, fn) -> "GridFunction":
        vals = np.asarray([np.atleast_1d(fn(t)) for t in grid.nodes], dtype=float)
        return cls(grid, vals)

    def pointwise_norm(self) -> np.ndarray:
        """Euclidean magnitude per node, shape (n+1,)."""
        return np.linalg.norm(self.values, axis=1)

    def sup_norm(self) -> float:
        return float(self.pointwise_norm().max())


@dataclass(frozen=True)
class BivariateKernelValues:
    """Kernel f(t_i, t_j) tabulated on the lower triangle j <= i.

    values has shape (n+1, n+1) plus optional trailing value dimensions
    (d,) or (d, m); entries above the diagonal are ignored by every
    consumer and are zeroed on construction.
    """

    grid: TimeGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        n1 = self.grid.n + 1
        if v.shape[0] != n1 or v.shape[1] != n1:
            raise ValueError(f"expected leading shape ({n1}, {n1}), got {v.shape}")
        tri = np.tril(np.ones((n1, n1), dtype=bool))
        v = np.where(tri.reshape(tri.shape + (1,) * (v.ndim - 2)), v, 0.0)
        if not np.all(np.isfinite(v)):
            raise ValueError("kernel values must be finite on the lower triangle")
        object.__setattr__(self, "values", v)

    @property
    def value_shape(self) -> tuple:
        return self.values.shape[2:]

    @classmethod
    def from_callable(cls, grid: TimeGrid, fn) -> "BivariateKernelValues":
        """Tabulate fn(t, s) for s <= t; fn must broadcast over numpy
        arrays of (t, s)."""
        t = grid.nodes[:, None]
        s = grid.nodes[None, :]
        # clip keeps evaluations inside the physical domain s <= t; the
        # strict upper triangle is zeroed afterwards anyway
        vals = np.asarray(fn(t, np.minimum(s, t)), dtype=float)
        return cls(grid, vals)


def power_cell_weights(n_cells: int, h: float, theta: float):
    """Node weights for product integration against u**-theta on a
    uniform grid, indexed by cell distance ("gap") from the singularity.

    The cell at gap g spans u in [g*h, (g+1)*h].  Returns (A, B) where
    A[g] multiplies the integrand value at the cell node farther from
    the singularity and B[g] the nearer one.  A has length n_cells,
    B length n_cells + 1 (B[n_cells] is needed by row corrections).
    For theta >= 1, B[0] is +inf: the nearer node of the singular cell
    only ever multiplies a vanishing increment.
    """
    if not 0.0 <= theta < 2.0:
        raise ValueError(f"kernel exponent must lie in [0, 2), got {theta}")
    g = np.arange(n_cells + 1, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        if theta == 1.0:
            p0 = np.log(g + 1.0) - np.log(g)
        else:
            p0 = h ** (1.0 - theta) * ((g + 1.0) ** (1.0 - theta) - g ** (1.0 - theta)) / (1.0 - theta)
        p1 = h ** (2.0 - theta) * ((g + 1.0) ** (2.0 - theta) - g ** (2.0 - theta)) / (2.0 - theta)
        a = (p1 - g * h * p0) / h
    # g=0 with theta >= 1: p0 = inf and the far weight reduces to the
    # finite first moment
    a[0] = h ** (1.0 - theta) / (2.0 - theta)
    b = p0 - a
    return a[:n_cells], b


def _check_increment_endpoint(endpoint_vals: np.ndarray, scale: float, theta: float):
    if theta < 1.0:
        return
    tol = _ENDPOINT_ATOL * max(scale, 1.0)
    worst = float(np.max(np.abs(endpoint_vals))) if np.size(endpoint_vals) else 0.0
    if worst > tol:
        raise SingularityError(
            f"kernel exponent {theta} >= 1 needs an integrand vanishing at the "
            f"singular endpoint; endpoint magnitude {worst:.3e}"
        )


def singular_weighted_integral(f: GridFunction, theta: float, t_index: int) -> np.ndarray:
    """integral_0^{t_i} (t_i - s)**-theta * f(s) ds by product quadrature.

    Exact for piecewise-linear f.  For theta >= 1 the integrand must
    vanish at s = t_i (increment-type contract), otherwise a
    SingularityError is raised.
    """
    i = int(t_index)
    if not 0 <= i <= f.grid.n:
        raise ValueError(f"node index {t_index} outside grid")
    if i == 0:
        return np.zeros(f.dim)
    h = f.grid.h
    phi = f.values[: i + 1]
    a, b = power_cell_weights(i, h, theta)
    scale = float(np.max(np.abs(phi))) if phi.size else 0.0
    _check_increment_endpoint(phi[-1], scale, theta)
    # cell k at gap g = i-k-1: far node phi[k], near node phi[k+1]
    far = phi[:-1][::-1]
    near = phi[1:][::-1]
    if theta >= 1.0:
        # b[0] = inf multiplies the (zero) endpoint value
        contrib = a[:, None] * far
        contrib[1:] += b[1:i, None] * near[1:]
    else:
        contrib = a[:, None] * far + b[:i, None] * near
    return contrib.sum(axis=0)


def left_singular_integral(values: np.ndarray, h: float, theta: float) -> float:
    """integral over [a, a + k*h] of (s - a)**-theta * phi(s) ds for phi
    sampled at the k+1 nodes; singularity at the left endpoint.

    Same product rule as the right-sided case by symmetry of cell
    distances.  For theta >= 1 requires values[0] == 0.
    """
    phi = np.asarray(values, dtype=float)
    k = phi.shape[0] - 1
    if k < 1:
        return 0.0
    a, b = power_cell_weights(k, h, theta)
    scale = float(np.max(np.abs(phi)))
    _check_increment_endpoint(phi[0], scale, theta)
    near = phi[:-1]
    far = phi[1:]
    total = float(np.dot(a, far))
    if theta >= 1.0:
        total += float(np.dot(b[1:k], near[1:]))
    else:
        total += float(np.dot(b[:k], near))
    return total


def prefix_singular_integrals(values: np.ndarray, h: float, theta: float) -> np.ndarray:
    """All prefix integrals I_i = integral_0^{t_i} s**-theta * phi(s) ds
    for a fixed integrand phi (left singularity at s = 0 shared by all
    prefixes).  Returns shape (n+1,) + value dims."""
    phi = np.asarray(values, dtype=float)
    n = phi.shape[0] - 1
    a, b = power_cell_weights(n, h, theta)
    scale = float(np.max(np.abs(phi))) if phi.size else 0.0
    _check_increment_endpoint(phi[0], scale, theta)
    bb = b[:n].copy()
    if theta >= 1.0:
        bb[0] = 0.0
    shape_tail = (1,) * (phi.ndim - 1)
    contrib = a.reshape((n,) + shape_tail) * phi[1:] + bb.reshape((n,) + shape_tail) * phi[:-1]
    out = np.zeros_like(phi)
    np.cumsum(contrib, axis=0, out=out[1:])
    return out


def row_singular_integrals(
    rows: np.ndarray,
    h: float,
    theta: float,
    diagonal_vanishes: bool = False,
    chunk: int = 256,
) -> np.ndarray:
    """Per-row singular integrals against the right-sided kernel.

    rows[i, j] samples the integrand of row i at node s_j (j <= i; the
    strict upper triangle is ignored).  Returns out[i] =
    integral_0^{t_i} (t_i - s)**-theta * rows[i](s) ds for every i.

    diagonal_vanishes=True asserts rows[i, i] == 0 (increment-type
    integrands), which is required when theta >= 1.
    """
    m = np.asarray(rows, dtype=float)
    n = m.shape[0] - 1
    a, b = power_cell_weights(n, h, theta)
    if theta >= 1.0 and not diagonal_vanishes:
        raise SingularityError(
            "theta >= 1 requires increment-type rows (diagonal_vanishes=True)"
        )
    if diagonal_vanishes:
        scale = float(np.max(np.abs(m))) if m.size else 0.0
        _check_increment_endpoint(np.diagonal(m), scale, max(theta, 1.0))
    # combined node weight at gap g: far part of cell g-1 plus near part
    # of cell g; gap 0 is the diagonal node
    c = np.empty(n + 1)
    c[0] = 0.0 if diagonal_vanishes else b[0]
    c[1:] = a + b[1:]
    out = np.zeros(n + 1)
    cols = np.arange(n + 1)
    for lo in range(1, n + 1, chunk):
        hi = min(lo + chunk, n + 1)
        idx = np.arange(lo, hi)
        gaps = idx[:, None] - cols[None, :]
        mask = gaps >= 0
        w = np.where(mask, c[np.where(mask, gaps, 0)], 0.0)
        block = m[lo:hi]
        out[lo:hi] = np.einsum("ij,ij->i", w, block)
        # node j=0 carries only the far weight of cell 0
        out[lo:hi] -= b[idx] * block[:, 0]
    return out
