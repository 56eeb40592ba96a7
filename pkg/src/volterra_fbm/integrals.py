"""Volterra integral operators: Lebesgue and generalized Stieltjes.

Four operators act on two-time kernels f(t, s): the plain Lebesgue
integral F_t(f), its composition with a drift coefficient, the
Riemann-Stieltjes sum against a driver (the pathwise Young integral),
and the fractional-derivative representation of the same integral used
as the accuracy arbiter for rough drivers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import betainc, gammaln

from .fbm import DriverPath
from .fraccalc import beta_fn, left_frac_derivative_all, weyl_bracket_matrix
from .grid import BivariateKernelValues, GridFunction, TimeGrid

__all__ = [
    "IntegralResult",
    "lebesgue_volterra",
    "drift_term",
    "young_rs",
    "young_frac",
    "diffusion_term",
]


@dataclass(frozen=True)
class IntegralResult:
    """Map t_i -> integral value as a grid function, tagged with the
    quadrature route that produced it."""

    values: GridFunction
    method: str

    @property
    def grid(self) -> TimeGrid:
        return self.values.grid


def _as_matrix_kernel(f: BivariateKernelValues) -> np.ndarray:
    """Kernel values as (n+1, n+1, d, m); scalar kernels become d=m=1."""
    v = f.values
    if v.ndim == 2:
        return v[:, :, None, None]
    if v.ndim == 3:
        return v[:, :, :, None]
    if v.ndim == 4:
        return v
    raise ValueError(f"kernel value rank {v.ndim - 2} not supported")


def lebesgue_volterra(f: BivariateKernelValues) -> IntegralResult:
    """F_t(f) = int_0^t f(t, s) ds, trapezoidal in s per row."""
    v = _as_matrix_kernel(f)[:, :, :, 0]
    n = f.grid.n
    h = f.grid.h
    csum = np.cumsum(v, axis=1)
    idx = np.arange(n + 1)
    row_sum = csum[idx, idx]  # sum_{j<=i} f(t_i, t_j)
    diag = v[idx, idx]
    first = v[:, 0]
    vals = h * (row_sum - 0.5 * (first + diag))
    vals[0] = 0.0
    return IntegralResult(GridFunction(f.grid, vals), "lebesgue-product-rule")


def drift_term(b, x: GridFunction) -> IntegralResult:
    """F^{(b)}_t(x) = int_0^t b(t, s, x(s)) ds.

    b follows the coefficient evaluator contract: broadcastable arrays
    (t, s) plus states of shape (..., d), returning (..., d).
    """
    grid = x.grid
    t = grid.nodes[:, None]
    s = grid.nodes[None, :]
    states = np.broadcast_to(x.values[None, :, :], (grid.n + 1,) + x.values.shape)
    vals = np.asarray(b(t, np.minimum(s, t), states), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise_nonfinite("drift", vals, grid)
    kernel = BivariateKernelValues(grid, vals)
    res = lebesgue_volterra(kernel)
    return IntegralResult(res.values, "lebesgue-product-rule")


def raise_nonfinite(which: str, vals: np.ndarray, grid: TimeGrid):
    from .errors import EvaluationError

    bad = np.argwhere(~np.isfinite(vals))
    i, j = int(bad[0][0]), int(bad[0][1])
    raise EvaluationError(
        f"{which} evaluator returned non-finite value at "
        f"(t, s) = ({grid.nodes[i]:g}, {grid.nodes[j]:g})"
    )


def young_rs(f: BivariateKernelValues, g: DriverPath) -> IntegralResult:
    """Left-point Riemann-Stieltjes sums

        I(t_i) = sum_{j<i} f(t_i, t_j) (g(t_{j+1}) - g(t_j)),

    contracting the m-dimension of dg against matrix-valued kernels.
    """
    v = _as_matrix_kernel(f)
    m = v.shape[3]
    if m == 1 and g.m > 1:
        raise ValueError(f"kernel has driver dimension 1, driver has m={g.m}")
    if m != g.m:
        raise ValueError(f"kernel driver dimension {m} != driver m={g.m}")
    dg = np.diff(g.values, axis=0)  # (n, m)
    n = f.grid.n
    # strictly-lower-triangular contraction; upper triangle already zero,
    # the diagonal must not participate (left-point rule)
    w = v[:, :-1, :, :].copy()
    idx = np.arange(n)
    w[idx, idx, :, :] = 0.0
    w[0] = 0.0
    vals = np.einsum("ijdm,jm->id", w, dg)
    return IntegralResult(GridFunction(f.grid, vals), "riemann-stieltjes-sum")


def _doubly_singular_quadrature(w_left: float, w_interior: np.ndarray, t: float, alpha: float) -> float:
    """integral_0^t m(s) W(s) ds for the kernel
    m(s) = s^{-alpha} (t-s)^{alpha-1}, with W sampled at the i-1 interior
    nodes of a uniform i-cell grid on [0, t].

    w_left is the s -> 0 limit of W; the s -> t limit is 0 for Holder
    drivers (both limits are exact, see young_frac).  Cells are
    integrated against the exact kernel moments, which are incomplete
    Beta differences, so the rule is exact for piecewise-linear W.
    """
    i = w_interior.shape[0] + 1
    wfull = np.empty(i + 1)
    wfull[1:-1] = w_interior
    wfull[0] = w_left
    wfull[-1] = 0.0
    x = np.linspace(0.0, 1.0, i + 1)
    b0 = beta_fn(1.0 - alpha, alpha)
    b1 = beta_fn(2.0 - alpha, alpha)
    i0 = b0 * betainc(1.0 - alpha, alpha, x)
    i1 = b1 * betainc(2.0 - alpha, alpha, x)
    m0 = np.diff(i0)
    m1 = t * np.diff(i1)
    s = x * t
    h = t / i
    slope = (wfull[1:] - wfull[:-1]) / h
    cell = wfull[:-1] * m0 + slope * (m1 - s[:-1] * m0)
    return float(cell.sum())


def young_frac(f: BivariateKernelValues, g: DriverPath, alpha: float) -> IntegralResult:
    """Fractional-derivative representation of int_0^t f(t, s) dg_s:

        -int_0^t (D^alpha_{0+} f(t, .))(s) (D^{1-alpha}_{t-} g_{t-})(s) ds,

    with both operators in the real convention (the leading minus is the
    residue of the dropped phases).  The product integrand carries
    s^{-alpha} and (t-s)^{alpha-1} endpoint singularities, removed by
    dividing out the exact kernel and product-integrating against it.
    """
    if not 0.0 < alpha < 0.5:
        raise ValueError(f"alpha must lie in (0, 1/2), got {alpha}")
    v = _as_matrix_kernel(f)
    grid = f.grid
    n, h = grid.n, grid.h
    if v.shape[3] != g.m:
        raise ValueError(f"kernel driver dimension {v.shape[3]} != driver m={g.m}")
    d = v.shape[2]
    vals = np.zeros((n + 1, d))
    brackets = [weyl_bracket_matrix(g.component(c), h, alpha) for c in range(g.m)]
    nodes = grid.nodes
    g1a = float(np.exp(gammaln(1.0 - alpha)))
    for i in range(1, n + 1):
        t = nodes[i]
        if i == 1:
            # no interior node: degenerate single cell, left-point rule
            vals[1] = np.einsum("dm,m->d", v[1, 0], g.values[1] - g.values[0])
            continue
        for c in range(g.m):
            w_col = brackets[c][1:i, i]  # Weyl bracket at interior s
            v0 = brackets[c][0, i]
            for k in range(d):
                u_all = left_frac_derivative_all(v[i, : i + 1, k, c], h, alpha)
                u_int = u_all[1:i]
                s_int = nodes[1:i]
                w_interior = u_int * w_col * s_int ** alpha * (t - s_int) ** (1.0 - alpha)
                # s -> 0 limit: u(s) s^alpha -> f(t, 0) / Gamma(1-alpha)
                w_left = v[i, 0, k, c] / g1a * v0 * t ** (1.0 - alpha)
                vals[i, k] -= _doubly_singular_quadrature(w_left, w_interior, t, alpha)
    return IntegralResult(GridFunction(grid, vals), "fractional-representation")


def diffusion_term(sigma, x: GridFunction, g: DriverPath, alpha: float | None = None) -> IntegralResult:
    """G^{(sigma)}_t(x) = int_0^t sigma(t, s, x(s)) dg_s by left-point
    Riemann-Stieltjes sums; pass alpha to cross-check with the
    fractional route instead.

    sigma follows the evaluator contract: (t, s, state) -> (..., d, m).
    """
    grid = x.grid
    t = grid.nodes[:, None]
    s = grid.nodes[None, :]
    states = np.broadcast_to(x.values[None, :, :], (grid.n + 1,) + x.values.shape)
    vals = np.asarray(sigma(t, np.minimum(s, t), states), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise_nonfinite("diffusion", vals, grid)
    kernel = BivariateKernelValues(grid, vals)
    if alpha is None:
        return young_rs(kernel, g)
    return young_frac(kernel, g, alpha)
