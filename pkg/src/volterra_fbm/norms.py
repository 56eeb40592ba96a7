"""Function-space norms and functionals on grid data.

Five (semi)norms are provided: the fractional sup norm, its
exponentially weighted version (the metric of the fixed-point
argument), the classical Holder norm, the driver norm whose sup runs
over node pairs, and the integral-type norm entering the Stieltjes
bound.  All suprema are over grid nodes or node pairs; each report
carries the argmax so refinement stability can be checked.  Vector
values are measured in the Euclidean norm.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import GridFunction, power_cell_weights, row_singular_integrals

__all__ = [
    "HolderParams",
    "NormReport",
    "w_alpha_infty_norm",
    "w_alpha_lambda_norm",
    "holder_norm",
    "w_1malpha_norm",
    "alpha_1_norm",
    "delta_functional",
    "holder_exponent_estimate",
]


@dataclass(frozen=True)
class HolderParams:
    """Roughness/weight parameters for the solver and its norms.

    alpha must lie in (1 - H, 1/2) for the driver to have finite
    capacity; lam >= 1 is the exponential weight of the contraction
    metric.
    """

    H: float
    alpha: float
    T: float
    lam: float = 1.0

    def __post_init__(self):
        if not 0.5 < self.H < 1.0:
            raise ValueError(f"need H in (1/2, 1), got {self.H}")
        if not (1.0 - self.H) < self.alpha < 0.5:
            raise ValueError(
                f"need alpha in (1-H, 1/2) = ({1 - self.H:g}, 0.5), got {self.alpha}"
            )
        if self.lam < 1.0:
            raise ValueError(f"weight lambda must be >= 1, got {self.lam}")
        if self.T <= 0:
            raise ValueError("horizon must be positive")


@dataclass(frozen=True)
class NormReport:
    """Norm value with the node where the sup is attained and the
    (sup-part, integral-part) split at that node."""

    value: float
    sup_argmax: float
    components: tuple[float, float]


def _increment_rows(f: GridFunction, power: float = 1.0) -> np.ndarray:
    """rows[i, j] = |f(t_i) - f(t_j)|^power (Euclidean over components)."""
    d = f.values[:, None, :] - f.values[None, :, :]
    m = np.linalg.norm(d, axis=2)
    if power != 1.0:
        m = m ** power
    return m


def _per_node_aggregate(f: GridFunction, alpha: float) -> tuple[np.ndarray, np.ndarray]:
    """(|f(t_i)|, integral_0^{t_i} |f(t_i)-f(s)| (t_i-s)^{-alpha-1} ds)
    at every node."""
    sup_part = f.pointwise_norm()
    inc = row_singular_integrals(
        _increment_rows(f), f.grid.h, alpha + 1.0, diagonal_vanishes=True
    )
    return sup_part, inc


def w_alpha_infty_norm(f: GridFunction, alpha: float) -> NormReport:
    """sup_t ( |f(t)| + int_0^t |f(t)-f(s)| / (t-s)^{alpha+1} ds )."""
    if not 0.0 < alpha < 0.5:
        raise ValueError(f"alpha must lie in (0, 1/2), got {alpha}")
    sup_part, inc = _per_node_aggregate(f, alpha)
    agg = sup_part + inc
    i = int(np.argmax(agg))
    return NormReport(float(agg[i]), float(f.grid.nodes[i]), (float(sup_part[i]), float(inc[i])))


def w_alpha_lambda_norm(f: GridFunction, alpha: float, lam: float) -> NormReport:
    """Weighted variant sup_t e^{-lam t} ( |f(t)| + increment integral );
    defined for lam >= 1 only."""
    if not 0.0 < alpha < 0.5:
        raise ValueError(f"alpha must lie in (0, 1/2), got {alpha}")
    if lam < 1.0:
        raise ValueError(f"weight lambda must be >= 1, got {lam}")
    sup_part, inc = _per_node_aggregate(f, alpha)
    w = np.exp(-lam * f.grid.nodes)
    agg = w * (sup_part + inc)
    i = int(np.argmax(agg))
    return NormReport(float(agg[i]), float(f.grid.nodes[i]), (float(w[i] * sup_part[i]), float(w[i] * inc[i])))


def holder_norm(f: GridFunction, exponent: float) -> float:
    """||f||_inf + sup_{s<t} |f(t)-f(s)| / (t-s)^exponent over node pairs."""
    if not 0.0 < exponent <= 1.0:
        raise ValueError(f"Holder exponent must lie in (0, 1], got {exponent}")
    n = f.grid.n
    h = f.grid.h
    sup = f.sup_norm()
    semi = 0.0
    for i in range(1, n + 1):
        d = np.linalg.norm(f.values[i] - f.values[:i], axis=1)
        gaps = (h * np.arange(i, 0, -1)) ** exponent
        semi = max(semi, float(np.max(d / gaps)))
    return sup + semi


def w_1malpha_norm(g_values: np.ndarray, h: float, alpha: float) -> float:
    """Driver norm sup over node pairs 0 < s < t <= T of

        |g(t)-g(s)| / (t-s)^{1-alpha}
            + int_s^t |g(y)-g(s)| / (y-s)^{2-alpha} dy,

    for a scalar sample.  s runs over interior nodes; t includes the
    final node (immaterial for continuous data).
    """
    if not 0.0 < alpha < 0.5:
        raise ValueError(f"alpha must lie in (0, 1/2), got {alpha}")
    v = np.asarray(g_values, dtype=float)
    n = v.shape[0] - 1
    theta = 2.0 - alpha
    a_w, b_w = power_cell_weights(n, h, theta)
    gaps = (np.arange(1, n + 1) * h) ** (1.0 - alpha)
    best = 0.0
    for a in range(1, n):
        psi = np.abs(v[a:] - v[a])
        k = n - a
        contrib = a_w[:k] * psi[1:]
        contrib[1:] += b_w[1:k] * psi[1:-1]
        integ = np.cumsum(contrib)
        row = np.abs(v[a + 1 :] - v[a]) / gaps[:k] + integ
        best = max(best, float(np.max(row)))
    return best


def alpha_1_norm(f: GridFunction, alpha: float) -> float:
    """int_0^T |f(s)| s^{-alpha} ds
    + int_0^T int_0^s |f(s)-f(y)| / (s-y)^{alpha+1} dy ds."""
    if not 0.0 < alpha < 0.5:
        raise ValueError(f"alpha must lie in (0, 1/2), got {alpha}")
    h = f.grid.h
    mag = f.pointwise_norm()
    # left-singular kernel s^-alpha, integrable without cancellation
    a_w, b_w = power_cell_weights(f.grid.n, h, alpha)
    first = float(np.dot(a_w, mag[1:]) + np.dot(b_w[: f.grid.n], mag[:-1]))
    inner = row_singular_integrals(
        _increment_rows(f), h, alpha + 1.0, diagonal_vanishes=True
    )
    # outer integrand is bounded and vanishes at s=0: plain trapezoid
    second = float(np.trapezoid(inner, dx=h))
    return first + second


def delta_functional(f: GridFunction, alpha: float, delta: float) -> float:
    """sup_u int_0^u |f(u)-f(s)|^delta / (u-s)^{alpha+1} ds."""
    if not 0.0 < delta <= 1.0:
        raise ValueError(f"delta must lie in (0, 1], got {delta}")
    inc = row_singular_integrals(
        _increment_rows(f, power=delta), f.grid.h, alpha + 1.0, diagonal_vanishes=True
    )
    return float(np.max(inc))


def holder_exponent_estimate(f: GridFunction) -> float:
    """Empirical path regularity: slope of the log-log regression of the
    median increment magnitude against dyadic lags k*h, k = 1..n/8.

    Constant (zero-variation) data returns 1.0 by convention.
    """
    n = f.grid.n
    if n < 64:
        raise ValueError(f"need n >= 64 for a stable estimate, got n={n}")
    lags = []
    meds = []
    k = 1
    while k <= n // 8:
        d = np.linalg.norm(f.values[k:] - f.values[:-k], axis=1)
        med = float(np.median(d))
        if med > 0.0:
            lags.append(k * f.grid.h)
            meds.append(med)
        k *= 2
    if len(lags) < 2:
        return 1.0
    slope = np.polyfit(np.log(lags), np.log(meds), 1)[0]
    return float(slope)
