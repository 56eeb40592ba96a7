"""Fixed-point solver for the Volterra equation

    x(t) = x0 + int_0^t b(t, s, x(s)) ds + int_0^t sigma(t, s, x(s)) dg_s,

realized literally as Picard iteration on the whole grid, with weight
selection making the map a 1/2-contraction in the exponentially
weighted norm, an independent one-pass Euler scheme for cross checks,
and the a priori growth-bound audit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import bounds
from .coeffs import CoefficientSet
from .errors import AdmissibilityError, DivergenceError, NoContractionError
from .fbm import DriverPath
from .fraccalc import lambda_alpha
from .grid import GridFunction
from .integrals import diffusion_term, drift_term
from .norms import (
    HolderParams,
    delta_functional,
    holder_exponent_estimate,
    w_alpha_infty_norm,
    w_alpha_lambda_norm,
)

__all__ = [
    "AdmissibleWindow",
    "SolutionRecord",
    "GrowthBoundReport",
    "GrowthBoundCalibration",
    "admissible_alpha",
    "select_lambda",
    "picard_solve",
    "euler_solve",
    "phi_exponent",
    "calibrate_growth_bound",
    "growth_bound_check",
]

# strict-inequality surplus for the middle growth-exponent branch
PHI_EPSILON = 0.01

_LAMBDA_LADDER_MAX = 2.0 ** 64

# The proof-chain Lipschitz constants are loose by orders of magnitude,
# so the ladder can demand weights for which exp(-lambda t) defeats
# double precision and flattens the weighted metric to the origin.  The
# solver works at min(selected, cap); the uncapped selection is kept in
# the record.  exp(-64) ~ 1.6e-28 still leaves the metric meaningful.
LAMBDA_CAP = 64.0


@dataclass(frozen=True)
class AdmissibleWindow:
    """Feasible range for the roughness parameter alpha."""

    alpha0: float
    lower: float
    feasible: bool
    constraint_report: dict

    def contains(self, alpha: float) -> bool:
        return self.feasible and self.lower < alpha < self.alpha0


def admissible_alpha(H: float, beta: float, delta: float, mu: float) -> AdmissibleWindow:
    """alpha window ((1-H) v (1-mu), alpha0) with
    alpha0 = min(1/2, beta, delta/(1+delta)), feasible iff
    beta > 1-H, delta > 1/H - 1 and min(beta, delta/(1+delta)) > 1-mu."""
    if not 0.5 < H < 1.0:
        raise ValueError(f"need H in (1/2, 1), got {H}")
    alpha0 = min(0.5, beta, delta / (1.0 + delta))
    lower = max(1.0 - H, 1.0 - mu)
    constraints = {
        "beta > 1-H": beta > 1.0 - H,
        "delta > 1/H - 1": delta > 1.0 / H - 1.0,
        "min(beta, delta/(1+delta)) > 1-mu": min(beta, delta / (1.0 + delta)) > 1.0 - mu,
    }
    feasible = all(constraints.values()) and lower < alpha0
    return AdmissibleWindow(alpha0, lower, feasible, constraints)


def _contraction_factor(
    cs: CoefficientSet, alpha: float, T: float, lam: float, lam_alpha_g: float,
    N_bound: float, delta_bound: float, literal: bool,
) -> float:
    d_n = bounds.drift_contraction_d_N(alpha, T, cs.L_N(N_bound))
    factor = d_n / lam ** (1.0 - alpha)
    if not cs.sigma_is_zero:
        dp = bounds.stieltjes_dprime_N(
            alpha, cs.beta, cs.mu, T, cs.K, cs.K_N(N_bound), recomputed=not literal
        )
        factor += lam_alpha_g * dp * (1.0 + 2.0 * delta_bound) / lam ** (1.0 - 2.0 * alpha)
    return float(factor)


def select_lambda(
    cs: CoefficientSet,
    params: HolderParams,
    lambda_alpha_g: float,
    N_bound: float,
    delta_bound: float,
) -> float:
    """Smallest weight on the geometric ladder 1, 2, 4, ... making the
    combined drift+diffusion Lipschitz factor at most 1/2."""
    lam = 1.0
    while lam <= _LAMBDA_LADDER_MAX:
        f = _contraction_factor(
            cs, params.alpha, params.T, lam, lambda_alpha_g, N_bound, delta_bound, literal=True
        )
        if f <= 0.5:
            return lam
        lam *= 2.0
    raise NoContractionError(
        "no weight up to 2^64 yields a 1/2-contraction; parameters are outside "
        "the practical regime"
    )


@dataclass(frozen=True)
class SolutionRecord:
    """Solver output: the path plus the full convergence history.

    distances are weighted-norm gaps of consecutive iterates at
    lambda_used; convergence is declared on the unweighted norm, which
    dominates the weighted one, so the weighted gap is below tol too.
    """

    x: GridFunction
    x0: np.ndarray
    iterations: int
    distances: tuple
    lambda_used: float
    lambda_selected: float
    lambda_alpha_g: float
    holder_estimate: float
    converged: bool
    theoretical_factor: float
    sup_radius: float
    delta_radius: float

    def metadata(self) -> dict:
        return {
            "lambda": self.lambda_used,
            "iterations": self.iterations,
            "distances": list(self.distances),
            "lambda_alpha_g": self.lambda_alpha_g,
            "holder_estimate": self.holder_estimate,
            "converged": self.converged,
            "theoretical_factor": self.theoretical_factor,
        }

    def metadata_json(self) -> str:
        return json.dumps(self.metadata(), sort_keys=True)


def _check_admissible(cs: CoefficientSet, params: HolderParams):
    win = admissible_alpha(params.H, cs.beta, cs.delta, cs.mu)
    for name, ok in win.constraint_report.items():
        if not ok:
            raise AdmissibilityError(f"existence condition violated: {name}")
    if not win.contains(params.alpha):
        raise AdmissibilityError(
            f"alpha={params.alpha} outside admissible window "
            f"({win.lower:g}, {win.alpha0:g})"
        )


def _apply_map(cs: CoefficientSet, x0: np.ndarray, x: GridFunction, g: DriverPath) -> GridFunction:
    vals = np.tile(x0, (x.grid.n + 1, 1)).astype(float)
    if not cs.b_is_zero:
        vals = vals + drift_term(cs.b, x).values.values
    if not cs.sigma_is_zero:
        vals = vals + diffusion_term(cs.sigma, x, g).values.values
    if not np.all(np.isfinite(vals)):
        raise DivergenceError("Picard iterate produced a non-finite value")
    return GridFunction(x.grid, vals)


def total_lambda_alpha(g: DriverPath, alpha: float) -> float:
    """Capacity of a multi-component driver: componentwise values add in
    the Stieltjes bounds, so the sum is the conservative aggregate."""
    return float(sum(lambda_alpha(g.component(c), g.grid.h, alpha)[0] for c in range(g.m)))


def picard_solve(
    cs: CoefficientSet,
    x0,
    g: DriverPath,
    params: HolderParams,
    tol: float = 1e-8,
    max_iter: int = 60,
    lambda_override: float | None = None,
    initial_offset: float = 0.0,
) -> SolutionRecord:
    """Iterate x^{k+1} = x0 + F^{(b)}(x^k) + G^{(sigma)}(x^k) from the
    constant initial iterate until the unweighted fractional norm of the
    consecutive gap drops below tol (which forces the weighted gap below
    tol as well, the weight being at most one).

    initial_offset shifts the starting iterate (uniqueness experiments).
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    _check_admissible(cs, params)
    x0 = np.atleast_1d(np.asarray(x0, dtype=float))
    if x0.shape != (cs.d,):
        raise ValueError(f"initial state must have dimension {cs.d}, got {x0.shape}")
    grid = g.grid
    alpha = params.alpha

    lam_g = total_lambda_alpha(g, alpha)

    x_prev = GridFunction(grid, np.tile(x0 + initial_offset, (grid.n + 1, 1)))
    x_next = _apply_map(cs, x0, x_prev, g)

    # a priori radii from the pilot application, with margin
    sup0 = max(x_prev.sup_norm(), x_next.sup_norm())
    n_bound = 2.0 * sup0 + 1.0
    delta_bound = 2.0 * delta_functional(x_next, alpha, cs.delta) + 1.0
    lam_selected = select_lambda(cs, params, lam_g, n_bound, delta_bound)
    lam = lambda_override if lambda_override is not None else min(lam_selected, LAMBDA_CAP)

    distances = []
    sup_radius = sup0
    delta_radius = max(
        delta_functional(x_prev, alpha, cs.delta), delta_functional(x_next, alpha, cs.delta)
    )
    converged = False
    for _ in range(max_iter):
        gap = GridFunction(grid, x_next.values - x_prev.values)
        distances.append(w_alpha_lambda_norm(gap, alpha, lam).value)
        # stop on the unweighted norm: it dominates the weighted one, so
        # this is strictly stronger than a weighted-gap tolerance
        if w_alpha_infty_norm(gap, alpha).value < tol:
            converged = True
            break
        x_prev = x_next
        x_next = _apply_map(cs, x0, x_prev, g)
        sup_radius = max(sup_radius, x_next.sup_norm())
        delta_radius = max(delta_radius, delta_functional(x_next, alpha, cs.delta))

    # a posteriori contraction modulus over the realized ball (the
    # re-derived Lipschitz constants at the realized radii)
    factor = _contraction_factor(
        cs, alpha, params.T, lam, lam_g,
        max(sup_radius, 1e-12), delta_radius, literal=False,
    )
    factor = max(
        factor,
        _contraction_factor(cs, alpha, params.T, lam, lam_g, max(sup_radius, 1e-12), delta_radius, literal=True),
    )

    hoelder = holder_exponent_estimate(x_next) if grid.n >= 64 else float("nan")
    return SolutionRecord(
        x=x_next,
        x0=x0,
        iterations=len(distances),
        distances=tuple(distances),
        lambda_used=float(lam),
        lambda_selected=float(lam_selected),
        lambda_alpha_g=lam_g,
        holder_estimate=hoelder,
        converged=converged,
        theoretical_factor=factor,
        sup_radius=float(sup_radius),
        delta_radius=float(delta_radius),
    )


def euler_solve(cs: CoefficientSet, x0, g: DriverPath) -> GridFunction:
    """One-pass left-point scheme with the Volterra kernels re-evaluated
    at the running time:

        X(t_i) = x0 + sum_{j<i} b(t_i, t_j, X_j) h
                    + sum_{j<i} sigma(t_i, t_j, X_j) (g_{j+1} - g_j).
    """
    x0 = np.atleast_1d(np.asarray(x0, dtype=float))
    grid = g.grid
    n, h = grid.n, grid.h
    nodes = grid.nodes
    dg = np.diff(g.values, axis=0)
    X = np.zeros((n + 1, cs.d))
    X[0] = x0
    for i in range(1, n + 1):
        t = nodes[i]
        past = nodes[:i]
        states = X[:i]
        acc = x0.copy()
        if not cs.b_is_zero:
            acc = acc + h * np.asarray(cs.b(t, past, states)).sum(axis=0)
        if not cs.sigma_is_zero:
            sig = np.asarray(cs.sigma(t, past, states))
            acc = acc + np.einsum("jdm,jm->d", sig, dg[:i])
        if not np.all(np.isfinite(acc)):
            raise DivergenceError(f"Euler state diverged at t={t:g}")
        X[i] = acc
    return GridFunction(grid, X)


def phi_exponent(alpha: float, gamma: float) -> float:
    """Growth exponent of the a priori bound, piecewise in the diffusion
    growth order:

        1/(1-alpha)                      if gamma < (1-2 alpha)/(1-alpha),
        (1+eps)/(1-2 alpha), eps = 0.01  if gamma in [(1-2a)/(1-a), 1),
        1/(1-2 alpha)                    if gamma = 1.
    """
    if not 0.0 < alpha < 0.5:
        raise ValueError(f"alpha must lie in (0, 1/2), got {alpha}")
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"growth order must lie in [0, 1], got {gamma}")
    threshold = (1.0 - 2.0 * alpha) / (1.0 - alpha)
    if gamma < threshold:
        return 1.0 / (1.0 - alpha)
    if gamma < 1.0:
        return (1.0 + PHI_EPSILON) / (1.0 - 2.0 * alpha)
    return 1.0 / (1.0 - 2.0 * alpha)


@dataclass(frozen=True)
class GrowthBoundCalibration:
    """Frozen constants of the a priori bound, fitted once on a pilot
    ensemble and then held fixed for every fresh path."""

    C5: float
    C6: float
    phi: float
    pilot_paths: int
    coefficient_name: str


@dataclass(frozen=True)
class GrowthBoundReport:
    norm_alpha_infty: float
    lambda_alpha_g: float
    phi: float
    bound: float
    C5: float
    C6: float
    satisfied: bool


def calibrate_growth_bound(
    records: list[SolutionRecord],
    cs: CoefficientSet,
    params: HolderParams,
) -> GrowthBoundCalibration:
    """Fit C5, C6 of  |x|_{alpha,infty} <= C5 exp(C6 Lambda^phi)  on a
    pilot ensemble: least-squares slope in (Lambda^phi, log norm) space,
    inflated, with the intercept lifted over every pilot point by a
    dispersion margin."""
    if cs.gamma is None:
        raise ValueError("growth-bound calibration needs the (H3) constants")
    phi = phi_exponent(params.alpha, cs.gamma)
    z = np.array([r.lambda_alpha_g ** phi for r in records])
    y = np.array([w_alpha_infty_norm(r.x, params.alpha).value for r in records])
    logy = np.log(np.maximum(y, 1e-300))
    if np.ptp(z) < 1e-12 or np.ptp(logy) < 1e-12:
        slope = 0.0
    else:
        slope = float(np.polyfit(z, logy, 1)[0])
    c6 = max(slope, 0.0) * 1.25 + 0.05
    resid = logy - c6 * z
    margin = max(1.0, 3.0 * float(np.std(resid)))
    c5 = float(np.exp(np.max(resid) + margin))
    return GrowthBoundCalibration(
        C5=c5, C6=float(c6), phi=float(phi), pilot_paths=len(records),
        coefficient_name=cs.name,
    )


def growth_bound_check(
    sol: SolutionRecord,
    cs: CoefficientSet,
    params: HolderParams,
    calibration: GrowthBoundCalibration,
) -> GrowthBoundReport:
    """Evaluate the frozen bound on a fresh solution."""
    if calibration.coefficient_name != cs.name:
        raise ValueError("calibration was fitted for a different coefficient set")
    if not sol.converged:
        raise ValueError("growth bound is only meaningful for converged solutions")
    norm = w_alpha_infty_norm(sol.x, params.alpha).value
    lam_g = sol.lambda_alpha_g
    bound = calibration.C5 * float(np.exp(calibration.C6 * lam_g ** calibration.phi))
    return GrowthBoundReport(
        norm_alpha_infty=float(norm),
        lambda_alpha_g=float(lam_g),
        phi=calibration.phi,
        bound=float(bound),
        C5=calibration.C5,
        C6=calibration.C6,
        satisfied=bool(norm <= bound),
    )
