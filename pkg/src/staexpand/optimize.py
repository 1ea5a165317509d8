"""The two protocol searches: cap durations and power-peak shaping.

Both are deterministic: fixed multistart seeds, Nelder-Mead refinement,
lexicographic tie-breaking.  Infeasible points (imaginary frequency,
caps that do not fit) are penalized with +inf, so the simplex walks back
into the feasible region on its own.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import energies, ermakov, numerics, protocols
from .core import DEFAULT_GRID_N, Infeasible, TrapSpec

_CAP_SEED_FRACTIONS = (0.01, 0.05, 0.2)
_FEAS_TOL = -1e-12


@dataclass
class OptimizationResult:
    params: tuple[float, ...]
    objective: float
    feasible: bool
    iterations: int
    converged: bool
    baseline: float | None = None   # objective at the unoptimized reference


def _hybrid_avg_ena(spec: TrapSpec, t_f: float, tau_l: float, tau_s: float, n_grid: int) -> float:
    """Averaged non-adiabatic energy of a cap protocol; +inf when the caps
    do not fit or the frequency goes imaginary."""
    if not (tau_l > 0.0 and tau_s > 0.0 and tau_l + tau_s < 0.999 * t_f):
        return math.inf
    curve = protocols.hybrid_caps(spec, t_f, tau_l, tau_s, n_grid)
    profile = ermakov.inverse_engineer(curve)
    if float(np.min(profile.omega2)) < _FEAS_TOL:
        return math.inf
    _, avg, _ = energies.nonadiabatic_energy(curve, profile, spec)
    return avg


def optimize_caps(spec: TrapSpec, t_f: float, n_grid: int = DEFAULT_GRID_N) -> OptimizationResult:
    """Minimize the averaged non-adiabatic energy over the cap durations
    (tau_l, tau_s), constrained to real frequencies.

    Seeds a 3x3 logarithmic grid of cap fractions, refines the best
    feasible seed with Nelder-Mead, and raises Infeasible when no seed
    admits a real-frequency protocol (short protocols cannot avoid an
    imaginary band).
    """
    if spec.n != 0:
        raise ValueError("cap optimization targets the ground-state energy excess")

    def objective(tau_l: float, tau_s: float) -> float:
        return _hybrid_avg_ena(spec, t_f, tau_l, tau_s, n_grid)

    seeds = [
        (fl * t_f, fs * t_f)
        for fl in _CAP_SEED_FRACTIONS
        for fs in _CAP_SEED_FRACTIONS
    ]
    evaluated = sorted(
        ((objective(tl, ts), (tl, ts)) for tl, ts in seeds),
        key=lambda item: (item[0], item[1]),
    )
    best_f, best_p = evaluated[0]
    if not math.isfinite(best_f):
        raise Infeasible(
            f"no real-frequency cap protocol found at t_f = {t_f:.6g} "
            f"(seed fractions {_CAP_SEED_FRACTIONS})"
        )
    res = numerics.nelder_mead_2d(objective, best_p, rel_tol=1e-8)
    params, fx = res.x, res.fx
    if not math.isfinite(fx) or fx > best_f:
        params, fx = best_p, best_f
    return OptimizationResult(
        params=tuple(params),
        objective=fx,
        feasible=math.isfinite(fx),
        iterations=res.iterations,
        converged=res.converged,
        baseline=best_f,
    )


def _septic_peak(spec: TrapSpec, t_f: float, c3: float, c4: float, n_grid: int) -> float:
    curve = protocols.septic(spec, t_f, c3, c4, n_grid)
    profile = ermakov.inverse_engineer(curve)
    return energies.power(curve, profile, spec).peak_rel


def optimize_septic_power(
    spec: TrapSpec, t_f: float, n_grid: int = 4001
) -> OptimizationResult:
    """Minimize the peak relative power of the septic family over
    (c3, c4), starting from (0, 0).

    The peak is taken over a dense grid (minimax objectives need it), and
    the result is clamped to never exceed the starting point.  1 is the
    mean-value floor for the peak of any complete expansion.
    """

    def objective(c3: float, c4: float) -> float:
        return _septic_peak(spec, t_f, c3, c4, n_grid)

    base = objective(0.0, 0.0)
    res = numerics.nelder_mead_2d(objective, (0.0, 0.0), rel_tol=1e-6, max_iter=2000)
    params, fx = res.x, res.fx
    if fx > base:
        params, fx = (0.0, 0.0), base
    return OptimizationResult(
        params=tuple(params),
        objective=fx,
        feasible=True,
        iterations=res.iterations,
        converged=res.converged,
        baseline=base,
    )
