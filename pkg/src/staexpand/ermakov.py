"""The Ermakov equation as forward solver and inverse-engineering map.

In dimensionless form the scaling function obeys

    b'' + W^2(tau) b = 1 / b^3,      W = omega/omega0, tau = omega0 t,

so a designed b yields the control W^2 = 1/b^4 - b''/b, and a given W^2
can be integrated forward.  A Dirac impulse of strength D in omega^2
kicks the slope: integrating b'' across the delta gives
bdot(tau+) = bdot(tau-) - D b(tau) with b continuous.

The same equation is Newton's law for a fictitious unit-mass particle at
"position" b in the potential U = (W^2 b^2 + 1/b^2)/2, which is what makes
the excitation-energy bookkeeping below work.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numerics
from .core import (
    FrequencyProfile,
    GridMismatch,
    NonRealFrequency,
    ScalingCurve,
    TrajectoryBlowUp,
    TrapSpec,
)

_B_COLLAPSE = 1e-9


def _bddot_samples(curve: ScalingCurve) -> np.ndarray:
    if curve.bddot is not None:
        return curve.bddot
    return numerics.second_derivative(curve.b, curve.grid)


def ermakov_residual(curve: ScalingCurve, profile: FrequencyProfile) -> float:
    """max over interior nodes of |b'' + W^2 b - 1/b^3| (impulses excluded)."""
    if not curve.grid.same_as(profile.grid):
        raise GridMismatch("curve and profile live on different grids")
    bddot = _bddot_samples(curve)
    r = bddot + profile.omega2 * curve.b - 1.0 / curve.b**3
    return float(np.max(np.abs(r[1:-1])))


def inverse_engineer(curve: ScalingCurve) -> FrequencyProfile:
    """Read the control W^2 = 1/b^4 - b''/b off a designed curve.

    Uses the curve's stored bddot (analytic for closed-form protocols);
    falls back to O(h^2) central differences for bare samples.  No
    impulses are added; the imaginary-band flag comes from the sign of
    min W^2.
    """
    b = curve.b
    bddot = _bddot_samples(curve)
    omega2 = 1.0 / b**4 - bddot / b

    omega2_fns = None
    if curve.fns is not None:
        omega2_fns = tuple(
            (lambda t, fn=fn: 1.0 / fn.b(t) ** 4 - fn.bddot(t) / fn.b(t))
            for fn in curve.fns
        )
    domega2 = None
    if curve.bdddot is not None:
        domega2 = (
            -4.0 * curve.bdot / b**5
            - curve.bdddot / b
            + bddot * curve.bdot / b**2
        )
    return FrequencyProfile(curve.grid, omega2, (), omega2_fns, domega2)


def forward_solve(
    profile: FrequencyProfile, b0: float = 1.0, bdot0: float = 0.0
) -> ScalingCurve:
    """Integrate b'' = 1/b^3 - W^2(tau) b through the profile with RK4.

    Impulses must sit on piece boundaries (or the endpoints); each one
    applies the slope jump bdot -> bdot - D b.  The returned curve stores
    bddot evaluated from the equation itself, the one-sided slope just
    after the t=0 impulses in ``b0_plus_dot`` and just before the final
    ones in ``bf_minus_dot``.
    """
    grid = profile.grid
    t_f = grid.t_f
    time_tol = 1e-9 * (1.0 + t_f)

    def impulses_at(t: float):
        return [s for (ti, s) in profile.impulses if abs(ti - t) <= time_tol]

    for ti, _ in profile.impulses:
        boundary_times = [0.0, t_f] + [grid.nodes[lo] for lo, _ in grid.pieces[1:]]
        if not any(abs(ti - tb) <= time_tol for tb in boundary_times):
            raise ValueError(f"impulse at t={ti:.6g} is not on a piece boundary")

    b = np.empty(len(grid))
    bdot = np.empty(len(grid))
    bddot = np.empty(len(grid))

    state = np.array([float(b0), float(bdot0)])
    for s in impulses_at(0.0):
        state[1] -= s * state[0]
    b0_plus = float(state[1])

    for k, (lo, hi) in enumerate(grid.pieces):
        om = profile.piece_callable(k)

        def rhs(t, y, om=om):
            if y[0] < _B_COLLAPSE:
                raise TrajectoryBlowUp("scaling function collapsed toward b = 0", float(t))
            return np.array([y[1], 1.0 / y[0] ** 3 - float(om(t)) * y[0]])

        nodes = grid.nodes[lo : hi + 1]
        traj = numerics.rk4_solve(rhs, state, nodes)
        b[lo : hi + 1] = traj[:, 0]
        bdot[lo : hi + 1] = traj[:, 1]
        bddot[lo : hi + 1] = 1.0 / traj[:, 0] ** 3 - profile.omega2[lo : hi + 1] * traj[:, 0]
        state = traj[-1].copy()
        if k + 1 < grid.n_pieces:
            for s in impulses_at(float(nodes[-1])):
                state[1] -= s * state[0]

    bf_minus = float(bdot[-1])
    return ScalingCurve(
        grid,
        b,
        bdot,
        bddot,
        b0_plus_dot=b0_plus,
        bf_minus_dot=bf_minus,
        closed_form_tag="ode",
    )


def post_protocol_state(curve: ScalingCurve, profile: FrequencyProfile) -> tuple[float, float]:
    """(b, bdot) just after t_f, with any final impulses applied."""
    t_f = curve.grid.t_f
    b_f = float(curve.b[-1])
    bdot_f = float(curve.bf_minus_dot)
    for ti, s in profile.impulses:
        if abs(ti - t_f) <= 1e-9 * (1.0 + t_f):
            bdot_f -= s * b_f
    return b_f, bdot_f


def excitation_energy(
    curve: ScalingCurve, profile: FrequencyProfile, spec: TrapSpec | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Classical excitation above the moving potential minimum, per node.

    E_ex = bdot^2/2 + (W^2 b^2 + 1/b^2 - 2 W)/2, which is non-negative for
    W >= 0, and the scaled non-adiabatic energy E_ex/2 in units of
    hbar*omega0 (the TrapSpec argument fixes no scale in dimensionless
    form).  Raises NonRealFrequency when W^2 < 0 anywhere.
    """
    if not curve.grid.same_as(profile.grid):
        raise GridMismatch("curve and profile live on different grids")
    omega = profile.omega()
    b = curve.b
    e_ex = 0.5 * curve.bdot**2 + 0.5 * (profile.omega2 * b**2 + 1.0 / b**2 - 2.0 * omega)
    return e_ex, 0.5 * e_ex


@dataclass
class ClassicalAnalogyState:
    """Fictitious-particle view of the curve: arrays over grid nodes."""

    b: np.ndarray
    bdot: np.ndarray
    U: np.ndarray
    H_cl: np.ndarray
    E_ex: np.ndarray


def classical_analogy(curve: ScalingCurve, profile: FrequencyProfile) -> ClassicalAnalogyState:
    """Potential U = (W^2 b^2 + 1/b^2)/2, total energy, and excitation."""
    if not curve.grid.same_as(profile.grid):
        raise GridMismatch("curve and profile live on different grids")
    b = curve.b
    U = 0.5 * (profile.omega2 * b**2 + 1.0 / b**2)
    H_cl = 0.5 * curve.bdot**2 + U
    e_ex, _ = excitation_energy(curve, profile)
    return ClassicalAnalogyState(b=b, bdot=curve.bdot, U=U, H_cl=H_cl, E_ex=e_ex)
