"""Instantaneous and time-averaged energies, bounds, and power.

Units: energies in hbar*omega0, power in hbar*omega0^2, time dimensionless
(tau = omega0 t).  For the n-th dynamical mode, with c = (2n+1)/4,

    E(tau) = c (bdot^2 + W^2 b^2 + 1/b^2) = K + V,
    K      = c (bdot^2 + 1/b^2),
    V      = c W^2 b^2.

Two routes to the time-averaged energy are kept side by side: the direct
average of E (plus the analytic Dirac-impulse contribution when the
protocol has kicks), and the partially-integrated form

    avg_E2 = 2c < 1/b^2 + bdot^2 >,

which equals the average energy exactly when the boundary slope terms
vanish.  Their difference is itself a diagnostic: it equals the boundary
term -((2n+1)/(4 t_f)) [bdot b]_0^tf for slope-violating protocols.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import numerics, protocols
from .core import (
    DEFAULT_GRID_N,
    FrequencyProfile,
    GridMismatch,
    PowerUndefined,
    ScalingCurve,
    TrapSpec,
)


@dataclass
class EnergyTrace:
    """Per-node energies plus their averages and impulse bookkeeping."""

    grid: object
    E: np.ndarray
    K: np.ndarray
    V: np.ndarray
    Ena: np.ndarray | None = None
    P: np.ndarray | None = None
    avg_E: float | None = None
    avg_K: float | None = None
    avg_V: float | None = None
    avg_E2: float | None = None
    avg_Ena: float | None = None
    avg_Ena2: float | None = None
    delta_delta: float = 0.0
    delta_boundary: float = 0.0


def instantaneous(curve: ScalingCurve, profile: FrequencyProfile, spec: TrapSpec) -> EnergyTrace:
    """Fill E, K, V per node; impulse nodes are handled analytically elsewhere."""
    if not curve.grid.same_as(profile.grid):
        raise GridMismatch("curve and profile live on different grids")
    c = (2 * spec.n + 1) / 4.0
    b = curve.b
    K = c * (curve.bdot**2 + 1.0 / b**2)
    V = c * profile.omega2 * b**2
    return EnergyTrace(grid=curve.grid, E=K + V, K=K, V=V)


def impulse_contribution(curve: ScalingCurve, spec: TrapSpec) -> tuple[float, float]:
    """Averaged-energy contribution of endpoint Dirac kicks, and the
    boundary term from partial integration; equal and opposite.

    delta_delta = ((2n+1)/(4 t_f)) [bdot(tf-) b(tf) - bdot(0+) b(0)].
    """
    t_f = curve.grid.t_f
    c = (2 * spec.n + 1) / 4.0
    dd = c / t_f * (curve.bf_minus_dot * float(curve.b[-1]) - curve.b0_plus_dot * float(curve.b[0]))
    return dd, -dd


def averages(
    trace: EnergyTrace,
    curve: ScalingCurve,
    spec: TrapSpec,
    profile: FrequencyProfile | None = None,
) -> EnergyTrace:
    """Fill avg_E (direct route), avg_E2 (partially integrated route),
    avg_K, avg_V.

    For impulse protocols (profile with kicks) the analytic delta
    contribution is added to avg_E and avg_V; it belongs to the potential
    energy, which is what keeps the virial relation exact.
    """
    grid = curve.grid
    c = (2 * spec.n + 1) / 4.0
    dd, db = impulse_contribution(curve, spec)
    trace.delta_delta, trace.delta_boundary = dd, db
    trace.avg_K = numerics.average(trace.K, grid)
    trace.avg_V = numerics.average(trace.V, grid)
    trace.avg_E = numerics.average(trace.E, grid)
    trace.avg_E2 = numerics.average(2.0 * c * (1.0 / curve.b**2 + curve.bdot**2), grid)
    if profile is not None and profile.impulses:
        trace.avg_E += dd
        trace.avg_V += dd
    return trace


@dataclass
class EnergyLowerBound:
    """Greatest lower bound on the averaged energy for given (spec, t_f).

    ``value`` is the canonical quadrature over the quasi-optimal curve.
    ``closed_form`` evaluates the printed arctanh expression, which is
    only real when both arguments sit inside (-1, 1); outside that range
    it is reported as invalid rather than patched.
    """

    value: float
    closed_form: float | None
    closed_form_valid: bool
    closed_form_consistent: bool | None


def _graded_grid(t_f: float, n_grid: int, t_c: float = 25.0, ratio: float = 20.0):
    """Grid graded geometrically toward both ends: the quasi-optimal
    integrand carries an O(1) boundary layer at each endpoint and decays
    like 1/t in between, so long protocols need node shares per decade,
    not per unit time."""
    from .core import TimeGrid

    ladder = [t_c]
    while ladder[-1] * ratio < t_f / 2.0:
        ladder.append(ladder[-1] * ratio)
    edges = (
        [0.0]
        + ladder
        + [t_f / 2.0]
        + [t_f - e for e in reversed(ladder)]
        + [t_f]
    )
    m = max(8, (n_grid - 1) // (len(edges) - 1))
    if m % 2:
        m += 1
    parts = []
    pieces = []
    lo = 0
    for e0, e1 in zip(edges[:-1], edges[1:]):
        parts.append(np.linspace(e0, e1, m + 1))
        pieces.append((lo, lo + m))
        lo += m + 1
    return TimeGrid(np.concatenate(parts), tuple(pieces))


def lower_bound_avg_energy(
    spec: TrapSpec, t_f: float, n_grid: int = DEFAULT_GRID_N
) -> EnergyLowerBound:
    """Quadrature of the partially-integrated energy over the
    quasi-optimal curve, plus the closed form where its arctanh
    arguments are in range."""
    grid = _graded_grid(t_f, n_grid) if t_f > 50.0 else None
    curve = protocols.quasi_optimal(spec, t_f, n_grid, grid=grid)
    c2 = (2 * spec.n + 1) / 2.0
    value = numerics.average(c2 * (1.0 / curve.b**2 + curve.bdot**2), curve.grid)

    B = protocols.quasi_optimal_B(spec, t_f)
    b2mt2 = protocols._quasi_optimal_B2_minus_tf2(spec, t_f)
    a1 = (b2mt2 + B) / t_f
    a2 = B / t_f
    valid = max(abs(a1), abs(a2)) < 1.0
    closed = None
    consistent = None
    if valid:
        closed = c2 / t_f**2 * (b2mt2 - 2.0 * t_f * (math.atanh(a1) - math.atanh(a2)))
        consistent = abs(closed - value) <= 1e-6 * max(abs(value), 1e-300)
    return EnergyLowerBound(value, closed, valid, consistent)


def na_lower_bound(spec: TrapSpec, t_f: float) -> float:
    """Ground-state bound on the averaged non-adiabatic energy:
    (gamma-1)^2 / (4 t_f^2) in units of hbar*omega0."""
    return (spec.gamma - 1.0) ** 2 / (4.0 * t_f**2)


def nonadiabatic_energy(
    curve: ScalingCurve, profile: FrequencyProfile, spec: TrapSpec
) -> tuple[np.ndarray, float, float]:
    """Ground-state energy excess over the adiabatic reference, per node,
    plus its average by the direct and the partially-integrated routes.

    Requires a real frequency (W^2 >= 0 up to round-off) and n = 0; the
    trace is (bdot^2 + (W b - 1/b)^2)/4, manifestly non-negative.
    """
    if spec.n != 0:
        raise ValueError("non-adiabatic energy is defined here for the ground state only")
    if not curve.grid.same_as(profile.grid):
        raise GridMismatch("curve and profile live on different grids")
    omega = profile.omega()  # raises NonRealFrequency when W^2 < 0
    b = curve.b
    ena = 0.25 * (curve.bdot**2 + profile.omega2 * b**2 + 1.0 / b**2) - 0.5 * omega
    avg = numerics.average(ena, curve.grid)
    avg2 = numerics.average(0.5 * (curve.bdot**2 + 1.0 / b**2 - omega), curve.grid)
    return ena, avg, avg2


@dataclass
class PowerTrace:
    """Sampled power within smooth segments plus analytic step terms.

    ``steps`` lists (time, energy jump) for frequency discontinuities at
    the endpoints and interior joints; ``integral`` includes them, so it
    matches the total energy change (n+1/2)(omega_f/omega0 - 1) for every
    complete protocol.
    """

    P: np.ndarray
    P_rel: np.ndarray
    steps: tuple[tuple[float, float], ...]
    integral: float
    integral_expected: float
    peak_rel: float


def power(curve: ScalingCurve, profile: FrequencyProfile, spec: TrapSpec) -> PowerTrace:
    """P = ((2n+1)/4) d(W^2)/dtau b^2, and the mode-independent relative
    power P_rel = P / C where C = (n+1/2)(omega_f/omega0 - 1)/t_f spreads
    the total energy change uniformly over the protocol.

    Impulse protocols are refused: the kick makes the power a squared
    delta.  d(W^2)/dtau comes from the stored analytic samples when the
    protocol has them, else from centered differences per segment.
    """
    if profile.impulses:
        raise PowerUndefined("power is not a function for protocols with Dirac kicks")
    if not curve.grid.same_as(profile.grid):
        raise GridMismatch("curve and profile live on different grids")
    grid = curve.grid
    c = (2 * spec.n + 1) / 4.0
    if profile.domega2 is not None:
        dom = profile.domega2
    else:
        dom = np.empty(len(grid))
        for lo, hi in grid.pieces:
            dom[lo : hi + 1] = np.gradient(
                profile.omega2[lo : hi + 1], grid.nodes[lo : hi + 1], edge_order=2
            )
    P = c * dom * curve.b**2

    steps: list[tuple[float, float]] = []
    if abs(profile.omega2[0] - 1.0) > 1e-9:
        steps.append((0.0, c * (profile.omega2[0] - 1.0) * float(curve.b[0]) ** 2))
    for (lo0, hi0), (lo1, hi1) in zip(grid.pieces[:-1], grid.pieces[1:]):
        jump = profile.omega2[lo1] - profile.omega2[hi0]
        if abs(jump) > 1e-12:
            steps.append((float(grid.nodes[hi0]), c * jump * float(curve.b[hi0]) ** 2))
    wf2 = spec.omega_f_rel**2
    if abs(profile.omega2[-1] - wf2) > 1e-9:
        steps.append((grid.t_f, c * (wf2 - profile.omega2[-1]) * float(curve.b[-1]) ** 2))

    integral = numerics.integrate(P, grid) + sum(s for _, s in steps)
    expected = (spec.n + 0.5) * (spec.omega_f_rel - 1.0)
    C = expected / grid.t_f
    P_rel = P / C
    return PowerTrace(
        P=P,
        P_rel=P_rel,
        steps=tuple(steps),
        integral=integral,
        integral_expected=expected,
        peak_rel=float(np.max(np.abs(P_rel))),
    )


@dataclass
class BangBangEnergies:
    """Constant segment energies of a two-step protocol and their average."""

    e_segment1: float
    e_segment2: float
    avg_E: float
    t_f: float


def bang_bang_energies(
    spec: TrapSpec, omega1: float, omega2: float, t1: float, t2: float
) -> BangBangEnergies:
    """Total energy is constant within each constant-frequency interval:
    ((n+1/2)/2)(1 - W1^2) on (0, t1) and ((n+1/2)/2)(Wf^2 + W2^2)/Wf on
    (t1, t_f), in units of hbar*omega0."""
    half = spec.n + 0.5
    wf = spec.omega_f_rel
    e1 = 0.5 * half * (1.0 - omega1**2)
    e2 = 0.5 * half * (wf**2 + omega2**2) / wf
    t_f = t1 + t2
    return BangBangEnergies(e1, e2, (t1 * e1 + t2 * e2) / t_f, t_f)


@dataclass
class BoundReport:
    """Every closed-form bound evaluated for one (spec, t_f).

    Asymptotic reference values are included as plain numbers so sweep
    output can report how close a regime sits to its limiting law.
    """

    E_nL: EnergyLowerBound
    Ena_L: float
    tf_max: float                  # pi*gamma/2, dimensionless
    E_min: float                   # (2n+1)(1 + omega_f/omega0)/4 at the extreme
    E_nL_small_tf: float           # (2n+1) gamma^2 / (2 t_f^2)
    bb_equal_steps_avg_E: float    # (2n+1) pi ln(2 gamma) / (16 Wf t_f^2)
    free_expansion_tf: float       # gamma
    free_expansion_avg_E: float    # n + 1/2


def bound_report(spec: TrapSpec, t_f: float, n_grid: int = DEFAULT_GRID_N) -> BoundReport:
    g = spec.gamma
    wf = spec.omega_f_rel
    tn = 2 * spec.n + 1
    return BoundReport(
        E_nL=lower_bound_avg_energy(spec, t_f, n_grid),
        Ena_L=na_lower_bound(spec, t_f),
        tf_max=math.pi * g / 2.0,
        E_min=tn * (1.0 + wf) / 4.0,
        E_nL_small_tf=tn * g**2 / (2.0 * t_f**2),
        bb_equal_steps_avg_E=tn * math.pi * math.log(2.0 * g) / (16.0 * wf * t_f**2),
        free_expansion_tf=g,
        free_expansion_avg_E=spec.n + 0.5,
    )


def full_trace(
    curve: ScalingCurve,
    profile: FrequencyProfile,
    spec: TrapSpec,
    with_na: bool = True,
    with_power: bool = False,
) -> EnergyTrace:
    """Convenience: instantaneous + averages, with the non-adiabatic and
    power traces attached where they are defined."""
    trace = averages(instantaneous(curve, profile, spec), curve, spec, profile)
    if with_na and spec.n == 0 and float(np.min(profile.omega2)) >= -1e-12:
        trace.Ena, trace.avg_Ena, trace.avg_Ena2 = nonadiabatic_energy(curve, profile, spec)
    if with_power and not profile.impulses:
        trace.P = power(curve, profile, spec).P
    return trace
