"""Constructors for every expansion protocol.

All constructors work in dimensionless units (time in 1/omega0,
frequencies in omega0) and return curves sampled on a grid together with
analytic derivatives where a closed form exists.  The families:

* quintic / septic  -- polynomial interpolants of b(s), s = t/t_f, pinned
  by b(0)=1, bdot(0)=0, b(t_f)=gamma, bdot(t_f)=0 and bddot(0)=bddot(t_f)=0.
* quasi_optimal     -- b = sqrt((B^2 - tf^2) s^2 + 2 B s + 1) with
  B = sqrt(tf^2 + gamma^2) - 1; hits the endpoint values but not the
  derivative conditions, so on its own it only bounds the averaged energy.
* dirac_impulse     -- the quasi-optimal interior closed by delta kicks of
  omega^2 at t = 0 and t_f that switch the slopes to zero.
* hybrid_caps       -- cubic launching/stopping caps around the linear
  bottom-tracking segment, matched in value and slope at the joints.
* linear_bottom     -- b = 1 + (gamma-1) t/t_f with omega = omega0/b^2;
  rides the potential minimum, boundary slopes intentionally nonzero.
* bang_bang         -- two constant-frequency steps (the first possibly
  imaginary), switching times fixed by the matching conditions.
* constant_power_shoot -- shooting solution of the constant-power ODE
  b b''' - b'' b' + 4 b'/b^3 = 2(1 - omega_f/omega0)/t_f.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
import numpy as np
from numpy.polynomial import Polynomial
from scipy.optimize import brentq

from . import ermakov, numerics
from .core import (
    DEFAULT_GRID_N,
    FrequencyProfile,
    Infeasible,
    PieceFns,
    ScalingCurve,
    TimeGrid,
    TrajectoryBlowUp,
    TrapSpec,
)

_OMEGA1_SERIES_SWITCH = 1e-6  # below this, sinh(w1 t)/w1 is evaluated by series
_SNAP_TOL = 1e-12


def _sqrt_fns(g, g1, g2, g3) -> PieceFns:
    """PieceFns for b = sqrt(g) given g and its first three derivatives."""

    def b(t):
        return np.sqrt(g(t))

    def bdot(t):
        return g1(t) / (2.0 * np.sqrt(g(t)))

    def bddot(t):
        gg = g(t)
        return g2(t) / (2.0 * np.sqrt(gg)) - g1(t) ** 2 / (4.0 * gg**1.5)

    def bdddot(t):
        gg = g(t)
        return (
            g3(t) / (2.0 * np.sqrt(gg))
            - 3.0 * g1(t) * g2(t) / (4.0 * gg**1.5)
            + 3.0 * g1(t) ** 3 / (8.0 * gg**2.5)
        )

    return PieceFns(b, bdot, bddot, bdddot)


def _curve_from_fns(
    grid: TimeGrid, fns: tuple[PieceFns, ...], tag: str, **kw
) -> ScalingCurve:
    n = len(grid)
    b = np.empty(n)
    bdot = np.empty(n)
    bddot = np.empty(n)
    bdddot = np.empty(n) if all(f.bdddot is not None for f in fns) else None
    for k, (lo, hi) in enumerate(grid.pieces):
        t = grid.nodes[lo : hi + 1]
        b[lo : hi + 1] = fns[k].b(t)
        bdot[lo : hi + 1] = fns[k].bdot(t)
        bddot[lo : hi + 1] = fns[k].bddot(t)
        if bdddot is not None:
            bdddot[lo : hi + 1] = fns[k].bdddot(t)
    return ScalingCurve(
        grid, b, bdot, bddot, bdddot, closed_form_tag=tag, fns=fns, **kw
    )


def _poly_fns(p: Polynomial, t_f: float) -> PieceFns:
    d1, d2, d3 = p.deriv(1), p.deriv(2), p.deriv(3)
    return PieceFns(
        b=lambda t: p(t / t_f),
        bdot=lambda t: d1(t / t_f) / t_f,
        bddot=lambda t: d2(t / t_f) / t_f**2,
        bdddot=lambda t: d3(t / t_f) / t_f**3,
    )


def quintic(spec: TrapSpec, t_f: float, n: int = DEFAULT_GRID_N) -> ScalingCurve:
    """b(s) = 1 + (gamma-1)(10 s^3 - 15 s^4 + 6 s^5): the smoothest
    textbook interpolant, frequency continuous at both ends."""
    if t_f <= 0.0:
        raise ValueError("t_f must be positive")
    d = spec.gamma - 1.0
    p = Polynomial([1.0, 0.0, 0.0, 10.0 * d, -15.0 * d, 6.0 * d])
    grid = TimeGrid.uniform(t_f, n)
    return _curve_from_fns(grid, (_poly_fns(p, t_f),), "quintic")


def septic(
    spec: TrapSpec, t_f: float, c3: float = 0.0, c4: float = 0.0, n: int = DEFAULT_GRID_N
) -> ScalingCurve:
    """Seventh-order interpolant with two free shape parameters.

    b = 1 + c3 s^3 + c4 s^4 - (21 + 6c3 + 3c4 - 21g) s^5
        + (35 + 8c3 + 3c4 - 35g) s^6 - (15 + 3c3 + c4 - 15g) s^7
    satisfies all six boundary conditions for any (c3, c4), which is what
    makes (c3, c4) usable as power-shaping knobs.
    """
    if t_f <= 0.0:
        raise ValueError("t_f must be positive")
    g = spec.gamma
    p = Polynomial(
        [
            1.0,
            0.0,
            0.0,
            c3,
            c4,
            -(21.0 + 6.0 * c3 + 3.0 * c4 - 21.0 * g),
            (35.0 + 8.0 * c3 + 3.0 * c4 - 35.0 * g),
            -(15.0 + 3.0 * c3 + c4 - 15.0 * g),
        ]
    )
    grid = TimeGrid.uniform(t_f, n)
    return _curve_from_fns(grid, (_poly_fns(p, t_f),), "septic")


def quasi_optimal_B(spec: TrapSpec, t_f: float) -> float:
    """B = sqrt(tf^2 + gamma^2) - 1 (positive root)."""
    return math.sqrt(t_f**2 + spec.gamma**2) - 1.0


def _quasi_optimal_B2_minus_tf2(spec: TrapSpec, t_f: float) -> float:
    # B^2 - tf^2 = gamma^2 + 1 - 2 sqrt(tf^2 + gamma^2), free of the
    # catastrophic cancellation the direct difference hits for long protocols
    return spec.gamma**2 + 1.0 - 2.0 * math.sqrt(t_f**2 + spec.gamma**2)


def quasi_optimal(
    spec: TrapSpec, t_f: float, n: int = DEFAULT_GRID_N, grid: TimeGrid | None = None
) -> ScalingCurve:
    """Minimizer of the averaged 1/b^2 + bdot^2 functional between the
    endpoint values; slopes at 0+ and t_f- are recorded as one-sided
    derivatives because they do not vanish."""
    if t_f <= 0.0:
        raise ValueError("t_f must be positive")
    g = spec.gamma
    B = quasi_optimal_B(spec, t_f)
    b2mt2 = _quasi_optimal_B2_minus_tf2(spec, t_f)
    pp = Polynomial([1.0, 2.0 * B, b2mt2])  # b^2 as a polynomial in s
    if np.min(pp.linspace(512, domain=[0.0, 1.0])[1]) <= 0.0:
        raise ValueError("radicand of the scaling function is not positive")
    d1, d2 = pp.deriv(1), pp.deriv(2)
    fns = _sqrt_fns(
        g=lambda t: pp(t / t_f),
        g1=lambda t: d1(t / t_f) / t_f,
        g2=lambda t: d2(t / t_f) / t_f**2,
        g3=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
    )
    if grid is None:
        grid = TimeGrid.uniform(t_f, n)
    elif abs(grid.t_f - t_f) > 1e-12 * max(1.0, t_f):
        raise ValueError("grid duration does not match t_f")
    return _curve_from_fns(
        grid,
        (fns,) * grid.n_pieces,  # one smooth closed form, any grid split
        "quasi_optimal",
        b0_plus_dot=B / t_f,
        bf_minus_dot=(b2mt2 + B) / (g * t_f),
    )


def dirac_impulse(
    spec: TrapSpec, t_f: float, n: int = DEFAULT_GRID_N
) -> tuple[ScalingCurve, FrequencyProfile]:
    """Quasi-optimal interior plus delta kicks of omega^2 at 0 and t_f.

    The kick strengths D0 = -bdot(0+)/b(0) and Df = +bdot(t_f-)/b(t_f)
    switch the slopes to zero outside the protocol, so the effective
    boundary conditions hold and the averaged-energy bound is attained.
    D0 is always negative; Df may take either sign.
    """
    curve = quasi_optimal(spec, t_f, n)
    base = ermakov.inverse_engineer(curve)
    d0 = -curve.b0_plus_dot / float(curve.b[0])
    df = curve.bf_minus_dot / float(curve.b[-1])
    return curve, FrequencyProfile(
        base.grid,
        base.omega2,
        ((0.0, d0), (t_f, df)),
        base.omega2_fns,
        base.domega2,
    )


def hybrid_caps(
    spec: TrapSpec,
    t_f: float,
    tau_l: float,
    tau_s: float,
    n: int = DEFAULT_GRID_N,
) -> ScalingCurve:
    """Cubic launching/stopping caps around the linear bottom segment.

    The caps match b and bdot at both of their ends (a cubic cannot also
    match bddot, so omega stays discontinuous at the joints); closed-form
    coefficients, with b > 0 guaranteed throughout.
    """
    if t_f <= 0.0:
        raise ValueError("t_f must be positive")
    if tau_l <= 0.0 or tau_s <= 0.0:
        raise ValueError("cap durations must be positive")
    if tau_l + tau_s >= t_f:
        raise ValueError("caps must fit inside the protocol: tau_l + tau_s < t_f")
    d = spec.gamma - 1.0
    s_l = tau_l / t_f
    u_r = tau_s / t_f
    # cap 1 in s:  1 + (2d/s_l) s^2 - (d/s_l^2) s^3
    p1 = Polynomial([1.0, 0.0, 2.0 * d / s_l, -d / s_l**2])
    # middle in s: 1 + d s
    pm = Polynomial([1.0, d])
    # cap 2 in u = 1 - s:  gamma - (2d/u_r) u^2 + (d/u_r^2) u^3
    p2 = Polynomial([spec.gamma, 0.0, -2.0 * d / u_r, d / u_r**2])
    q1, q2, q3 = p2.deriv(1), p2.deriv(2), p2.deriv(3)
    cap2 = PieceFns(
        b=lambda t: p2((t_f - t) / t_f),
        bdot=lambda t: -q1((t_f - t) / t_f) / t_f,
        bddot=lambda t: q2((t_f - t) / t_f) / t_f**2,
        bdddot=lambda t: -q3((t_f - t) / t_f) / t_f**3,
    )
    grid = TimeGrid.piecewise([0.0, tau_l, t_f - tau_s, t_f], n)
    fns = (_poly_fns(p1, t_f), _poly_fns(pm, t_f), cap2)
    return _curve_from_fns(grid, fns, "hybrid")


def linear_bottom(
    spec: TrapSpec, t_f: float, n: int = DEFAULT_GRID_N
) -> tuple[ScalingCurve, FrequencyProfile]:
    """b = 1 + (gamma-1) t/t_f with the bottom-tracking control W = 1/b^2.

    bddot = 0, so the pair solves the Ermakov equation exactly; the
    boundary slopes are (gamma-1)/t_f at both ends, deliberately nonzero.
    """
    if t_f <= 0.0:
        raise ValueError("t_f must be positive")
    d = spec.gamma - 1.0
    p = Polynomial([1.0, d])
    grid = TimeGrid.uniform(t_f, n)
    curve = _curve_from_fns(grid, (_poly_fns(p, t_f),), "linear_bottom")
    b = curve.b
    omega2 = 1.0 / b**4
    fn = curve.fns[0]
    profile = FrequencyProfile(
        grid,
        omega2,
        (),
        (lambda t: 1.0 / fn.b(t) ** 4,),
        domega2=-4.0 * curve.bdot / b**5,
    )
    return curve, profile


@dataclass
class BangBangProtocol:
    """Two-step protocol: frequency i*omega1 on (0, t1), omega2 on (t1, t_f)."""

    curve: ScalingCurve
    profile: FrequencyProfile
    t1: float
    t2: float
    omega1: float
    omega2: float

    @property
    def t_f(self) -> float:
        return self.t1 + self.t2


def bang_bang_times(spec: TrapSpec, omega1: float, omega2: float) -> tuple[float, float]:
    """Switching durations (t1, t2) from the matching conditions.

    omega1, omega2 in units of omega0.  Requires omega1 >= 0 and
    omega2 >= sqrt(omega_f/omega0) (i.e. omega2 >= sqrt(omega0*omega_f)),
    which is what makes t1 >= 0; at equality t1 = 0 exactly.
    """
    if omega1 < 0.0:
        raise ValueError("omega1 must be >= 0")
    if omega2 <= 0.0:
        raise ValueError("omega2 must be > 0")
    g2 = spec.gamma**2
    w1s, w2s = omega1**2, omega2**2
    edge = g2 * w2s - 1.0
    if abs(edge) <= _SNAP_TOL * max(1.0, g2 * w2s):
        edge = 0.0
    if edge < 0.0:
        raise ValueError(
            "omega2 >= sqrt(omega0*omega_f) is required for t1 >= 0 "
            f"(gamma^2 omega2^2 - 1 = {edge:.3g})"
        )
    x = (g2 - 1.0) * edge / (g2 * (w2s + w1s) * (1.0 + w1s))
    c = math.sqrt(max(x, 0.0))
    if omega1 < _OMEGA1_SERIES_SWITCH:
        z = omega1 * c
        t1 = c * (1.0 - z**2 / 6.0 + 3.0 * z**4 / 40.0)
    else:
        t1 = math.asinh(omega1 * c) / omega1
    if edge == 0.0:
        # At gamma^2 omega2^2 = 1 the arcsin argument reduces to
        # omega2^2 (gamma^2 omega1^2 + 1) / (omega2^2 + omega1^2) = 1 exactly;
        # evaluating it in floating point would hit the sqrt singularity.
        arg = 1.0
    else:
        arg = w2s * (g2 - 1.0) * (g2 * w1s + 1.0) / ((w2s + w1s) * (g2**2 * w2s - 1.0))
        if arg > 1.0:
            if arg > 1.0 + 1e-9:
                raise ValueError(f"arcsin argument {arg:.12g} > 1 in the matching condition")
            arg = 1.0
    t2 = math.asin(math.sqrt(arg)) / omega2
    return t1, t2


def _bang_bang_seg1_fns(omega1: float) -> PieceFns:
    w1s = omega1**2
    if omega1 < _OMEGA1_SERIES_SWITCH:
        # sinh^2(w1 t)/w1^2 and derivatives by series: exact at omega1 = 0
        def g(t):
            t = np.asarray(t, dtype=float)
            return 1.0 + (1.0 + w1s) * (t**2 + w1s * t**4 / 3.0 + 2.0 * w1s**2 * t**6 / 45.0)

        def g1(t):
            t = np.asarray(t, dtype=float)
            return (1.0 + w1s) * (2.0 * t + 4.0 * w1s * t**3 / 3.0 + 4.0 * w1s**2 * t**5 / 15.0)

        def g2(t):
            t = np.asarray(t, dtype=float)
            return (1.0 + w1s) * (2.0 + 4.0 * w1s * t**2 + 4.0 * w1s**2 * t**4 / 3.0)

        def g3(t):
            t = np.asarray(t, dtype=float)
            return (1.0 + w1s) * (8.0 * w1s * t + 16.0 * w1s**2 * t**3 / 3.0)

    else:
        u = (1.0 + w1s) / w1s

        def g(t):
            return 1.0 + u * np.sinh(omega1 * np.asarray(t, dtype=float)) ** 2

        def g1(t):
            return u * omega1 * np.sinh(2.0 * omega1 * np.asarray(t, dtype=float))

        def g2(t):
            return 2.0 * u * w1s * np.cosh(2.0 * omega1 * np.asarray(t, dtype=float))

        def g3(t):
            return 4.0 * u * omega1**3 * np.sinh(2.0 * omega1 * np.asarray(t, dtype=float))

    return _sqrt_fns(g, g1, g2, g3)


def _bang_bang_seg2_fns(gamma: float, omega2: float, t_f: float) -> PieceFns:
    a = (1.0 - gamma**4 * omega2**2) / (gamma**2 * omega2**2)

    def g(t):
        return gamma**2 + a * np.sin(omega2 * (t_f - np.asarray(t, dtype=float))) ** 2

    def g1(t):
        return -a * omega2 * np.sin(2.0 * omega2 * (t_f - np.asarray(t, dtype=float)))

    def g2(t):
        return 2.0 * a * omega2**2 * np.cos(2.0 * omega2 * (t_f - np.asarray(t, dtype=float)))

    def g3(t):
        return 4.0 * a * omega2**3 * np.sin(2.0 * omega2 * (t_f - np.asarray(t, dtype=float)))

    return _sqrt_fns(g, g1, g2, g3)


def bang_bang(
    spec: TrapSpec, omega1: float, omega2: float, n: int = DEFAULT_GRID_N
) -> BangBangProtocol:
    """Analytic two-step protocol for given step frequencies (omega0 units)."""
    t1, t2 = bang_bang_times(spec, omega1, omega2)
    t_f = t1 + t2
    seg2 = _bang_bang_seg2_fns(spec.gamma, omega2, t_f)
    if t1 == 0.0:
        grid = TimeGrid.uniform(t_f, n if n % 2 else n + 1)
        fns: tuple[PieceFns, ...] = (seg2,)
        om_vals = [omega2**2]
    else:
        grid = TimeGrid.piecewise([0.0, t1, t_f], n)
        fns = (_bang_bang_seg1_fns(omega1), seg2)
        om_vals = [-(omega1**2), omega2**2]
    curve = _curve_from_fns(grid, fns, "bang_bang")
    omega2_samples = np.empty(len(grid))
    omega2_fns = []
    for k, (lo, hi) in enumerate(grid.pieces):
        omega2_samples[lo : hi + 1] = om_vals[k]
        omega2_fns.append(lambda t, v=om_vals[k]: v * np.ones_like(np.asarray(t, dtype=float)))
    profile = FrequencyProfile(
        grid,
        omega2_samples,
        (),
        tuple(omega2_fns),
        domega2=np.zeros(len(grid)),
    )
    return BangBangProtocol(curve, profile, t1, t2, omega1, omega2)


def bang_bang_max_duration(spec: TrapSpec) -> float:
    """t_f at the extreme point omega2 = sqrt(omega0*omega_f): pi*gamma/2."""
    return math.pi * spec.gamma / 2.0


def bang_bang_for_duration(
    spec: TrapSpec, t_f: float, n: int = DEFAULT_GRID_N
) -> BangBangProtocol:
    """Equal-step protocol (omega1 = omega2) hitting a target duration.

    Solves t1(w) + t2(w) = t_f for the common step frequency by root
    bracketing; only durations up to pi*gamma/2 are reachable.
    """
    t_max = bang_bang_max_duration(spec)
    if not 0.0 < t_f <= t_max:
        raise Infeasible(f"equal-step protocols need 0 < t_f <= {t_max:.6g}")
    w_lo = math.sqrt(spec.omega_f_rel)
    if t_f >= t_max * (1.0 - 1e-12):
        return bang_bang(spec, w_lo, w_lo, n)

    def duration_gap(w):
        return sum(bang_bang_times(spec, w, w)) - t_f

    w_hi = max(1.0, 2.0 * w_lo)
    while duration_gap(w_hi) > 0.0:
        w_hi *= 2.0
        if w_hi > 1e12:
            raise Infeasible("could not bracket the step frequency")
    w = brentq(duration_gap, w_lo, w_hi, xtol=1e-14, rtol=1e-14)
    return bang_bang(spec, w, w, n)


def bang_bang_na(spec: TrapSpec, beta: float, n: int = DEFAULT_GRID_N) -> BangBangProtocol:
    """Free-expansion two-step protocol: omega1 = 0, omega2 = beta*omega0.

    All frequencies are real and non-negative, so the non-adiabatic energy
    is defined.  Requires beta >= 1/gamma (t1 real) which also keeps the
    arcsin argument in range.
    """
    if beta <= 0.0:
        raise ValueError("beta must be positive")
    if beta * spec.gamma < 1.0 - 1e-12:
        raise ValueError("beta >= 1/gamma is required for a real switching time")
    return bang_bang(spec, 0.0, beta, n)


def bang_bang_na_for_duration(
    spec: TrapSpec, t_f: float, n: int = DEFAULT_GRID_N
) -> BangBangProtocol:
    """Free-expansion protocol hitting a target duration.

    Durations range over (sqrt(gamma^2 - 1), pi*gamma/2]: the upper end is
    beta = 1/gamma, the lower end the beta -> infinity free-expansion limit.
    """
    t_max = bang_bang_max_duration(spec)
    t_min = math.sqrt(spec.gamma**2 - 1.0)
    if not t_min < t_f <= t_max:
        raise Infeasible(
            f"free-expansion protocols need {t_min:.6g} < t_f <= {t_max:.6g}"
        )
    if t_f >= t_max * (1.0 - 1e-12):
        return bang_bang_na(spec, 1.0 / spec.gamma, n)

    def duration_gap(beta):
        return sum(bang_bang_times(spec, 0.0, beta)) - t_f

    b_lo = 1.0 / spec.gamma
    b_hi = max(1.0, 2.0 * b_lo)
    while duration_gap(b_hi) > 0.0:
        b_hi *= 2.0
        if b_hi > 1e12:
            raise Infeasible("could not bracket beta")
    beta = brentq(duration_gap, b_lo, b_hi, xtol=1e-14, rtol=1e-14)
    return bang_bang_na(spec, beta, n)


@dataclass
class ShootingMismatch:
    """Terminal-condition misses of the constant-power shooting solution."""

    b_error: float      # b(t_f) - gamma
    bdot_f: float
    bddot_f: float


def constant_power_shoot(
    spec: TrapSpec, t_f: float, n: int = DEFAULT_GRID_N
) -> tuple[ScalingCurve, ShootingMismatch]:
    """Integrate the constant-power condition forward from rest.

    b b''' - b'' b' + 4 b'/b^3 = 2 (1 - omega_f/omega0)/t_f with
    b(0) = 1, bdot(0) = 0 and bddot(0) = 0 (no frequency jump at t = 0).
    The three conditions at t = 0 use up every constant, so the terminal
    conditions generically fail; the mismatch is reported rather than fixed.
    """
    if t_f <= 0.0:
        raise ValueError("t_f must be positive")
    source = 2.0 * (1.0 - spec.omega_f_rel) / t_f

    def rhs(t, y):
        b, b1, b2 = y
        if b < 1e-9:
            raise TrajectoryBlowUp("scaling function collapsed toward b = 0", float(t))
        return np.array([b1, b2, (source + b2 * b1 - 4.0 * b1 / b**3) / b])

    grid = TimeGrid.uniform(t_f, n)
    traj = numerics.rk4_solve(rhs, [1.0, 0.0, 0.0], grid.nodes)
    b, b1, b2 = traj[:, 0], traj[:, 1], traj[:, 2]
    b3 = (source + b2 * b1 - 4.0 * b1 / b**3) / b
    curve = ScalingCurve(grid, b, b1, b2, b3, closed_form_tag="constant_power")
    mism = ShootingMismatch(
        b_error=float(b[-1] - spec.gamma),
        bdot_f=float(b1[-1]),
        bddot_f=float(b2[-1]),
    )
    return curve, mism


_FAMILIES = (
    "quintic",
    "septic",
    "quasi_optimal",
    "dirac",
    "hybrid",
    "linear_bottom",
    "bang_bang",
    "bang_bang_na",
    "constant_power",
)


@dataclass
class ProtocolParams:
    """Declarative protocol request, used by sweeps and the CLI."""

    family: str
    t_f: float | None = None
    c3: float = 0.0
    c4: float = 0.0
    tau_l: float | None = None
    tau_s: float | None = None
    beta: float | None = None
    omega1: float | None = None
    omega2: float | None = None
    grid_n: int = DEFAULT_GRID_N

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {_FAMILIES}")


@dataclass
class ProtocolBundle:
    curve: ScalingCurve
    profile: FrequencyProfile
    extra: dict


def build(spec: TrapSpec, params: ProtocolParams) -> ProtocolBundle:
    """Construct a curve/profile pair for the requested family.

    Families without a native profile get the inverse-engineered one.
    """
    fam, t_f, n = params.family, params.t_f, params.grid_n
    if fam == "quintic":
        curve = quintic(spec, t_f, n)
        return ProtocolBundle(curve, ermakov.inverse_engineer(curve), {})
    if fam == "septic":
        curve = septic(spec, t_f, params.c3, params.c4, n)
        return ProtocolBundle(curve, ermakov.inverse_engineer(curve), {})
    if fam == "quasi_optimal":
        curve = quasi_optimal(spec, t_f, n)
        return ProtocolBundle(curve, ermakov.inverse_engineer(curve), {})
    if fam == "dirac":
        curve, profile = dirac_impulse(spec, t_f, n)
        return ProtocolBundle(curve, profile, {"impulses": profile.impulses})
    if fam == "hybrid":
        if params.tau_l is None or params.tau_s is None:
            raise ValueError("hybrid needs tau_l and tau_s")
        curve = hybrid_caps(spec, t_f, params.tau_l, params.tau_s, n)
        return ProtocolBundle(curve, ermakov.inverse_engineer(curve), {})
    if fam == "linear_bottom":
        curve, profile = linear_bottom(spec, t_f, n)
        return ProtocolBundle(curve, profile, {})
    if fam == "bang_bang":
        if params.omega1 is not None and params.omega2 is not None:
            bb = bang_bang(spec, params.omega1, params.omega2, n)
        else:
            bb = bang_bang_for_duration(spec, t_f, n)
        return ProtocolBundle(
            bb.curve, bb.profile,
            {"t1": bb.t1, "t2": bb.t2, "omega1": bb.omega1, "omega2": bb.omega2},
        )
    if fam == "bang_bang_na":
        if params.beta is not None:
            bb = bang_bang_na(spec, params.beta, n)
        else:
            bb = bang_bang_na_for_duration(spec, t_f, n)
        return ProtocolBundle(
            bb.curve, bb.profile,
            {"t1": bb.t1, "t2": bb.t2, "omega1": bb.omega1, "omega2": bb.omega2},
        )
    if fam == "constant_power":
        curve, mism = constant_power_shoot(spec, t_f, n)
        return ProtocolBundle(curve, ermakov.inverse_engineer(curve), {"mismatch": mism})
    raise ValueError(f"unknown family {fam!r}")
