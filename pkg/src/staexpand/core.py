"""Trap description, dimensionless units, time grids, and sampled curves.

All internal math is dimensionless: time in units of 1/omega0, frequencies
in units of omega0, energies in units of hbar*omega0.  SI quantities are
converted at the boundary with :func:`to_dimensionless` /
:func:`from_dimensionless`; the only physics inputs that survive the
scaling are gamma = sqrt(omega0/omega_f) and omega_f/omega0 = 1/gamma^2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np

DEFAULT_GRID_N = 2001

_trapz = np.trapezoid if hasattr(np, "trapezoid") else np.trapz


class GridMismatch(ValueError):
    """Sampled quantities do not live on the same grid."""


class NonRealFrequency(ValueError):
    """omega^2 < 0 where a real omega(t) is required."""


class PowerUndefined(ValueError):
    """Instantaneous power is not a sampled function for this protocol."""


class Infeasible(RuntimeError):
    """No parameter choice satisfies the stated constraints."""


class TrajectoryBlowUp(RuntimeError):
    """A trajectory left the valid region; carries the failure time."""

    def __init__(self, message: str, t: float):
        super().__init__(f"{message} (t = {t:.9g})")
        self.t = t


@dataclass(frozen=True)
class TrapSpec:
    """Expansion endpoints of a harmonic trap plus the mode index.

    omega0 and omega_f are angular frequencies in any consistent unit
    (rad/s for SI work, or omega0 = 1 for dimensionless work); only their
    ratio enters the math.  gamma = sqrt(omega0/omega_f) >= 1 is the
    expansion factor of the mode width.
    """

    omega0: float
    omega_f: float
    n: int = 0
    hbar: float = 1.0

    def __post_init__(self):
        if not (self.omega0 > 0.0 and self.omega_f > 0.0):
            raise ValueError("omega0 and omega_f must be positive")
        if self.omega_f > self.omega0:
            raise ValueError("expansion requires omega_f <= omega0")
        if int(self.n) != self.n or self.n < 0:
            raise ValueError("mode index n must be a non-negative integer")

    @property
    def gamma(self) -> float:
        return math.sqrt(self.omega0 / self.omega_f)

    @property
    def omega_f_rel(self) -> float:
        """Final frequency in units of omega0 (equals 1/gamma^2)."""
        return self.omega_f / self.omega0

    @classmethod
    def from_gamma(cls, gamma: float, n: int = 0, hbar: float = 1.0) -> "TrapSpec":
        if gamma < 1.0:
            raise ValueError("gamma = sqrt(omega0/omega_f) must be >= 1")
        return cls(omega0=1.0, omega_f=1.0 / gamma**2, n=n, hbar=hbar)


def to_dimensionless(spec: TrapSpec, t: float) -> float:
    """Time in seconds -> tau = omega0 * t."""
    return spec.omega0 * t


def from_dimensionless(spec: TrapSpec, tau: float) -> float:
    """tau = omega0 * t -> time in seconds."""
    return tau / spec.omega0


@dataclass(frozen=True)
class TimeGrid:
    """Sample times on [0, t_f], split into uniform pieces.

    ``pieces`` holds inclusive row ranges (lo, hi).  A protocol with
    interior switching times duplicates the boundary row, so one-sided
    limits of discontinuous quantities (omega^2, bddot) can be stored per
    side; within each piece the nodes are strictly increasing and
    uniformly spaced with an even interval count (Simpson-compatible).
    """

    nodes: np.ndarray
    pieces: tuple[tuple[int, int], ...]

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        if nodes.ndim != 1 or len(nodes) < 3:
            raise ValueError("grid needs at least 3 nodes")
        if nodes[0] != 0.0:
            raise ValueError("grid must start at t = 0")
        if not self.pieces or self.pieces[0][0] != 0 or self.pieces[-1][1] != len(nodes) - 1:
            raise ValueError("pieces must cover all rows")
        prev_hi = None
        for lo, hi in self.pieces:
            if prev_hi is not None:
                if lo != prev_hi + 1 or nodes[lo] != nodes[prev_hi]:
                    raise ValueError("pieces must share boundary times on adjacent rows")
            if hi - lo < 2:
                raise ValueError("each piece needs at least 3 nodes")
            if np.any(np.diff(nodes[lo : hi + 1]) <= 0.0):
                raise ValueError("nodes must increase strictly within a piece")
            prev_hi = hi

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def t_f(self) -> float:
        return float(self.nodes[-1])

    @property
    def n_pieces(self) -> int:
        return len(self.pieces)

    def piece_nodes(self, k: int) -> np.ndarray:
        lo, hi = self.pieces[k]
        return self.nodes[lo : hi + 1]

    def same_as(self, other: "TimeGrid") -> bool:
        return (
            self.pieces == other.pieces
            and len(self.nodes) == len(other.nodes)
            and bool(np.array_equal(self.nodes, other.nodes))
        )

    @classmethod
    def uniform(cls, t_f: float, n: int = DEFAULT_GRID_N) -> "TimeGrid":
        if t_f <= 0.0:
            raise ValueError("t_f must be positive")
        if n < 3 or n % 2 == 0:
            raise ValueError("node count must be odd and >= 3")
        return cls(np.linspace(0.0, float(t_f), n), ((0, n - 1),))

    @classmethod
    def piecewise(
        cls,
        edges: Sequence[float],
        n: int = DEFAULT_GRID_N,
        min_intervals: int = 32,
    ) -> "TimeGrid":
        """Grid over consecutive segments [edges[k], edges[k+1]].

        Intervals are allocated proportionally to segment length, forced
        even and at least ``min_intervals`` per segment; interior edges are
        duplicated (end row of one piece, start row of the next).
        """
        edges = [float(e) for e in edges]
        if len(edges) < 2 or edges[0] != 0.0:
            raise ValueError("edges must start at 0")
        spans = np.diff(edges)
        if np.any(spans <= 0.0):
            raise ValueError("edges must increase strictly")
        total = edges[-1]
        parts: list[np.ndarray] = []
        pieces: list[tuple[int, int]] = []
        lo = 0
        for e0, e1 in zip(edges[:-1], edges[1:]):
            m = int(round((n - 1) * (e1 - e0) / total))
            m = max(min_intervals, m)
            if m % 2:
                m += 1
            parts.append(np.linspace(e0, e1, m + 1))
            pieces.append((lo, lo + m))
            lo += m + 1
        return cls(np.concatenate(parts), tuple(pieces))


class PieceFns(NamedTuple):
    """Closed-form b(t) and derivatives on one grid piece (bdddot optional)."""

    b: Callable
    bdot: Callable
    bddot: Callable
    bdddot: Callable | None = None


@dataclass
class ScalingCurve:
    """A scaling function b with derivatives sampled on a grid.

    b > 0 everywhere (it is a mode width; a zero crossing is a hard
    error).  ``b0_plus_dot`` / ``bf_minus_dot`` are the one-sided
    derivatives at 0+ and t_f-; they equal the bdot endpoints for smooth
    protocols and carry the pre/post-impulse bookkeeping for impulse
    protocols.  ``fns`` optionally carries per-piece closed forms.
    """

    grid: TimeGrid
    b: np.ndarray
    bdot: np.ndarray
    bddot: np.ndarray | None = None
    bdddot: np.ndarray | None = None
    b0_plus_dot: float | None = None
    bf_minus_dot: float | None = None
    closed_form_tag: str = ""
    fns: tuple[PieceFns, ...] | None = None

    def __post_init__(self):
        self.b = np.asarray(self.b, dtype=float)
        self.bdot = np.asarray(self.bdot, dtype=float)
        for name in ("bddot", "bdddot"):
            v = getattr(self, name)
            if v is not None:
                setattr(self, name, np.asarray(v, dtype=float))
        n = len(self.grid)
        for name in ("b", "bdot", "bddot", "bdddot"):
            v = getattr(self, name)
            if v is not None and len(v) != n:
                raise GridMismatch(f"{name} has {len(v)} samples for {n} nodes")
        if np.any(self.b <= 0.0):
            raise ValueError("scaling function must stay positive")
        if self.b0_plus_dot is None:
            self.b0_plus_dot = float(self.bdot[0])
        if self.bf_minus_dot is None:
            self.bf_minus_dot = float(self.bdot[-1])
        if self.fns is not None and len(self.fns) != self.grid.n_pieces:
            raise ValueError("need one PieceFns per grid piece")


@dataclass
class FrequencyProfile:
    """Piecewise omega^2(t) in units of omega0^2, plus Dirac impulses.

    ``impulses`` are (time, strength) pairs contributing strength *
    delta(t - time) to omega^2(t); strengths are in units of omega0.
    omega^2 samples may be negative (imaginary frequency); that is
    legitimate for total-energy work and refused by the non-adiabatic
    machinery.
    """

    grid: TimeGrid
    omega2: np.ndarray
    impulses: tuple[tuple[float, float], ...] = ()
    omega2_fns: tuple[Callable | None, ...] | None = None
    domega2: np.ndarray | None = None
    _splines: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.omega2 = np.asarray(self.omega2, dtype=float)
        if len(self.omega2) != len(self.grid):
            raise GridMismatch("omega2 sample count does not match the grid")
        if self.domega2 is not None:
            self.domega2 = np.asarray(self.domega2, dtype=float)
            if len(self.domega2) != len(self.grid):
                raise GridMismatch("domega2 sample count does not match the grid")
        self.impulses = tuple((float(t), float(s)) for t, s in self.impulses)

    @property
    def has_imaginary(self) -> bool:
        return bool(np.min(self.omega2) < 0.0)

    def omega(self, tol: float = 1e-12) -> np.ndarray:
        """sqrt(omega^2), clamping tiny negative round-off to zero.

        Raises NonRealFrequency when min omega^2 < -tol.
        """
        lo = float(np.min(self.omega2))
        if lo < -tol:
            raise NonRealFrequency(
                f"omega^2 reaches {lo:.6g} < 0; omega(t) is not real"
            )
        return np.sqrt(np.clip(self.omega2, 0.0, None))

    def piece_callable(self, k: int) -> Callable:
        """omega^2(t) on piece k: the closed form if present, else a spline."""
        if self.omega2_fns is not None and self.omega2_fns[k] is not None:
            return self.omega2_fns[k]
        if k not in self._splines:
            from scipy.interpolate import CubicSpline

            lo, hi = self.grid.pieces[k]
            self._splines[k] = CubicSpline(
                self.grid.nodes[lo : hi + 1], self.omega2[lo : hi + 1]
            )
        return self._splines[k]
