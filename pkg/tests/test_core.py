import math

import numpy as np
import pytest

from staexpand import TimeGrid, TrapSpec, from_dimensionless, to_dimensionless
from staexpand.core import GridMismatch, ScalingCurve


def test_trap_spec_gamma():
    spec = TrapSpec(omega0=2.0 * math.pi * 2500.0, omega_f=2.0 * math.pi * 25.0)
    assert spec.gamma == pytest.approx(10.0, rel=1e-14)
    assert spec.omega_f_rel == pytest.approx(0.01, rel=1e-14)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(omega0=-1.0, omega_f=1.0),
        dict(omega0=1.0, omega_f=0.0),
        dict(omega0=1.0, omega_f=2.0),  # compression, not expansion
        dict(omega0=1.0, omega_f=0.5, n=-1),
    ],
)
def test_trap_spec_rejects(kwargs):
    with pytest.raises(ValueError):
        TrapSpec(**kwargs)


def test_from_gamma_reproduces_gamma():
    spec = TrapSpec.from_gamma(10.0)
    assert spec.gamma == pytest.approx(10.0, rel=1e-15)


def test_dimensionless_conversion_value():
    # omega0 = 2 pi 2500 Hz, t = 1 ms  ->  tau = 5 pi
    spec = TrapSpec(2.0 * math.pi * 2500.0, 2.0 * math.pi * 25.0)
    assert to_dimensionless(spec, 1e-3) == pytest.approx(5.0 * math.pi, rel=1e-14)
    assert to_dimensionless(spec, 0.0) == 0.0


@pytest.mark.parametrize("t", [1e-6, 3.7e-4, 0.25, 12.0])
def test_dimensionless_round_trip(t):
    spec = TrapSpec(2.0 * math.pi * 2500.0, 2.0 * math.pi * 25.0)
    back = from_dimensionless(spec, to_dimensionless(spec, t))
    assert back == pytest.approx(t, rel=1e-14)


def test_uniform_grid_basics():
    g = TimeGrid.uniform(2.5, 101)
    assert len(g) == 101
    assert g.nodes[0] == 0.0
    assert g.t_f == 2.5
    assert g.pieces == ((0, 100),)
    with pytest.raises(ValueError):
        TimeGrid.uniform(2.5, 100)  # even node count
    with pytest.raises(ValueError):
        TimeGrid.uniform(-1.0, 101)


def test_piecewise_grid_duplicates_joints():
    g = TimeGrid.piecewise([0.0, 0.3, 1.0], n=101, min_intervals=8)
    (lo0, hi0), (lo1, hi1) = g.pieces
    assert g.nodes[hi0] == g.nodes[lo1] == 0.3
    assert lo1 == hi0 + 1
    # each piece uniform with even interval count
    for lo, hi in g.pieces:
        d = np.diff(g.nodes[lo : hi + 1])
        assert (hi - lo) % 2 == 0
        assert np.allclose(d, d[0])


def test_scaling_curve_rejects_nonpositive_b():
    g = TimeGrid.uniform(1.0, 5)
    with pytest.raises(ValueError):
        ScalingCurve(g, np.array([1.0, 0.5, 0.0, 0.5, 1.0]), np.zeros(5))


def test_scaling_curve_shape_check():
    g = TimeGrid.uniform(1.0, 5)
    with pytest.raises(GridMismatch):
        ScalingCurve(g, np.ones(4), np.zeros(4))
