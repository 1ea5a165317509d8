import numpy as np
import pytest

from staexpand import TimeGrid, TrapSpec, ermakov, protocols
from staexpand.core import (
    FrequencyProfile,
    GridMismatch,
    NonRealFrequency,
    ScalingCurve,
    TrajectoryBlowUp,
)


@pytest.fixture
def spec():
    return TrapSpec.from_gamma(10.0)


def static_pair(n=201, t_f=2.0):
    grid = TimeGrid.uniform(t_f, n)
    curve = ScalingCurve(grid, np.ones(n), np.zeros(n), np.zeros(n))
    profile = FrequencyProfile(grid, np.ones(n))
    return curve, profile


class TestResidual:
    def test_static_equilibrium(self):
        curve, profile = static_pair()
        assert ermakov.ermakov_residual(curve, profile) == 0.0

    def test_quintic_inverse_engineered(self, spec):
        c = protocols.quintic(spec, 3.0)
        assert ermakov.ermakov_residual(c, ermakov.inverse_engineer(c)) < 1e-10

    def test_bang_bang_closed_forms(self, spec):
        bb = protocols.bang_bang(spec, 2.0, 3.0)
        assert ermakov.ermakov_residual(bb.curve, bb.profile) < 1e-9

    def test_grid_mismatch(self, spec):
        c = protocols.quintic(spec, 3.0)
        other = ermakov.inverse_engineer(protocols.quintic(spec, 3.0, n=1001))
        with pytest.raises(GridMismatch):
            ermakov.ermakov_residual(c, other)


class TestInverseEngineer:
    def test_static(self):
        curve, _ = static_pair()
        p = ermakov.inverse_engineer(curve)
        assert np.max(np.abs(p.omega2 - 1.0)) == 0.0

    def test_quintic_endpoint_frequencies(self, spec):
        p = ermakov.inverse_engineer(protocols.quintic(spec, 25.0))
        assert float(p.omega2[0]) == pytest.approx(1.0, abs=1e-12)
        assert float(p.omega2[-1]) == pytest.approx(1e-4, rel=1e-10)

    def test_fast_quintic_has_imaginary_band(self, spec):
        p = ermakov.inverse_engineer(protocols.quintic(spec, 1.0))
        assert p.has_imaginary
        assert float(np.min(p.omega2)) < 0.0

    def test_finite_difference_fallback(self, spec):
        # samples-only curve: central differences give omega^2 to O(h^2)
        c = protocols.quintic(spec, 25.0)
        bare = ScalingCurve(c.grid, c.b, c.bdot)  # no bddot, no fns
        p_fd = ermakov.inverse_engineer(bare)
        p = ermakov.inverse_engineer(c)
        assert np.max(np.abs(p_fd.omega2 - p.omega2)) < 1e-3


class TestForwardSolve:
    def test_equilibrium(self):
        _, profile = static_pair()
        c = ermakov.forward_solve(profile)
        assert np.max(np.abs(c.b - 1.0)) < 1e-12

    def test_round_trip_quintic(self, spec):
        c = protocols.quintic(spec, 25.0)
        c2 = ermakov.forward_solve(ermakov.inverse_engineer(c))
        assert np.max(np.abs(c2.b - c.b)) < 1e-6

    def test_impulse_protocol_reaches_target(self, spec):
        curve, profile = protocols.dirac_impulse(spec, 1.0)
        solved = ermakov.forward_solve(profile)
        b_f, bdot_f = ermakov.post_protocol_state(solved, profile)
        assert b_f == pytest.approx(10.0, abs=1e-6)
        assert abs(bdot_f) < 1e-6

    def test_impulse_jump_rule(self, spec):
        # bdot jumps by exactly -D b across a kick
        curve, profile = protocols.dirac_impulse(spec, 1.0)
        solved = ermakov.forward_solve(profile)
        d0 = profile.impulses[0][1]
        assert solved.b0_plus_dot == pytest.approx(-d0 * float(solved.b[0]), rel=1e-12)
        df = profile.impulses[1][1]
        _, bdot_after = ermakov.post_protocol_state(solved, profile)
        assert bdot_after == pytest.approx(
            solved.bf_minus_dot - df * float(solved.b[-1]), abs=1e-14
        )

    def test_collapse_aborts_with_time(self):
        # a fast fall on a coarse grid steps straight through the 1/b^3 barrier
        grid = TimeGrid.uniform(1.0, 11)
        profile = FrequencyProfile(grid, np.zeros(11))
        with pytest.raises(TrajectoryBlowUp):
            ermakov.forward_solve(profile, b0=1.0, bdot0=-20.0)

    def test_bang_bang_profile_round_trip(self, spec):
        bb = protocols.bang_bang(spec, 1.0, 1.0)
        solved = ermakov.forward_solve(bb.profile)
        assert np.max(np.abs(solved.b - bb.curve.b)) < 1e-6


class TestExcitationEnergy:
    def test_static_trap_zero(self):
        curve, profile = static_pair()
        e_ex, e_na = ermakov.excitation_energy(curve, profile)
        assert np.max(np.abs(e_ex)) == 0.0
        assert np.max(np.abs(e_na)) == 0.0

    def test_linear_bottom_constant(self, spec):
        # potential part vanishes on the bottom track: E_ex = ((gamma-1)/tf)^2/2
        c, p = protocols.linear_bottom(spec, 1.0)
        e_ex, e_na = ermakov.excitation_energy(c, p)
        assert np.max(np.abs(e_ex - 40.5)) < 1e-10
        assert float(np.mean(e_na)) == pytest.approx(20.25, rel=1e-12)

    def test_rejects_imaginary_band(self, spec):
        c = protocols.quintic(spec, 1.0)
        with pytest.raises(NonRealFrequency):
            ermakov.excitation_energy(c, ermakov.inverse_engineer(c))

    def test_nonnegative_for_real_frequency(self, spec):
        c = protocols.quintic(spec, 50.0)
        e_ex, _ = ermakov.excitation_energy(c, ermakov.inverse_engineer(c))
        assert float(np.min(e_ex)) >= 0.0


class TestClassicalAnalogy:
    def test_potential_minimum_is_omega(self, spec):
        # U at b = 1/sqrt(W) equals W
        c, p = protocols.linear_bottom(spec, 2.0)
        state = ermakov.classical_analogy(c, p)
        omega = p.omega()
        assert np.max(np.abs(state.U - omega)) < 1e-12  # bottom track sits at the minimum

    def test_energy_decomposition(self, spec):
        c = protocols.quintic(spec, 50.0)
        p = ermakov.inverse_engineer(c)
        state = ermakov.classical_analogy(c, p)
        assert np.allclose(state.H_cl, 0.5 * c.bdot**2 + state.U)
        assert float(np.min(state.E_ex)) >= 0.0
