import numpy as np
import pytest

from staexpand import TrapSpec, energies, ermakov, optimize, protocols
from staexpand.core import Infeasible


@pytest.fixture
def spec():
    return TrapSpec.from_gamma(10.0)


class TestOptimizeCaps:
    def test_result_feasible_and_above_bound(self, spec):
        res = optimize.optimize_caps(spec, 300.0, n_grid=1001)
        assert res.feasible
        bound = energies.na_lower_bound(spec, 300.0)
        assert res.objective > bound          # the bound is approached, not reached
        assert res.objective < 2.0 * bound    # but not by much at slow protocols
        assert res.objective <= res.baseline

    def test_returned_caps_reproduce_objective(self, spec):
        res = optimize.optimize_caps(spec, 300.0, n_grid=1001)
        curve = protocols.hybrid_caps(spec, 300.0, *res.params, n=1001)
        profile = ermakov.inverse_engineer(curve)
        assert float(np.min(profile.omega2)) >= -1e-12
        _, avg, _ = energies.nonadiabatic_energy(curve, profile, spec)
        assert avg == pytest.approx(res.objective, rel=1e-9)

    def test_infeasible_below_threshold(self, spec):
        with pytest.raises(Infeasible):
            optimize.optimize_caps(spec, 50.0, n_grid=501)

    def test_objective_non_increasing_in_duration(self, spec):
        # allow a whisker of optimizer noise between neighbouring basins
        taus = [250.0, 350.0, 500.0]
        vals = [optimize.optimize_caps(spec, t, n_grid=1001).objective for t in taus]
        assert vals[0] * 1.02 > vals[1]
        assert vals[1] * 1.02 > vals[2]

    def test_deterministic(self, spec):
        a = optimize.optimize_caps(spec, 300.0, n_grid=501)
        b = optimize.optimize_caps(spec, 300.0, n_grid=501)
        assert a.params == b.params and a.objective == b.objective

    def test_excited_mode_rejected(self):
        with pytest.raises(ValueError):
            optimize.optimize_caps(TrapSpec.from_gamma(10.0, n=1), 300.0)


@pytest.fixture(scope="module")
def fig4():
    import math

    spec = TrapSpec(2.0 * math.pi * 2500.0, 2.0 * math.pi * 25.0)
    t_f = spec.omega0 * 8e-3
    return spec, t_f


class TestOptimizeSepticPower:

    def test_beats_quintic_and_respects_floor(self, fig4):
        spec, t_f = fig4
        quintic = protocols.quintic(spec, t_f, 4001)
        q_peak = energies.power(quintic, ermakov.inverse_engineer(quintic), spec).peak_rel
        res = optimize.optimize_septic_power(spec, t_f)
        assert res.objective <= q_peak
        assert res.objective >= 1.0
        assert res.objective <= res.baseline

    def test_reference_coefficients_also_beat_quintic(self, fig4):
        spec, t_f = fig4
        quintic = protocols.quintic(spec, t_f, 4001)
        q_peak = energies.power(quintic, ermakov.inverse_engineer(quintic), spec).peak_rel
        ref = protocols.septic(spec, t_f, 78.5088, -459.7638, 4001)
        ref_peak = energies.power(ref, ermakov.inverse_engineer(ref), spec).peak_rel
        assert ref_peak <= q_peak

    def test_lands_near_reference_basin(self, fig4):
        # not required, but the search from (0,0) does find the published basin
        spec, t_f = fig4
        res = optimize.optimize_septic_power(spec, t_f)
        ref = protocols.septic(spec, t_f, 78.5088, -459.7638, 4001)
        ref_peak = energies.power(ref, ermakov.inverse_engineer(ref), spec).peak_rel
        assert res.objective == pytest.approx(ref_peak, rel=1e-3)

    def test_deterministic(self, fig4):
        spec, t_f = fig4
        a = optimize.optimize_septic_power(spec, t_f, n_grid=801)
        b = optimize.optimize_septic_power(spec, t_f, n_grid=801)
        assert a.params == b.params and a.objective == b.objective
