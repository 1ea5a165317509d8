import pytest

from staexpand import verify


def test_registry_names_unique():
    names = [name for name, _ in verify.CHECKS]
    assert len(names) == len(set(names)) == 13


def test_virial_check_passes_on_default_grid():
    assert verify.check_virial_equipartition(501).passed


def test_virial_check_catches_injected_sign_error(monkeypatch):
    # mutation sanity: flip the sign of the potential average and the
    # equipartition check must fail
    real = verify.energies.averages

    def broken(trace, curve, spec, profile=None):
        trace = real(trace, curve, spec, profile)
        trace.avg_V = -trace.avg_V
        return trace

    monkeypatch.setattr(verify.energies, "averages", broken)
    assert not verify.check_virial_equipartition(301).passed


def test_quadrature_identities_degrade_gracefully_on_coarse_grids():
    # 51 nodes: the chain still holds to ~1e-5 even though 1e-6 fails,
    # and the order-4 solver convergence is untouched by grid choice
    from staexpand import TrapSpec, energies, protocols

    spec = TrapSpec.from_gamma(10.0)
    curve, profile = protocols.dirac_impulse(spec, 1.0, 51)
    tr = energies.averages(
        energies.instantaneous(curve, profile, spec), curve, spec, profile
    )
    assert tr.avg_E == pytest.approx(tr.avg_E2, rel=1e-4)


def test_threshold_detector_brackets_feasibility():
    from staexpand import TrapSpec, optimize
    from staexpand.core import Infeasible

    spec = TrapSpec.from_gamma(10.0)
    thr = verify.na_feasibility_threshold(spec, n_grid=301)
    with pytest.raises(Infeasible):
        optimize.optimize_caps(spec, thr * 0.9, n_grid=301)
    optimize.optimize_caps(spec, thr * 1.05, n_grid=301)  # should not raise
