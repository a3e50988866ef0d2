from gf1d.verify import TOLERANCES, run_suite, sample_potentials, sample_wavenumbers

import numpy as np


def test_suite_passes_default_seed():
    reports = run_suite()
    assert reports
    assert all(r.status == "pass" for r in reports)


def test_suite_is_deterministic():
    a = [r.line() for r in run_suite(seed=3, n_potentials=3, n_wavenumbers=2)]
    b = [r.line() for r in run_suite(seed=3, n_potentials=3, n_wavenumbers=2)]
    assert a == b


def test_every_check_has_a_registered_tolerance():
    for r in run_suite(n_potentials=2, n_wavenumbers=2):
        assert r.tolerance == TOLERANCES[r.check_id]
        assert r.anchor


def test_corruption_is_detected():
    reports = run_suite(n_potentials=2, n_wavenumbers=2, corrupt=True)
    failing = {r.check_id for r in reports if r.status == "fail"}
    assert "sl3-commutation" in failing


def test_report_serialization():
    r = run_suite(n_potentials=2, n_wavenumbers=2)[0]
    d = r.to_dict()
    assert set(d) == {"check_id", "anchor", "residual", "tolerance", "status"}
    assert isinstance(r.line(), str)


def test_sample_distributions():
    rng = np.random.default_rng(11)
    specs = sample_potentials(rng, 20)
    for spec in specs:
        assert 1 <= len(spec.segments) <= 5
        for seg in spec.segments:
            assert 0.1 <= seg.x_end - seg.x_start <= 1.0
            assert abs(seg.profile.c) <= 2.0
    ks = sample_wavenumbers(rng, 20)
    for k in ks:
        assert 0.3 <= abs(k) <= 3.0
        assert k.imag >= 0.0
