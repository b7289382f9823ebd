import math

import _qtomo as qt


def test_headline_confidence_level():
    design = qt.pauli_design(1, 0.9, 2500)
    report = qt.confidence_level(design, "trace", 0.07, 7500)
    assert report.cl >= 0.99
    assert abs(report.cl - 0.99196) <= 1e-4
    assert abs(report.cl - qt.closed_form_cl(1, 0.9, 0.07, 7500)) <= 1e-12


def test_sample_and_estimate_roundtrip():
    design = qt.pauli_design(1, 1.0, 20000)
    assert design.ic and design.total == 60000
    rho = qt.preset_state("zero", 1)
    freqs = qt.sample(design, rho, 7)
    assert qt.sample(design, rho, 7).frequencies == freqs.frequencies

    rec = qt.estimate(design, freqs, with_cls=True)
    assert qt.trace_distance(rec["rho_enm"], rho) <= 0.02
    assert rec["cls"]["converged"]
    # ENM output is a density matrix: trace one, PSD within tolerance.
    tr = sum(rec["rho_enm"][i][i] for i in range(2))
    assert abs(tr.real - 1.0) <= 1e-9


def test_enm_projection_of_unphysical_matrix():
    raw = [[1.5, 0.0], [0.0, -0.5]]
    proj = qt.enm_project(raw)
    assert abs(proj[0][0] - 1.0) <= 1e-10
    assert abs(proj[1][1]) <= 1e-10


def test_planner_inverts_closed_form():
    n = qt.required_samples(1, 0.9, 0.07, "trace", 0.99)
    assert qt.closed_form_cl(1, 0.9, 0.07, n) >= 0.99
    assert qt.closed_form_cl(1, 0.9, 0.07, n - 1) < 0.99


def test_loss_functions():
    zero = qt.preset_state("zero", 1)
    mixed = qt.preset_state("mixed", 1)
    assert abs(qt.trace_distance(zero, mixed) - 0.5) <= 1e-12
    assert abs(qt.hs_distance(zero, zero)) <= 1e-12
    assert 0.0 <= qt.infidelity(zero, mixed) <= 1.0


def test_non_ic_design_raises():
    design = qt.pauli_design(1, 0.0, 10)
    assert not design.ic
    freqs = qt.sample(design, qt.preset_state("mixed", 1), 1)
    try:
        qt.estimate(design, freqs)
    except qt.NotInformationallyComplete:
        pass
    else:
        raise AssertionError("expected NotInformationallyComplete")
