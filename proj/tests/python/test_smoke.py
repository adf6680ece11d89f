import math

import pytest

import cfcnopa as cf


def reference_point(t=0.0):
    return cf.OperatingPoint(
        cf.NopaParams(beta=0.15), cf.LoopParams(t=t, l=0.01), cf.AnalysisPoint.from_hz(1e6)
    )


def test_vacuum_reference_at_t0():
    op = reference_point(0.0)
    r = cf.cfc_variance(op.nopa, op.loop, op.at)
    assert abs(r.combined_squeezed - 6.0) < 1e-12
    assert r.vacuum_reference == 6.0
    assert r.criterion_bound == 4.0


def test_closed_form_matches_network_oracle():
    op = reference_point(0.5)
    a = cf.cfc_variance(op.nopa, op.loop, op.at)
    b = cf.network_oracle(op.nopa, op.loop, op.at)
    assert a.combined_squeezed == pytest.approx(b.combined_squeezed, rel=1e-10)
    assert a.v_xsum == pytest.approx(b.v_xsum, rel=1e-10)


def test_transfer_matches_langevin():
    op = reference_point()
    a = cf.transfer_coefficients(op.nopa, op.at)
    b = cf.langevin_oracle(op.nopa, op.at)
    for c in (cf.Combination.AMPLITUDE_DIFFERENCE, cf.Combination.PHASE_SUM):
        assert abs(a[c].m - b[c].m) < 1e-10 * abs(a[c].m)


def test_verdicts_and_antisqueezed_past_threshold():
    op = reference_point(0.8)
    r = cf.cfc_variance(op.nopa, op.loop, op.at)
    bare = cf.nopa_only_variances(op.nopa, op.at)
    v = cf.vlf_check(r, bare)
    assert v.squeezed.entangled and v.squeezed.enhanced_vs_bare
    assert v.squeezed.form == "xdiff_ysum"
    # beta = 0.15 is past the feedback-modified threshold at t = 0.8
    assert cf.modified_threshold(op.nopa, op.loop) < 0.15
    assert not r.stable
    assert r.v_xsum is None and v.antisqueezed is None


def test_sweep_and_optimize():
    spec = cf.SweepSpec(cf.SweepAxis.T, 0.0, 1.0, points=101, fixed=reference_point())
    res = cf.run_sweep(spec)
    assert len(res.axis_values) == 101
    assert 0.40 <= res.crossovers[0] <= 0.50
    assert res.optimum.axis_value == pytest.approx(0.8, abs=0.05)
    opt = cf.optimize_joint(reference_point(), free_t=True)
    assert opt.value <= min(v for v in res.cfc_values if v is not None)


def test_errors_are_typed():
    with pytest.raises(cf.InvalidParameter):
        cf.NopaParams(beta=1.5)
    with pytest.raises(cf.Error):
        cf.LoopParams(t=2.0)
    op = reference_point()
    op.nopa.beta = 1.0 / 3.0
    with pytest.raises(cf.ThresholdReached):
        cf.nopa_only_variances(op.nopa, cf.AnalysisPoint.from_hz(0.0))
    assert math.isclose(cf.bare_threshold_beta(cf.NopaParams()), 1 / 3)
