"""Cross-checks of the verification harness itself, controls included.

A verifier that cannot fail is worthless, so half of this file feeds it
deliberately broken inputs (halved curves, loosened quadrature) and
demands a red report.
"""

import math

import pytest

from enstrophy_bounds import (
    ForcingParams,
    assemble_critical,
    assemble_full,
    assemble_scaling,
    assemble_subcritical,
    containment_check,
    halved_curve,
    oracle_suite,
    taylor_wavenumber,
)
from enstrophy_bounds.verify import all_pass


def _with(params, **over):
    raw = params.to_raw()
    raw.update(over)
    return ForcingParams.from_mapping(raw)


# ----------------------------------------------------------- containment


def test_containment_critical(fig2):
    report = containment_check(assemble_critical(fig2, samples=256), fig2,
                               n_points=200)
    assert {row["segment"] for row in report} == {"phi1", "phi2", "phi3"}
    assert all_pass(report)
    for row in report:
        assert row["check"] == "containment"
        assert row["samples"] > 0
        assert row["worst_margin"] > -1e-9


def test_containment_subcritical(fig3):
    report = containment_check(assemble_subcritical(fig3, samples=256), fig3,
                               n_points=200)
    assert all_pass(report)


def test_containment_full_high_forcing(fig2):
    strong = _with(fig2, f_norm=100.0)
    report = containment_check(assemble_full(strong, samples=256), strong,
                               n_points=200)
    assert {row["segment"] for row in report} == {"phi1", "phi2"}
    assert all_pass(report)


def test_containment_rejects_unknown_model(fig2):
    bundle = assemble_scaling(fig2, samples=64)
    with pytest.raises(ValueError):
        containment_check(bundle, fig2)


# ------------------------------------------------- halved-curve control


def test_halved_curve_shifts_only_phi_segments(fig2):
    bundle = assemble_critical(fig2, samples=64)
    halved = halved_curve(bundle)
    for orig, cut in zip(bundle.segments, halved.segments):
        assert cut.tag == orig.tag
        shift = float(orig.ln_E[0] - cut.ln_E[0])
        if orig.tag.startswith("phi"):
            assert shift == pytest.approx(math.log(2.0), abs=1e-12)
        else:
            assert shift == 0.0


def test_halved_critical_curve_flags(fig2):
    report = containment_check(
        halved_curve(assemble_critical(fig2, samples=256)), fig2,
        n_points=200)
    assert not all_pass(report)
    by_tag = {row["segment"]: row for row in report}
    # the rise branch carries the whole deficit at critical forcing; the
    # descent deficits sit below the conditioning gauge and stay quiet
    assert not by_tag["phi1"]["pass"]
    # orders of magnitude beyond the tolerance, not a borderline trip
    assert by_tag["phi1"]["worst_margin"] < -1e-3


def test_halved_subcritical_curve_flags(fig3):
    report = containment_check(
        halved_curve(assemble_subcritical(fig3, samples=256)), fig3,
        n_points=200)
    by_tag = {row["segment"]: row for row in report}
    assert not by_tag["phi1"]["pass"]
    assert not by_tag["phi2"]["pass"]
    assert by_tag["phi1"]["worst_margin"] < -1e-3


# ----------------------------------------------------------- oracle side


def test_oracle_suite_critical(fig2):
    report = oracle_suite(fig2)
    assert all_pass(report)
    checks = {row["check"] for row in report}
    assert checks == {"series_vs_quadrature", "closed_form_vs_rk4",
                      "root_vs_gridscan"}
    scans = {row["segment"] for row in report
             if row["check"] == "root_vs_gridscan"}
    assert scans == {"e_max", "e_min", "e2"}


def test_oracle_suite_subcritical(fig3):
    report = oracle_suite(fig3)
    assert all_pass(report)
    scans = {row["segment"] for row in report
             if row["check"] == "root_vs_gridscan"}
    assert scans == {"e_bar", "e_under", "e2"}


def test_oracle_suite_catches_loose_series(fig2):
    # cripple the series tolerance: the quadrature comparison and the
    # RK4 comparison must both notice, independently
    report = oracle_suite(fig2, series_rel_tol=1e-2)
    failing = {row["check"] for row in report if not row["pass"]}
    assert "series_vs_quadrature" in failing
    assert "closed_form_vs_rk4" in failing


def test_oracle_suite_degenerate_forcing(fig2):
    dead = _with(fig2, f_norm=0.0)
    report = oracle_suite(dead)
    assert all_pass(report)
    assert {row["check"] for row in report} == {"series_vs_quadrature"}


# ------------------------------------------------------ taylor wavenumber


def test_taylor_wavenumber_values():
    assert taylor_wavenumber(1.0, 1.0) == pytest.approx(1.0, rel=1e-15)
    assert taylor_wavenumber(4.0, 16.0) == pytest.approx(2.0, rel=1e-15)
    with pytest.raises(ZeroDivisionError):
        taylor_wavenumber(0.0, 1.0)
    with pytest.raises(ValueError):
        taylor_wavenumber(-1.0, 1.0)
    with pytest.raises(ValueError):
        taylor_wavenumber(1.0, -1.0)
