"""Nose, funnels, and region classification for the unconditional model."""

import math

import pytest

from enstrophy_bounds import (
    FullNseGeometry,
    ForcingParams,
    OutsideDomain,
    RegimeViolation,
    assemble_full,
    classify_full,
    eta_threshold,
    geometry,
    nose_apex,
    parabola_E,
    phi_of_e,
    psi_of_E,
    solve_e2,
)
from enstrophy_bounds.full_nse import (
    e2_lower_bound,
    phi_slope,
    upper_nose_branch,
)


def _with(params, **over):
    raw = params.to_raw()
    raw.update(over)
    return ForcingParams.from_mapping(raw)


# ---------------------------------------------------------------- nose


def test_nose_apex_closed_form(fig2):
    # c1 = 4, G = 8 makes the apex land on round numbers
    p = _with(fig2, f_norm=8.0, c1=4.0)
    e1, E1 = nose_apex(p)
    assert E1 == pytest.approx(4.0, rel=1e-14)
    assert e1 == pytest.approx(1.0 / 24.0, rel=1e-14)
    # the apex sits on the nose itself
    assert psi_of_E(E1, p) == pytest.approx(e1, rel=1e-13)


def test_psi_unimodal(fig2):
    e1, E1 = nose_apex(fig2)
    assert psi_of_E(0.0, fig2) == 0.0
    assert psi_of_E(E1, fig2) == pytest.approx(e1, rel=1e-13)
    # rises up to the apex, falls past it
    for h in (1e-2, 1e-1, 0.5):
        assert psi_of_E(E1 * (1.0 - h), fig2) < e1
        assert psi_of_E(E1 * (1.0 + h), fig2) < e1
    grid = [E1 * 10.0 ** k for k in range(1, 6)]
    vals = [psi_of_E(E, fig2) for E in grid]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_psi_rejects_negative(fig2):
    with pytest.raises(ValueError):
        psi_of_E(-1.0, fig2)


def test_upper_nose_branch_inverts_psi(fig2):
    e1, E1 = nose_apex(fig2)
    e = 0.5 * e1
    E_up = upper_nose_branch(e, fig2)
    assert E_up > E1
    assert psi_of_E(E_up, fig2) == pytest.approx(e, rel=1e-10)
    with pytest.raises(OutsideDomain):
        upper_nose_branch(2.0 * e1, fig2)


# -------------------------------------------------------------- funnels


def test_funnel_passes_through_anchor(fig2):
    geo = geometry(fig2)
    assert phi_of_e(geo.e0, geo.e0, geo.E0, geo.eta, fig2) \
        == pytest.approx(geo.E0, rel=1e-12)
    assert phi_of_e(geo.e1, geo.e1, geo.E1, geo.eta, fig2) \
        == pytest.approx(geo.E1, rel=1e-12)


def test_wall_asymptote_closed_form(fig2):
    # G = 1, c1 = 1, eta = 2: e_star^(5/2) = e0^(5/2) (1 - 5/(16 c1 G^4))
    # collapses to e_star = (11/16)^(2/5) with e0 = 1
    p = _with(fig2, f_norm=1.0)
    geo = geometry(p)
    assert geo.e0 == pytest.approx(1.0, rel=1e-14)
    assert geo.e_star == pytest.approx((11.0 / 16.0) ** 0.4, rel=1e-13)


def test_funnel_slope_matches_finite_difference(fig2):
    geo = geometry(fig2)
    for frac in (0.25, 0.5, 0.75):
        e = geo.e1 * (geo.e2 / geo.e1) ** frac
        E = phi_of_e(e, geo.e1, geo.E1, geo.eta, fig2)
        h = 1e-6 * e
        fd = (phi_of_e(e + h, geo.e1, geo.E1, geo.eta, fig2)
              - phi_of_e(e - h, geo.e1, geo.E1, geo.eta, fig2)) / (2.0 * h)
        assert phi_slope(e, E, geo.eta, fig2) == pytest.approx(fd, rel=1e-6)


def test_funnel_raises_left_of_asymptote(fig2):
    geo = geometry(fig2)
    with pytest.raises(OutsideDomain):
        phi_of_e(0.5 * geo.e_star, geo.e0, geo.E0, geo.eta, fig2)
    with pytest.raises(OutsideDomain):
        phi_of_e(0.0, geo.e0, geo.E0, geo.eta, fig2)


# ------------------------------------------------------------- e2 root


def test_e2_reenters_parabola(fig2):
    geo = geometry(fig2)
    assert geo.e2 > geo.e1
    E_at_e2 = phi_of_e(geo.e2, geo.e1, geo.E1, geo.eta, fig2)
    assert E_at_e2 == pytest.approx(parabola_E(geo.e2, fig2, geo.eta),
                                    rel=1e-10)
    # strictly above the parabola in between
    mid = math.sqrt(geo.e1 * geo.e2)
    assert phi_of_e(mid, geo.e1, geo.E1, geo.eta, fig2) \
        > parabola_E(mid, fig2, geo.eta)


def test_e2_floor_never_exceeds_root(fig2):
    for eta in (1.5, 1.8, 2.0, 2.2):
        assert e2_lower_bound(fig2, eta) <= solve_e2(eta, fig2)


def test_e2_unreachable_when_parabola_clears_apex(fig2):
    # past eta = sqrt(6) the parabola already tops the apex, so the funnel
    # never re-enters it; the closed-form eta gate alone does not catch this
    from enstrophy_bounds import NoBracket

    eta = 2.5
    assert eta < eta_threshold(fig2.c1)
    geo_par = eta * fig2.nu * fig2.lam ** 0.75 * fig2.grashof
    e1, E1 = nose_apex(fig2)
    assert geo_par * math.sqrt(e1) > E1
    with pytest.raises(NoBracket):
        solve_e2(eta, fig2)


def test_eta_threshold_gate(fig2):
    assert eta_threshold(4.0) == pytest.approx(
        1.0 + 16.0 / (3.0 * math.sqrt(6.0)), rel=1e-15)
    bad = eta_threshold(fig2.c1)
    with pytest.raises(RegimeViolation):
        solve_e2(bad, fig2)
    with pytest.raises(RegimeViolation):
        solve_e2(bad * 1.5, fig2)


# ------------------------------------------------------------ geometry


def test_geometry_fields_consistent(fig2):
    geo = geometry(fig2)
    assert isinstance(geo, FullNseGeometry)
    assert geo.E_under == pytest.approx(2.0 ** (-1.0 / 3.0) * geo.E1,
                                        rel=1e-14)
    assert parabola_E(geo.e_under, fig2, geo.eta) \
        == pytest.approx(geo.E_under, rel=1e-13)
    assert parabola_E(geo.e0, fig2, geo.eta) \
        == pytest.approx(geo.E0, rel=1e-13)
    assert geo.E2 == pytest.approx(parabola_E(geo.e2, fig2, geo.eta),
                                   rel=1e-14)
    assert 0.0 < geo.e_star < geo.e0
    assert geo.alpha_full == pytest.approx(geo.eta / (geo.eta - 1.0))


def test_geometry_rejects_zero_forcing(fig2):
    dead = _with(fig2, f_norm=0.0)
    with pytest.raises(RegimeViolation):
        geometry(dead)


# ------------------------------------------------------------ classify


def test_classify_regions(fig2):
    geo = geometry(fig2)

    # strictly below the parabola
    e = geo.e0
    assert classify_full(e, 0.5 * parabola_E(e, fig2, geo.eta), fig2) == "I"

    # far inside the nose, well above the parabola at tiny energy
    assert psi_of_E(geo.E1, fig2) == pytest.approx(geo.e1, rel=1e-13)
    assert classify_full(1e-6, geo.E1, fig2) == "IV"

    # above everything at the anchor energy
    assert classify_full(geo.e0, 1e9, fig2) == "II"

    # between apex curve and parabola: III; above the apex curve: II
    mid = math.sqrt(geo.e1 * geo.e2)
    on_curve = phi_of_e(mid, geo.e1, geo.E1, geo.eta, fig2)
    below = 0.5 * (on_curve + parabola_E(mid, fig2, geo.eta))
    assert classify_full(mid, below, fig2) == "III"
    assert classify_full(mid, 2.0 * on_curve, fig2) == "II"

    # past e2 the corridor is open: anything at/above the parabola is II
    e = 2.0 * geo.e2
    assert classify_full(e, parabola_E(e, fig2, geo.eta), fig2) == "II"


def test_classify_left_of_apex(fig2):
    geo = geometry(fig2)
    e = 0.98 * geo.e1
    E_up = upper_nose_branch(e, fig2)
    assert classify_full(e, 1.05 * E_up, fig2) == "II"
    # the III window left of the apex hugs the parabola, below the lower
    # nose branch; just above it is inside the nose and classifies IV
    probe = 1.001 * parabola_E(e, fig2, geo.eta)
    assert psi_of_E(probe, fig2) < e
    assert probe < E_up
    assert classify_full(e, probe, fig2) == "III"


def test_classify_rejects_nonpositive(fig2):
    with pytest.raises(OutsideDomain):
        classify_full(0.0, 1.0, fig2)
    with pytest.raises(OutsideDomain):
        classify_full(1.0, -1.0, fig2)


# ------------------------------------------------------------ assembly


def test_assemble_full_bundle(fig2):
    bundle = assemble_full(fig2, samples=128)
    assert bundle.model == "full"
    tags = [s.tag for s in bundle.segments]
    assert tags.count("barrier") == 2
    for tag in ("phi1", "phi2", "parabola", "lower_boundary"):
        assert tags.count(tag) == 1
    assert any(f.startswith("eta=") for f in bundle.flags)
    assert "e2_floor_vacuous" in bundle.flags

    geo = geometry(fig2)
    wall = bundle.segment("phi1")
    assert wall.ln_e[0] > math.log(geo.e_star)
    assert wall.ln_e[-1] == pytest.approx(math.log(geo.e0), abs=1e-12)
    apex = bundle.segment("phi2")
    assert apex.ln_e[0] == pytest.approx(math.log(geo.e1), abs=1e-12)
    assert apex.ln_e[-1] == pytest.approx(math.log(geo.e2), abs=1e-12)
    # apex branch lands back on the parabola
    assert apex.ln_E[-1] == pytest.approx(
        math.log(parabola_E(geo.e2, fig2, geo.eta)), abs=1e-9)
    for seg in bundle.segments:
        assert all(map(math.isfinite, seg.ln_E))
