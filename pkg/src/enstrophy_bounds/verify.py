"""Independent correctness harness.

Three families of checks, all reporting rows of
    {check, segment, samples, worst_margin, pass}:

* containment_check: re-derives, at sampled curve points, the two growth
  rates whose quotient defined each segment, and asserts the extremal flow
  never crosses the curve outward. On constructed segments the margin is
  zero to roundoff by design, so "non-outward" carries a 1e-9 relative
  tolerance; a genuinely misplaced curve (see halved_curve) fails loudly.
* oracle_suite: series-vs-quadrature for the special function, closed-form
  curves vs an RK4 integration of their slope fields, and root locations
  vs sign-change scans on independent grids.
* taylor_wavenumber: the (E/e)^(1/2) diagnostic.

Everything here is deliberately redundant with the construction modules;
agreement is the point.
"""

from __future__ import annotations

import math

import numpy as np

from . import critical, full_nse, subcritical
from .curves import CurveBundle, CurveSegment
from .errors import EnstrophyBoundsError
from .logscalar import LogScalar, ZERO as _Z
from .params import ForcingParams
from .solver import integrate_adaptive, rk4_path

_REL_TOL = 1e-9  # sign-margin tolerance: constructed margins are exact zeros


def _gauge(terms) -> LogScalar:
    total = _Z
    for t in terms:
        total = total + abs(t)
    return total


def taylor_wavenumber(e_mean: float, E_mean: float) -> float:
    if e_mean == 0.0:
        raise ZeroDivisionError("Taylor wavenumber undefined at zero energy")
    if e_mean < 0.0 or E_mean < 0.0:
        raise ValueError("means must be nonnegative")
    return math.sqrt(E_mean / e_mean)


def halved_curve(curve: CurveBundle) -> CurveBundle:
    """Negative-control probe: the same curve pulled inward by a factor 2."""
    segs = []
    for seg in curve.segments:
        if seg.tag.startswith("phi"):
            segs.append(CurveSegment(seg.tag, seg.ln_e,
                                     seg.ln_E - math.log(2.0),
                                     seg.dlnE_dlne))
        else:
            segs.append(seg)
    return CurveBundle(curve.model, curve.params, segs,
                       dict(curve.breakpoints), list(curve.flags))


def _eta_of(curve: CurveBundle, params: ForcingParams) -> float:
    for flag in curve.flags:
        if flag.startswith("eta="):
            return float(flag[4:])
    return params.eta


def _rate_pairs(curve: CurveBundle, params: ForcingParams):
    """tag -> (T1, B, cond): dE/dt upper bound, de/dt bound, side condition.

    T1 takes (e, E) as LogScalar and returns (value, gauge) where gauge is
    the sum of the magnitudes of its terms: at a curve peak both the slope
    and T1 cross zero together, so a margin can only be judged relative to
    the terms that cancelled, never to the cancelled results. B returns a
    LogScalar, cond a bool. The pairs reproduce exactly the quotients that
    defined each segment, so constructed margins vanish identically.
    """
    nu, lam, mu = params.nu, params.lam, params.mu
    eps, rho = params.eps, params.rho
    half_nu = LogScalar.from_float(-0.5 * nu)
    big_half = LogScalar.from_float(-0.5 * nu * params.big_c_omega)
    par = LogScalar.from_float(4.0 * params.f_norm / nu)

    def parcond(e, E):
        return E >= par * e ** 0.5 * LogScalar.from_float(1.0 - 1e-12)

    if curve.model == "critical":
        quad_b = LogScalar.from_float(params.c2 * math.sqrt(lam) / (eps * nu))
        quad_a = LogScalar.from_float(0.25 * nu * (1.0 - rho))
        drive = LogScalar.from_float(
            6.0 * params.c2 * (mu * lam) ** 0.8 * nu ** 0.2 / eps ** 0.6)
        curl = LogScalar.from_float(6.0 * params.curlF_norm)
        floor = LogScalar.from_float(critical.enstrophy_floor(params)[0])
        slack_lo = LogScalar.from_float(1.0 - 1e-12)
        slack_hi = LogScalar.from_float(1.0 + 1e-12)

        def t1_rise(e, E):
            terms = (quad_b * E * E, -(quad_a * E * E / e), drive * E ** 1.4)
            return sum(terms, start=_Z), _gauge(terms)

        def t1_tail(e, E):
            terms = (quad_b * E * E, -(quad_a * E * E / e), curl * E ** 0.5)
            return sum(terms, start=_Z), _gauge(terms)

        return {
            "phi1": (t1_rise, lambda e, E: half_nu * E, parcond),
            "phi2": (t1_rise, lambda e, E: big_half * E,
                     lambda e, E: E >= floor * slack_lo),
            "phi3": (t1_tail, lambda e, E: big_half * E,
                     lambda e, E: E <= floor * slack_hi),
        }

    if curve.model == "subcritical":
        sigma = subcritical.sigma_of(params.r)
        c_s = LogScalar.from_float(0.5 * nu * subcritical.big_c_s(params))
        alpha_half = LogScalar.from_float(0.25 * nu * (1.0 - rho))
        quad_a = alpha_half  # alpha_s nu / 2 = nu (1 - rho)/4
        curl = LogScalar.from_float(6.0 * params.curlF_norm)
        floor = LogScalar.from_float(subcritical.enstrophy_floor(params)[0])
        slack_lo = LogScalar.from_float(1.0 - 1e-12)
        slack_hi = LogScalar.from_float(1.0 + 1e-12)

        def t1_rise_sub(e, E):
            terms = (c_s * E ** (2.0 - sigma), -(quad_a * E * E / e))
            return sum(terms, start=_Z), _gauge(terms)

        def t1_tail_sub(e, E):
            terms = (curl * E ** 0.5, -(quad_a * E * E / e))
            return sum(terms, start=_Z), _gauge(terms)

        return {
            "phi1": (t1_rise_sub, lambda e, E: half_nu * E, parcond),
            "phi2": (t1_rise_sub, lambda e, E: big_half * E,
                     lambda e, E: E >= floor * slack_lo),
            "phi3": (t1_tail_sub, lambda e, E: big_half * E,
                     lambda e, E: E <= floor * slack_hi),
        }

    if curve.model == "full":
        eta = _eta_of(curve, params)
        cube = LogScalar.from_float(2.0 * params.c1 / nu ** 3)
        pull = LogScalar.from_float(
            eta * nu ** 2 * lam ** 0.75 * params.grashof)
        drain = LogScalar.from_float(
            -2.0 * (eta - 1.0) * nu ** 2 * lam ** 0.75 * params.grashof)
        par_full = LogScalar.from_float(eta * nu * lam ** 0.75 * params.grashof)

        def t1_full(e, E):
            terms = (cube * E ** 3.0, -(pull * E / e ** 0.5))
            return sum(terms, start=_Z), _gauge(terms)

        def b_full(e, E):
            return drain * e ** 0.5

        def cond_full(e, E):
            return E >= par_full * e ** 0.5 * LogScalar.from_float(1.0 - 1e-12)

        return {"phi1": (t1_full, b_full, cond_full),
                "phi2": (t1_full, b_full, cond_full)}

    raise ValueError(f"no containment pairs for model {curve.model!r}")


def containment_check(curve: CurveBundle, params: ForcingParams,
                      n_points: int = 1000) -> list[dict]:
    """Outward-crossing check on every phi segment of an assembled bundle."""
    pairs = _rate_pairs(curve, params)
    rows = []
    for seg in curve.main_segments():
        t1_fn, b_fn, cond = pairs[seg.tag]
        total = len(seg.ln_e)
        idx = np.unique(np.linspace(0, total - 1,
                                    min(n_points, total)).round().astype(int))
        worst = math.inf
        ok = True
        used = 0
        for i in idx:
            e = LogScalar.from_ln(float(seg.ln_e[i]))
            E = LogScalar.from_ln(float(seg.ln_E[i]))
            if not cond(e, E):
                continue
            used += 1
            lhs = LogScalar.from_float(float(seg.dlnE_dlne[i])) \
                * (E / e) * b_fn(e, E)
            t1, gauge = t1_fn(e, E)
            margin = lhs - t1
            scale = abs(lhs) + gauge
            if scale.sign == 0:
                continue
            ratio = (margin / scale).to_float()
            worst = min(worst, ratio)
            if ratio < -_REL_TOL:
                ok = False
        rows.append({"check": "containment", "segment": seg.tag,
                     "samples": used,
                     "worst_margin": worst if used else 0.0, "pass": ok})
    return rows


# -- oracle suite -------------------------------------------------------

_ALPHAS = (0.03, 0.5, 0.97, 1.5)
_XS = (0.0, 1.0, 10.0, 48.0, 100.0)


def _g_quadrature(alpha: float, x: float) -> float:
    """int_0^1 t^(alpha-1) e^(xt) dt by substitution, independent of the
    series code path entirely."""
    if alpha <= 1.0:
        # t = u^(1/alpha) flattens the endpoint singularity exactly
        inv = 1.0 / alpha
        return inv * integrate_adaptive(
            lambda u: math.exp(x * u ** inv), 0.0, 1.0, rel_tol=1e-12)
    return integrate_adaptive(
        lambda t: t ** (alpha - 1.0) * math.exp(x * t), 0.0, 1.0,
        rel_tol=1e-12)


def _specfun_row(series_rel_tol: float) -> dict:
    from .specfun import gamma_series_factor
    worst = 0.0
    for alpha in _ALPHAS:
        for x in _XS:
            series = gamma_series_factor(alpha, x,
                                         rel_tol=series_rel_tol).to_float()
            quad = _g_quadrature(alpha, x)
            worst = max(worst, abs(series - quad) / abs(quad))
    return {"check": "series_vs_quadrature", "segment": "specfun",
            "samples": len(_ALPHAS) * len(_XS), "worst_margin": worst,
            "pass": worst <= 1e-10}


def _rk4_row(params: ForcingParams, series_rel_tol: float) -> dict:
    """Closed-form rising branch vs direct integration of its slope field."""
    if params.r == 0.5:
        co = critical.coefficients(params)
        e_stop, _ = critical.find_e_max(params)
        field = critical.slope_field(params, "phi1")
        ln_e0 = math.log(co.e0)
        xi0 = LogScalar.from_float(co.E0) ** 0.6

        def closed(ln_e: float) -> float:
            xi = critical.xi_solution(ln_e, co, ln_e0, xi0,
                                      rel_tol=series_rel_tol)
            return (5.0 / 3.0) * xi.ln

        ln_E0 = math.log(co.E0)
        e0 = co.e0
    else:
        e0, E0 = subcritical._anchor(params)
        e_stop, _ = subcritical.find_e_bar(params)
        field = subcritical.slope_field(params, "phi1")

        def closed(ln_e: float) -> float:
            return subcritical.sub_phi1(LogScalar.from_ln(ln_e), params).ln

        ln_E0 = math.log(E0)
    es, lnEs = rk4_path(field, e0, ln_E0, e_stop, tol=1e-8, n0=8192)
    stride = max(1, len(es) // 512)
    worst = 0.0
    for e, ln_E in zip(es[::stride], lnEs[::stride]):
        worst = max(worst, abs(closed(math.log(float(e))) - float(ln_E)))
    return {"check": "closed_form_vs_rk4", "segment": "phi1",
            "samples": len(es[::stride]), "worst_margin": worst,
            "pass": worst <= 1e-6}


def _scan_row(name: str, gap, center: float, half_width: float = 2.0,
              n: int = 201) -> dict:
    """Verify a found root by locating a sign change on an independent grid
    around it and checking the claim falls inside that bracket. Grid points
    outside a curve's own domain are skipped, not fatal."""
    grid = np.linspace(center - half_width, center + half_width, n)
    vals = []
    for v in grid:
        try:
            vals.append(gap(float(v)))
        except EnstrophyBoundsError:
            vals.append(math.nan)
    dist = math.inf
    for a, b, fa, fb in zip(grid, grid[1:], vals, vals[1:]):
        if math.isnan(fa) or math.isnan(fb):
            continue
        if fa == 0.0 or fa * fb < 0.0:
            if a <= center <= b:
                dist = 0.0
                break
            dist = min(dist, abs(center - a), abs(center - b))
    return {"check": "root_vs_gridscan", "segment": name, "samples": n,
            "worst_margin": dist, "pass": dist == 0.0}


def _critical_scan_rows(params: ForcingParams) -> list[dict]:
    _, E_max = critical.find_e_max(params)
    co = critical.coefficients(params)
    ln_pre = (2.0 / 3.0) * math.log(params.eps) \
        + (4.0 / 3.0) * math.log(params.mu) \
        + 0.5 * math.log(params.lam) + 2.0 * math.log(params.nu)
    ln_e_a = math.log(co.e_a)

    def gap_peak(w: float) -> float:
        ln_e = ln_e_a + math.log1p(-math.exp(w))
        curve = critical.phi1(LogScalar.from_ln(ln_e), params)
        return curve.ln - ln_pre - (5.0 / 3.0) * (
            math.log(6.0) + math.log1p(-math.exp(w)) - w)

    w_est = math.log(6.0) - 0.6 * (E_max.ln - ln_pre)
    rows = [_scan_row("e_max", gap_peak, w_est)]

    ln_e_min = critical.find_e_min(params).ln
    ln_floor = math.log(co.E_min)

    def gap_floor(v: float) -> float:
        return critical.curve_value(v, params).ln - ln_floor

    rows.append(_scan_row("e_min", gap_floor, ln_e_min))
    return rows


def _subcritical_scan_rows(params: ForcingParams) -> list[dict]:
    e_bar, _ = subcritical.find_e_bar(params)
    coeffs = subcritical.sub_coefficients(params)
    ln_ratio = math.log(coeffs.C_s / coeffs.alpha_s)

    def gap_peak(v: float) -> float:
        E = subcritical.sub_phi1(LogScalar.from_ln(v), params)
        return coeffs.sigma * E.ln - ln_ratio - v

    rows = [_scan_row("e_bar", gap_peak, math.log(e_bar))]
    ln_floor = math.log(coeffs.E_under)

    def gap_floor(v: float) -> float:
        return subcritical.curve_value(v, params).ln - ln_floor

    rows.append(_scan_row("e_under", gap_floor, coeffs.e_under.ln))
    return rows


def _full_scan_row(params: ForcingParams) -> dict:
    geo = full_nse.geometry(params)

    def gap(v: float) -> float:
        e = math.exp(v)
        apex = full_nse.phi_of_e(e, geo.e1, geo.E1, geo.eta, params)
        return math.log(apex) - math.log(
            full_nse.parabola_E(e, params, geo.eta))

    return _scan_row("e2", gap, math.log(geo.e2))


def oracle_suite(params: ForcingParams,
                 series_rel_tol: float = 1e-12) -> list[dict]:
    """Cross-checks at the given parameter set; degenerate forcing (G = 0)
    skips everything that needs a curve."""
    rows = [_specfun_row(series_rel_tol)]
    if params.grashof <= 0.0:
        return rows
    rows.append(_rk4_row(params, series_rel_tol))
    if params.r == 0.5:
        rows.extend(_critical_scan_rows(params))
    else:
        rows.extend(_subcritical_scan_rows(params))
    try:
        rows.append(_full_scan_row(params))
    except EnstrophyBoundsError as exc:
        rows.append({"check": "root_vs_gridscan", "segment": "e2",
                     "samples": 0, "worst_margin": math.inf, "pass": False,
                     "note": f"{type(exc).__name__}: {exc}"})
    return rows


def all_pass(report: list[dict]) -> bool:
    return all(row["pass"] for row in report)
