"""Unconditional bounding region in the energy-enstrophy plane.

No coherence assumption here: the region is carved out by three analytic
curves. The nose, e = psi_of_E(E), is where the enstrophy growth bound
changes sign; every point inside it has dE/dt <= 0. The parabola
E = eta nu lam^(3/4) G sqrt(e) (eta > 1) marks where the energy decays
fast enough to push trajectories leftward. Crossing the two rate bounds
above the parabola gives a Bernoulli slope field whose solutions are the
funnel curves phi_of_e: anchored on the parabola at (e0, E0) they form a
wall with a vertical asymptote at e_star just left of e0; anchored at the
nose apex (e1, E1) they descend and re-enter the parabola at e2.
Together the curves split the quadrant into four regions (classify_full).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .curves import CurveBundle, CurveSegment, log_grid
from .errors import NoBracket, OutsideDomain, RegimeViolation
from .logscalar import LogScalar
from .params import ForcingParams
from .solver import find_root

REGIONS = ("I", "II", "III", "IV")


def psi_of_E(E: float, params: ForcingParams) -> float:
    """Nose curve: the energy below which enstrophy cannot grow at level E."""
    if E < 0.0:
        raise ValueError("enstrophy must be nonnegative")
    nu, g = params.nu, params.grashof
    denom = 2.0 * nu ** 6 * params.lam ** 1.5 * g * g + params.c1 * E ** 3
    if denom == 0.0:
        return 0.0
    return nu ** 4 * E * E / denom


def nose_apex(params: ForcingParams) -> tuple[float, float]:
    """(e1, E1): the rightmost point of the nose, where psi_of_E peaks."""
    nu, lam, g = params.nu, params.lam, params.grashof
    E1 = (4.0 / params.c1) ** (1.0 / 3.0) * nu ** 2 * math.sqrt(lam) * g ** (2.0 / 3.0)
    e1 = (4.0 / params.c1) ** (2.0 / 3.0) * nu ** 2 * g ** (-2.0 / 3.0) \
        / (6.0 * math.sqrt(lam))
    return e1, E1


def parabola_E(e: float, params: ForcingParams, eta: float) -> float:
    return eta * params.nu * params.lam ** 0.75 * params.grashof * math.sqrt(e)


def _alpha_beta(params: ForcingParams, eta: float) -> tuple[float, float]:
    alpha = eta / (eta - 1.0)
    beta = 4.0 * params.c1 / ((3.0 * eta - 1.0) * params.nu ** 5
                              * params.lam ** 0.75 * params.grashof)
    return alpha, beta


def asymptote_e_star(e0_init: float, E0_init: float, eta: float,
                     params: ForcingParams) -> float | None:
    """Vertical-asymptote abscissa of the funnel through (e0_init, E0_init).

    Solves e_star^(alpha+1/2) = e0^(alpha+1/2) - e0^alpha/(beta E0^2);
    None when the right side is nonpositive (the funnel then reaches e = 0).
    """
    alpha, beta = _alpha_beta(params, eta)
    p = alpha + 0.5
    rhs = e0_init ** p - e0_init ** alpha / (beta * E0_init * E0_init)
    if rhs <= 0.0:
        return None
    return rhs ** (1.0 / p)


def phi_of_e(e: float, e0_init: float, E0_init: float, eta: float,
             params: ForcingParams) -> float:
    """Funnel solution through (e0_init, E0_init), evaluated at e.

    Valid on (e_star, oo): the same expression continues smoothly past the
    anchor, which is how the apex-anchored branch reaches the parabola.
    """
    if e <= 0.0:
        raise OutsideDomain("energy must be positive")
    alpha, beta = _alpha_beta(params, eta)
    p = alpha + 0.5
    star = asymptote_e_star(e0_init, E0_init, eta, params)
    # bracket of the -1/2 power, factored so the asymptote is explicit:
    # e^-alpha * beta * (e^p - e_star^p)
    shifted = e ** p - (star ** p if star is not None else
                        e0_init ** p - e0_init ** alpha / (beta * E0_init ** 2))
    if shifted <= 0.0:
        raise OutsideDomain(
            f"e = {e} is at or left of the funnel asymptote")
    bracket = beta * math.exp(-alpha * math.log(e)) * shifted
    return 1.0 / math.sqrt(bracket)


def phi_slope(e: float, E: float, eta: float, params: ForcingParams) -> float:
    """dE/de of the funnel slope field at (e, E)."""
    alpha, _ = _alpha_beta(params, eta)
    nu, lam, g = params.nu, params.lam, params.grashof
    return 0.5 * alpha * E / e \
        - params.c1 * E ** 3 / ((eta - 1.0) * nu ** 5 * lam ** 0.75
                                * g * math.sqrt(e))


def eta_threshold(c1: float) -> float:
    """Largest funnel steepness solve_e2 accepts."""
    return 1.0 + (4.0 * c1 / (3.0 * math.sqrt(6.0))) * (4.0 / c1) ** (5.0 / 6.0)


def _gamma_delta(params: ForcingParams, eta: float) -> tuple[float, float]:
    alpha, beta = _alpha_beta(params, eta)
    nu, lam, g = params.nu, params.lam, params.grashof
    e1, E1 = nose_apex(params)
    gamma = 1.0 / (beta * eta * eta * nu ** 2 * lam ** 1.5 * g * g)
    delta = e1 ** alpha / (beta * E1 * E1) - e1 ** (alpha + 0.5)
    return gamma, delta


def e2_lower_bound(params: ForcingParams, eta: float) -> float:
    """Sign-aware closed-form floor for the e2 root.

    Nonpositive (hence vacuous) whenever the delta coefficient of the root
    equation is negative, which covers the default eta = 2 regime.
    """
    alpha, _ = _alpha_beta(params, eta)
    _, delta = _gamma_delta(params, eta)
    mag = abs(delta) ** (2.0 / (2.0 * alpha + 1.0))
    scale = params.nu ** 2 / math.sqrt(params.lam) * params.grashof ** (2.0 / 3.0)
    return math.copysign(mag * scale, delta)


def solve_e2(eta: float, params: ForcingParams) -> float:
    """Energy where the apex-anchored funnel re-enters the parabola.

    Root of F(e) = e^(1/2+alpha) - gamma e^(alpha-1) + delta, located by a
    log-grid scan for the last sign change on [e1, 1e12 e1] and polished
    with find_root.
    """
    if eta >= eta_threshold(params.c1):
        raise RegimeViolation(
            f"eta = {eta} is at or above the admissible bound "
            f"{eta_threshold(params.c1):.6g}")
    alpha, _ = _alpha_beta(params, eta)
    gamma, delta = _gamma_delta(params, eta)
    e1, _ = nose_apex(params)

    def F(e: float) -> float:
        return e ** (0.5 + alpha) - gamma * e ** (alpha - 1.0) + delta

    lns = log_grid(math.log(e1), math.log(e1) + 12.0 * math.log(10.0), 481)
    vals = [F(math.exp(v)) for v in lns]
    bracket = None
    for i in range(len(vals) - 1):
        if vals[i] == 0.0:
            bracket = (lns[i], lns[i])
        elif vals[i] * vals[i + 1] < 0.0:
            bracket = (lns[i], lns[i + 1])
    if bracket is None:
        raise NoBracket("funnel/parabola crossing not bracketed beyond the apex")
    if bracket[0] == bracket[1]:
        return math.exp(bracket[0])
    ln_root = find_root(lambda v: F(math.exp(v)), bracket[0], bracket[1],
                        x_tol=1e-14)
    return math.exp(ln_root)


@dataclass(frozen=True)
class FullNseGeometry:
    """Every derived quantity of the region, computed once."""
    eta: float
    alpha_full: float
    beta_full: float
    e0: float
    E0: float          # parabola anchor, eta nu^2 lam^(1/2) G^2
    e1: float
    E1: float
    E_under: float     # 2^(-1/3) E1
    e_under: float     # parabola abscissa at E_under
    e_star: float      # wall asymptote (parabola-anchored funnel)
    e2: float
    E2: float


def geometry(params: ForcingParams, eta: float | None = None) -> FullNseGeometry:
    if params.grashof <= 0.0:
        raise RegimeViolation("zero forcing: the region degenerates")
    if eta is None:
        eta = params.eta
    alpha, beta = _alpha_beta(params, eta)
    e0 = params.e0
    E0 = eta * params.nu ** 2 * math.sqrt(params.lam) * params.grashof ** 2
    e1, E1 = nose_apex(params)
    E_under = 2.0 ** (-1.0 / 3.0) * E1
    e_under = (E_under / (eta * params.nu * params.lam ** 0.75
                          * params.grashof)) ** 2
    star = asymptote_e_star(e0, E0, eta, params)
    if star is None:
        raise RegimeViolation("parabola anchor admits no asymptote")
    e2 = solve_e2(eta, params)
    return FullNseGeometry(
        eta=eta, alpha_full=alpha, beta_full=beta, e0=e0, E0=E0,
        e1=e1, E1=E1, E_under=E_under, e_under=e_under, e_star=star,
        e2=e2, E2=parabola_E(e2, params, eta))


def upper_nose_branch(e: float, params: ForcingParams) -> float:
    """Larger enstrophy with psi_of_E(E) = e; defined for 0 < e < e1."""
    e1, E1 = nose_apex(params)
    if not 0.0 < e < e1:
        raise OutsideDomain(f"upper branch needs 0 < e < {e1}")
    hi = 1.1 * params.nu ** 4 / (params.c1 * e)
    return find_root(lambda E: psi_of_E(E, params) - e, E1, hi, x_tol=1e-13)


def classify_full(e: float, E: float, params: ForcingParams,
                  eta: float | None = None) -> str:
    """Region of (e, E), tie-breaking boundaries toward the larger numeral.

    IV: inside the nose at or above the parabola (both rates nonpositive).
    I: strictly below the parabola. Above it, II is separated from III by
    the upper nose branch (e < e1), the apex funnel (e1 <= e <= e2), and
    nothing at all past e2, where the corridor opens up.
    """
    if e <= 0.0 or E <= 0.0:
        raise OutsideDomain("classification needs e > 0 and E > 0")
    geo = geometry(params, eta)
    par = parabola_E(e, params, geo.eta)
    if e <= psi_of_E(E, params) and E >= par:
        return "IV"
    if E < par:
        return "I"
    if e < geo.e1:
        return "II" if E > upper_nose_branch(e, params) else "III"
    if e <= geo.e2:
        return "II" if E > phi_of_e(e, geo.e1, geo.E1, geo.eta, params) else "III"
    return "II"


def _funnel_segment(tag, ln_lo, ln_hi, anchor_e, anchor_E, geo, params,
                    samples):
    grid = log_grid(ln_lo, ln_hi, samples)
    ln_E, slope = [], []
    for v in grid:
        e = math.exp(v)
        E = phi_of_e(e, anchor_e, anchor_E, geo.eta, params)
        ln_E.append(math.log(E))
        slope.append(phi_slope(e, E, geo.eta, params) * e / E)
    import numpy as np
    return CurveSegment(tag, grid, np.asarray(ln_E), np.asarray(slope))


def assemble_full(params: ForcingParams, eta: float | None = None,
                  samples: int = 512) -> CurveBundle:
    """Sample the region's curves into a CurveBundle.

    phi1 is the wall (parabola anchor, huge near its asymptote), phi2 the
    apex branch between e1 and e2. The two are separate solutions, not a
    piecewise curve, so no join continuity is implied. The nose is emitted
    as two barrier segments (lower and upper branch).
    """
    import numpy as np

    geo = geometry(params, eta)
    segs = []

    wall_lo = math.log(geo.e_star) + math.log1p(1e-6)
    segs.append(_funnel_segment("phi1", wall_lo, math.log(geo.e0),
                                geo.e0, geo.E0, geo, params, samples))
    segs.append(_funnel_segment("phi2", math.log(geo.e1), math.log(geo.e2),
                                geo.e1, geo.E1, geo, params, samples))

    # nose: parameterize by E, emit with increasing ln e
    for lo, hi, reverse in ((geo.E1 * 1e-2, geo.E1, False),
                            (geo.E1, geo.E1 * 1e2, True)):
        grid_E = log_grid(math.log(lo), math.log(hi), samples)
        ln_e = np.array([math.log(psi_of_E(math.exp(u), params))
                         for u in grid_E])
        if reverse:
            grid_E, ln_e = grid_E[::-1], ln_e[::-1]
        segs.append(CurveSegment("barrier", ln_e, grid_E.copy()))

    par_grid = log_grid(math.log(geo.e_under) - 2.0, math.log(geo.e0), samples)
    par_pre = math.log(geo.eta * params.nu * params.lam ** 0.75
                       * params.grashof)
    segs.append(CurveSegment("parabola", par_grid, par_pre + 0.5 * par_grid,
                             np.full(samples, 0.5)))

    low_grid = par_grid.copy()
    segs.append(CurveSegment("lower_boundary", low_grid,
                             math.log(params.lam0) + low_grid,
                             np.ones(samples)))

    breakpoints = {
        "e0": LogScalar.from_float(geo.e0),
        "E0": LogScalar.from_float(geo.E0),
        "e1": LogScalar.from_float(geo.e1),
        "E1": LogScalar.from_float(geo.E1),
        "e2": LogScalar.from_float(geo.e2),
        "E2": LogScalar.from_float(geo.E2),
        "e_star": LogScalar.from_float(geo.e_star),
        "e_under": LogScalar.from_float(geo.e_under),
        "E_under": LogScalar.from_float(geo.E_under),
    }
    flags = [f"eta={geo.eta:.12g}"]
    if e2_lower_bound(params, geo.eta) <= 0.0:
        flags.append("e2_floor_vacuous")
    return CurveBundle("full", params, segs, breakpoints, flags)
