"""Forcing and regime parameters.

A single frozen ForcingParams carries everything the curve families need:
fluid constants, the two norms of the body force, the vorticity-coherence
description (r, mu, psi_inf, c_omega) and the splitting constants of the
underlying differential inequalities. Parameter files are flat JSON objects
with exactly these keys; unknown keys are rejected rather than ignored so a
typo cannot silently change a regime.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields

from .errors import InvalidRegime, MissingKey

# JSON key -> attribute. "lambda" is a Python keyword, hence lam/lam0.
_REQUIRED = {
    "nu": "nu",
    "lambda": "lam",
    "lambda0": "lam0",
    "f_norm": "f_norm",
    "curlF_norm": "curlF_norm",
    "psi_inf": "psi_inf",
    "r": "r",
    "eps": "eps",
    "delta": "delta",
    "mu": "mu",
}
_OPTIONAL = {
    "c_omega": ("c_omega", 1.0),
    "c1": ("c1", 1.0),
    "c2": ("c2", 2.0),
    "c": ("c", 1.0),
    "eta": ("eta", 2.0),
    "eps0": ("eps0", 0.25),
    "c_omega_prime": ("c_omega_prime", 1.0),
}


@dataclass(frozen=True, slots=True)
class ForcingParams:
    nu: float            # kinematic viscosity
    lam: float           # bottom of the Stokes spectrum (1/length^2 scale)
    lam0: float          # same quantity entering the lower boundary line
    f_norm: float        # L2 norm of the body force
    curlF_norm: float    # L2 norm of its curl
    psi_inf: float       # far-field level of the coherence profile
    r: float             # coherence decay exponent, 1/2 <= r <= 1
    eps: float           # interpolation split, rho = 2 eps + delta < 1
    delta: float
    mu: float            # coherence length-scale parameter
    c_omega: float = 1.0
    c1: float = 1.0      # constant of the enstrophy production estimate
    c2: float = 2.0      # constant of the coherence-weighted estimate
    c: float = 1.0       # generic interpolation constant (subcritical curves)
    eta: float = 2.0     # funnel steepness of the unconditional region
    eps0: float = 0.25   # scaling-window split
    c_omega_prime: float = 1.0

    def __post_init__(self):
        for name in ("nu", "lam", "lam0", "mu", "eps",
                     "c1", "c2", "eps0", "c_omega_prime"):
            if getattr(self, name) <= 0.0:
                raise InvalidRegime(f"{name} must be positive")
        # c = 0 is a meaningful degenerate limit (no production term in the
        # subcritical slope field) and delta = 0 a legitimate split, so
        # unlike their siblings these may vanish
        for name in ("f_norm", "curlF_norm", "psi_inf", "c", "delta"):
            if getattr(self, name) < 0.0:
                raise InvalidRegime(f"{name} must be nonnegative")
        if self.c_omega < 1.0:
            raise InvalidRegime("c_omega must be at least 1")
        if self.eta <= 1.0:
            raise InvalidRegime("eta must exceed 1")
        if not 0.5 <= self.r <= 1.0:
            raise InvalidRegime(f"r must lie in [1/2, 1], got {self.r}")
        if self.rho >= 1.0:
            raise InvalidRegime(
                f"2*eps + delta must stay below 1, got {self.rho}")

    # -- derived quantities ---------------------------------------------

    @property
    def rho(self) -> float:
        return 2.0 * self.eps + self.delta

    @property
    def grashof(self) -> float:
        """Nondimensional forcing amplitude G."""
        return self.f_norm / (self.nu ** 2 * self.lam ** 0.75)

    @property
    def e0(self) -> float:
        """Energy level where every bounding curve is anchored."""
        g = self.grashof
        return self.nu ** 2 * g * g / math.sqrt(self.lam)

    @property
    def big_c_omega(self) -> float:
        """Rate constant of the slow energy-decay bound (1 + 4 c_omega)."""
        return 1.0 + 4.0 * self.c_omega

    @property
    def lam_under(self) -> float:
        """Slope of the lower boundary line E >= lam_under * e."""
        return self.lam0 / self.c_omega

    # -- construction / round trip ---------------------------------------

    @classmethod
    def from_mapping(cls, raw: dict) -> "ForcingParams":
        known = set(_REQUIRED) | set(_OPTIONAL)
        unknown = sorted(set(raw) - known)
        if unknown:
            raise InvalidRegime(f"unknown parameter keys: {', '.join(unknown)}")
        kwargs = {}
        for key, attr in _REQUIRED.items():
            if key not in raw:
                raise MissingKey(f"missing required parameter {key!r}")
            kwargs[attr] = _as_number(key, raw[key])
        for key, (attr, default) in _OPTIONAL.items():
            kwargs[attr] = _as_number(key, raw[key]) if key in raw else default
        return cls(**kwargs)

    def to_raw(self) -> dict:
        attr_to_key = {v: k for k, v in _REQUIRED.items()}
        attr_to_key.update({v[0]: k for k, v in _OPTIONAL.items()})
        return {attr_to_key[f.name]: getattr(self, f.name)
                for f in fields(self)}


def _as_number(key: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InvalidRegime(f"parameter {key!r} must be a number, got {value!r}")
    v = float(value)
    if not math.isfinite(v):
        raise InvalidRegime(f"parameter {key!r} must be finite")
    return v


def load_params_file(path: str) -> ForcingParams:
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict):
        raise InvalidRegime("parameter file must hold a JSON object")
    return ForcingParams.from_mapping(raw)
