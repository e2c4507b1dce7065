"""Large-scale propagation models for 2-100 GHz urban-micro links.

Implements the close-in (CI) line-of-sight path loss, the alpha-beta-gamma
(ABG) non-line-of-sight path loss, a distance-based LoS probability,
composite outdoor-to-indoor penetration loss and oxygen absorption, each
with its log-normal shadow term.  All functions accept scalars or numpy
arrays and return dB values.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import FrequencyRangeWarning

SPEED_OF_LIGHT_M_S = 299_792_458.0

#: validity range of the path-loss models, in GHz
FREQ_VALID_GHZ = (0.5, 100.0)

_MATERIALS = ("glass", "irr_glass", "concrete")


@dataclass(frozen=True)
class PropagationParams:
    """Model constants; defaults reproduce the standard urban-micro fit.

    Material losses are linear in frequency, ``intercept + slope * f_GHz``
    dB.  ``sigma_o2i_low_db`` / ``sigma_o2i_high_db`` default to the
    variance reading of the in-building shadow spread (variances 3 and 5).
    """

    ci_ple_coeff: float = 21.0  # 10 * path-loss exponent of the LoS model
    sigma_los_db: float = 3.76
    abg_alpha: float = 3.53
    abg_beta_db: float = 22.4
    abg_gamma: float = 2.13
    sigma_nlos_db: float = 7.82
    sigma_o2i_low_db: float = math.sqrt(3.0)
    sigma_o2i_high_db: float = math.sqrt(5.0)
    glass_loss_db: tuple[float, float] = (2.0, 0.2)
    irr_glass_loss_db: tuple[float, float] = (23.0, 0.3)
    concrete_loss_db: tuple[float, float] = (5.0, 4.0)
    indoor_loss_rate_db_per_m: float = 0.5
    oxygen_delta_db_per_km: dict[float, float] = field(
        default_factory=lambda: {60.0: 15.0})

    def __post_init__(self):
        for name in ("sigma_los_db", "sigma_nlos_db", "sigma_o2i_low_db",
                     "sigma_o2i_high_db"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.abg_alpha <= 0 or self.abg_gamma <= 0:
            raise ValueError("abg_alpha and abg_gamma must be positive")


DEFAULT_PARAMS = PropagationParams()


@dataclass(frozen=True)
class LinkGeometry:
    """Geometry of one site-to-station link (fields may be arrays)."""

    d_2d_m: float | np.ndarray
    d_3d_m: float | np.ndarray  # includes height difference and indoor depth
    f_c_hz: float
    is_los: bool | np.ndarray
    is_indoor: bool
    d_2d_in_m: float | np.ndarray = 0.0


@dataclass(frozen=True)
class ShadowDraws:
    """Zero-mean Gaussian shadow terms in dB, one set per station-site pair."""

    x_los_db: float | np.ndarray = 0.0
    x_nlos_db: float | np.ndarray = 0.0
    x_o2i_low_db: float | np.ndarray = 0.0
    x_o2i_high_db: float | np.ndarray = 0.0


def draw_shadows(rng: np.random.Generator, shape,
                 params: PropagationParams = DEFAULT_PARAMS) -> ShadowDraws:
    """Draw one full set of shadow terms; the draw order is fixed."""
    return ShadowDraws(
        x_los_db=rng.normal(0.0, params.sigma_los_db, shape),
        x_nlos_db=rng.normal(0.0, params.sigma_nlos_db, shape),
        x_o2i_low_db=rng.normal(0.0, params.sigma_o2i_low_db, shape),
        x_o2i_high_db=rng.normal(0.0, params.sigma_o2i_high_db, shape),
    )


def _check_freq_validity(f_c_ghz):
    lo, hi = FREQ_VALID_GHZ
    f = np.asarray(f_c_ghz)
    if np.any(f < lo) or np.any(f > hi):
        warnings.warn(
            f"carrier frequency outside the {lo}-{hi} GHz model validity "
            "range", FrequencyRangeWarning, stacklevel=3)


def fspl(f_c_hz: float) -> float:
    """Free-space path loss at the 1 m reference distance.

    Parameters
    ----------
    f_c_hz : carrier frequency in Hz.

    Returns
    -------
    20 * log10(4 * pi * f_c / c) in dB.
    """
    if np.any(np.asarray(f_c_hz) <= 0):
        raise ValueError(f"f_c_hz must be positive, got {f_c_hz}")
    return 20.0 * np.log10(4.0 * np.pi * f_c_hz / SPEED_OF_LIGHT_M_S)


def pl_los_ci(f_c_hz: float, d_m, x_los_db=0.0,
              params: PropagationParams = DEFAULT_PARAMS):
    """Close-in reference-distance LoS path loss.

    Parameters
    ----------
    f_c_hz : carrier frequency in Hz.
    d_m : 3D transmitter-receiver distance in metres, >= 1 (model
        reference distance).
    x_los_db : shadow term in dB.

    Returns
    -------
    FSPL(f_c) + ci_ple_coeff * log10(d) + x_los in dB.
    """
    d = np.asarray(d_m, dtype=float)
    if np.any(d < 1.0):
        raise ValueError("d_m below the 1 m close-in reference distance")
    _check_freq_validity(f_c_hz / 1e9)
    return fspl(f_c_hz) + params.ci_ple_coeff * np.log10(d) + x_los_db


def pl_nlos_abg(f_c_ghz: float, d_m, x_nlos_db=0.0,
                params: PropagationParams = DEFAULT_PARAMS):
    """Alpha-beta-gamma NLoS path loss.

    Parameters
    ----------
    f_c_ghz : carrier frequency in GHz (the frequency slope of this model
        is defined on GHz).
    d_m : 3D transmitter-receiver distance in metres, >= 1.
    x_nlos_db : shadow term in dB.

    Returns
    -------
    10*alpha*log10(d) + beta + 10*gamma*log10(f_GHz) + x_nlos in dB.
    """
    d = np.asarray(d_m, dtype=float)
    if np.any(d < 1.0):
        raise ValueError("d_m below the 1 m reference distance")
    _check_freq_validity(f_c_ghz)
    return (10.0 * params.abg_alpha * np.log10(d) + params.abg_beta_db
            + 10.0 * params.abg_gamma * np.log10(f_c_ghz) + x_nlos_db)


def los_probability(d_2d_m):
    """Line-of-sight probability versus horizontal distance.

    Equals 1 up to 18 m and decays as
    ``(18/d) * (1 - exp(-d/36)) + exp(-d/36)`` beyond.  Each link's LoS
    state is a Bernoulli draw with this probability, fixed per
    station-site pair per drop.
    """
    d = np.asarray(d_2d_m, dtype=float)
    if np.any(d < 0):
        raise ValueError("d_2d_m must be non-negative")
    ratio = 18.0 / np.maximum(d, 18.0)  # 1 for d <= 18, collapses p to 1
    decay = np.exp(-d / 36.0)
    p = ratio * (1.0 - decay) + decay
    return p if p.ndim else float(p)


def material_loss(material: str, f_c_ghz: float,
                  params: PropagationParams = DEFAULT_PARAMS):
    """Penetration loss of one building material in dB, linear in f_GHz."""
    if material not in _MATERIALS:
        raise ValueError(f"unknown material {material!r}, expected one of {_MATERIALS}")
    if np.any(np.asarray(f_c_ghz) < 0):
        raise ValueError("f_c_ghz must be non-negative")
    intercept, slope = {
        "glass": params.glass_loss_db,
        "irr_glass": params.irr_glass_loss_db,
        "concrete": params.concrete_loss_db,
    }[material]
    return intercept + slope * f_c_ghz


def o2i_loss(f_c_ghz: float, d_2d_in_m, x_low_db=0.0, x_high_db=0.0,
             params: PropagationParams = DEFAULT_PARAMS):
    """Composite outdoor-to-indoor penetration loss.

    Combines a low-loss wall model (30% glass / 70% concrete) and a
    high-loss wall model (70% IRR glass / 30% concrete), each carrying its
    own shadow term, via a 50/50 power average of the two wall losses, and
    adds the in-building loss ``indoor_loss_rate * d_2d_in``.  Outdoor
    stations bypass this entirely (loss 0).
    """
    d_in = np.asarray(d_2d_in_m, dtype=float)
    if np.any(d_in < 0):
        raise ValueError("d_2d_in_m must be non-negative")
    l_g = material_loss("glass", f_c_ghz, params)
    l_irr = material_loss("irr_glass", f_c_ghz, params)
    l_c = material_loss("concrete", f_c_ghz, params)
    low = 5.0 - 10.0 * np.log10(0.3 * 10.0 ** (-l_g / 10.0)
                                + 0.7 * 10.0 ** (-l_c / 10.0)) + x_low_db
    high = 5.0 - 10.0 * np.log10(0.7 * 10.0 ** (-l_irr / 10.0)
                                 + 0.3 * 10.0 ** (-l_c / 10.0)) + x_high_db
    tw = 10.0 * np.log10(0.5 * 10.0 ** (low / 10.0) + 0.5 * 10.0 ** (high / 10.0))
    return tw + params.indoor_loss_rate_db_per_m * d_in


def oxygen_absorption(f_c_hz: float, d_m,
                      params: PropagationParams = DEFAULT_PARAMS):
    """Atmospheric oxygen loss, delta(f_c) dB/km over the full travel distance."""
    d = np.asarray(d_m, dtype=float)
    if np.any(d < 0):
        raise ValueError("d_m must be non-negative")
    f_ghz = f_c_hz / 1e9
    delta = 0.0
    for key_ghz, value in params.oxygen_delta_db_per_km.items():
        if abs(f_ghz - key_ghz) < 1e-6:
            delta = value
            break
    out = delta * d / 1000.0
    return out if out.ndim else float(out)


def link_loss(geom: LinkGeometry, draws: ShadowDraws,
              params: PropagationParams = DEFAULT_PARAMS, g_sm_db=0.0):
    """Total link loss: path loss, plus O2I if indoor, plus oxygen, minus
    the multipath gain hook ``g_sm_db`` (0 dB by default)."""
    pl = np.where(
        geom.is_los,
        pl_los_ci(geom.f_c_hz, geom.d_3d_m, draws.x_los_db, params),
        pl_nlos_abg(geom.f_c_hz / 1e9, geom.d_3d_m, draws.x_nlos_db, params),
    )
    total = pl + oxygen_absorption(geom.f_c_hz, geom.d_3d_m, params) - g_sm_db
    if geom.is_indoor:
        total = total + o2i_loss(geom.f_c_hz / 1e9, geom.d_2d_in_m,
                                 draws.x_o2i_low_db, draws.x_o2i_high_db, params)
    if total.ndim == 0:
        return float(total)
    return total
