"""Sector transmit antenna pattern and mobile-station receive gain."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class AntennaPattern:
    """Synthesised vertical-beam sector pattern, parabolic in dB.

    Defaults model a 10-element uniform vertical array: 17.6 dBi peak
    gain, 10.2 degree elevation HPBW, electrically tilted to 102 degrees
    from zenith, with a 70 degree azimuth HPBW.  The elevation attenuation
    ceiling is the first-sidelobe level of a uniform 10-element array
    (13 dB below the main lobe); the azimuth ceiling is the sector
    front-to-back ratio.
    """

    g_max_dbi: float = 17.6
    hpbw_v_deg: float = 10.2
    downtilt_deg: float = 102.0
    hpbw_h_deg: float = 70.0
    sla_v_db: float = 13.0
    front_back_db: float = 25.0

    def __post_init__(self):
        if not np.isfinite(self.g_max_dbi):
            raise ValueError("g_max_dbi must be finite")
        if self.hpbw_v_deg <= 0 or self.hpbw_h_deg <= 0:
            raise ValueError("half-power beamwidths must be positive")
        if self.sla_v_db < 0 or self.front_back_db < 0:
            raise ValueError("attenuation floors must be non-negative")


DEFAULT_PATTERN = AntennaPattern()


def sector_gain(pattern: AntennaPattern, theta_deg, phi_deg):
    """Gain in dBi toward (theta, phi).

    theta is measured from zenith in [0, 180]; phi from the sector
    boresight in (-180, 180].  Elevation and azimuth attenuations are
    parabolic in the angle offset, individually capped at ``sla_v_db``
    and ``front_back_db``.
    """
    theta = np.asarray(theta_deg, dtype=float)
    phi = np.asarray(phi_deg, dtype=float)
    if np.any(theta < 0) or np.any(theta > 180):
        raise ValueError("theta_deg must lie in [0, 180]")
    if np.any(phi <= -180) or np.any(phi > 180):
        raise ValueError("phi_deg must lie in (-180, 180]")
    a_v = np.minimum(12.0 * ((theta - pattern.downtilt_deg) / pattern.hpbw_v_deg) ** 2,
                     pattern.sla_v_db)
    a_h = np.minimum(12.0 * (phi / pattern.hpbw_h_deg) ** 2, pattern.front_back_db)
    gain = pattern.g_max_dbi - a_v - a_h
    return gain if gain.ndim else float(gain)


def ms_gain(gain_dbi: float = 0.0) -> float:
    """Receive gain of the single-element station antenna (isotropic by default)."""
    return float(gain_dbi)
