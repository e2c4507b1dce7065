"""Per-link budget: power allocation, noise, coupling loss and cell association."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConfigError

#: (bandwidth Hz, scaled-scheme transmit power dBm) per standard carrier, GHz keyed
BANDWIDTH_HZ = {2.0: 20e6, 10.0: 300e6, 30.0: 500e6, 60.0: 1000e6, 100.0: 2000e6}
SCALED_PTX_DBM = {2.0: 44.0, 10.0: 55.8, 30.0: 58.0, 60.0: 61.0, 100.0: 64.0}
CONSTANT_PTX_DBM = 44.0

NOISE_DENSITY_DBM_HZ = -174.0

#: links.csv column order
LINK_CSV_COLUMNS = ("ms_id", "sector_id", "d_2d", "d_3d", "is_los", "pl",
                    "l_o2i", "l_oa", "g_tx", "g_sm", "coupling_loss", "p_rx")


@dataclass(frozen=True)
class PowerAllocation:
    scheme: str  # "scaled" | "constant"
    f_c_ghz: float
    bandwidth_hz: float
    p_tx_dbm: float


@dataclass(frozen=True)
class LinkRecord:
    """One sector-to-station link with every budget term in dB/dBm."""

    ms_id: int
    sector_id: int
    d_2d_m: float
    d_3d_m: float
    is_los: bool
    pl_db: float
    l_o2i_db: float
    l_oa_db: float
    g_tx_dbi: float
    g_rx_dbi: float
    g_sm_db: float
    coupling_loss_db: float
    p_rx_dbm: float


def power_allocation(scheme: str, f_c_ghz: float, bandwidth_hz: float | None = None,
                     p_tx_dbm: float | None = None) -> PowerAllocation:
    """Bandwidth and transmit power for a carrier under one allocation scheme.

    The five standard carriers (2/10/30/60/100 GHz) resolve from the
    built-in table; any other frequency requires explicit ``bandwidth_hz``
    and, for the scaled scheme, ``p_tx_dbm`` overrides.
    """
    if scheme not in ("scaled", "constant"):
        raise ConfigError(f"power_scheme must be 'scaled' or 'constant', got {scheme!r}")
    key = None
    for k in BANDWIDTH_HZ:
        if abs(f_c_ghz - k) < 1e-9:
            key = k
            break
    if bandwidth_hz is None:
        if key is None:
            raise ConfigError(
                f"f_c_ghz={f_c_ghz:g} is not a standard carrier; set bandwidth_hz")
        bandwidth_hz = BANDWIDTH_HZ[key]
    if p_tx_dbm is None:
        if scheme == "constant":
            p_tx_dbm = CONSTANT_PTX_DBM
        elif key is not None:
            p_tx_dbm = SCALED_PTX_DBM[key]
        else:
            raise ConfigError(
                f"f_c_ghz={f_c_ghz:g} is not a standard carrier; set tx_power_dbm")
    return PowerAllocation(scheme=scheme, f_c_ghz=f_c_ghz,
                           bandwidth_hz=float(bandwidth_hz), p_tx_dbm=float(p_tx_dbm))


def noise_power(bandwidth_hz: float, noise_figure_db: float,
                noise_density_dbm_hz: float = NOISE_DENSITY_DBM_HZ) -> float:
    """Total receiver noise power in dBm over the given bandwidth."""
    if bandwidth_hz <= 0:
        raise ValueError(f"bandwidth_hz must be positive, got {bandwidth_hz}")
    return noise_density_dbm_hz + 10.0 * np.log10(bandwidth_hz) + noise_figure_db


def coupling_loss(g_tx_dbi, g_rx_dbi, pl_db, l_o2i_db=0.0, l_oa_db=0.0, g_sm_db=0.0):
    """Net gain minus loss between sector and station in dB:
    ``g_tx + g_rx - (pl + l_o2i + l_oa - g_sm)``."""
    return g_tx_dbi + g_rx_dbi - (pl_db + l_o2i_db + l_oa_db - g_sm_db)


def cl_snr0_threshold(p_tx_dbm: float, noise_total_dbm: float) -> float:
    """Coupling loss at which received power equals total noise power.

    Links with coupling loss below this value operate noise-limited,
    at or above it interference-limited.
    """
    return noise_total_dbm - p_tx_dbm


def associate(links: Sequence[LinkRecord]) -> int:
    """Serving sector for one station: maximum coupling loss, ties to the
    lowest sector_id."""
    if not links:
        raise RuntimeError("associate called with an empty link set")
    best = links[0]
    for rec in links[1:]:
        if rec.coupling_loss_db > best.coupling_loss_db or (
                rec.coupling_loss_db == best.coupling_loss_db
                and rec.sector_id < best.sector_id):
            best = rec
    return best.sector_id
