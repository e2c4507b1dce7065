"""Geometry metric (long-term downlink SINR) and empirical CDF statistics."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

NOISE_LIMITED = "noise_limited"
INTERFERENCE_LIMITED = "interference_limited"


@dataclass(frozen=True)
class GeometryResult:
    ms_id: int
    gm_db: float
    serving_sector: int
    regime: str


@dataclass(frozen=True)
class CdfSeries:
    """Sorted empirical distribution with percentile and fraction queries."""

    samples: np.ndarray  # ascending, float64

    @classmethod
    def from_samples(cls, samples) -> "CdfSeries":
        arr = np.sort(np.asarray(samples, dtype=float).ravel())
        if arr.size == 0:
            raise ValueError("empirical CDF needs at least one sample")
        return cls(samples=arr)

    @property
    def n(self) -> int:
        return int(self.samples.size)

    def fraction_below(self, x: float) -> float:
        """Fraction of samples <= x."""
        return float(np.searchsorted(self.samples, x, side="right")) / self.n

    def percentile(self, p: float) -> float:
        """Smallest sample s with fraction_below(s) >= p, for p in [0, 1]."""
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {p}")
        idx = max(math.ceil(p * self.n - 1e-9) - 1, 0)
        return float(self.samples[idx])

    def median(self) -> float:
        return self.percentile(0.5)


def empirical_cdf(samples) -> CdfSeries:
    """Build a CdfSeries from an iterable of dB values."""
    return CdfSeries.from_samples(samples)


def geometry_metric(p_rx_dbm, serving, noise_total_dbm: float):
    """Long-term downlink SINR per station, in dB.

    Parameters
    ----------
    p_rx_dbm : (..., n_sectors) received powers in dBm from every sector
        (-inf marks an absent contribution).
    serving : serving sector index (int, or int array matching the
        leading dimensions).
    noise_total_dbm : total noise power in dBm.

    Returns
    -------
    10*log10(serving power / (noise + sum of all other sectors' powers)),
    with linear quantities in mW.
    """
    p = np.atleast_2d(np.asarray(p_rx_dbm, dtype=float))
    if p.shape[-1] < 2:
        raise RuntimeError("geometry metric needs at least 2 links per station")
    serv = np.asarray(serving, dtype=int).reshape(p.shape[:-1])
    lin = 10.0 ** (p / 10.0)
    onehot = np.zeros_like(lin)
    np.put_along_axis(onehot, serv[..., None], 1.0, axis=-1)
    serving_lin = np.take_along_axis(lin, serv[..., None], axis=-1)[..., 0]
    interference = (lin * (1.0 - onehot)).sum(axis=-1)
    noise_lin = 10.0 ** (noise_total_dbm / 10.0)
    gm = 10.0 * np.log10(serving_lin / (noise_lin + interference))
    if np.ndim(p_rx_dbm) == 1:
        return float(gm[0])
    return gm


def classify_regime(coupling_loss_db: float, threshold_db: float) -> str:
    """Noise-limited below the CL_SNR=0 threshold, interference-limited at
    or above it."""
    return NOISE_LIMITED if coupling_loss_db < threshold_db else INTERFERENCE_LIMITED
