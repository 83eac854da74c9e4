"""Additive exponential noise channel: noise law, capacity, input laws.

The channel adds non-negative exponential noise to a non-negative
amplitude.  With the mean transmitted amplitude normalized to one, the
SNR ``gamma`` is the reciprocal of the mean noise amplitude, and the
capacity is ``log2(1 + gamma)`` bits per channel use.

All densities are also exposed in the natural-log domain, which is what
the estimators consume; log densities never underflow at high SNR.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "ChannelParams",
    "InputDistribution",
    "noise_pdf",
    "sample_noise",
    "transition_log_density",
    "capacity",
    "capacity_snr",
    "capacity_snr_db",
    "optimal_input",
    "surrogate_pdf",
    "db_to_linear",
    "linear_to_db",
]


def db_to_linear(snr_db: float) -> float:
    return 10.0 ** (snr_db / 10.0)


def linear_to_db(gamma: float) -> float:
    if gamma <= 0:
        raise ValueError(f"linear SNR must be positive, got {gamma}")
    return 10.0 * math.log10(gamma)


@dataclass(frozen=True)
class ChannelParams:
    """Linear SNR with the mean signal amplitude fixed to one."""

    gamma: float

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")

    @classmethod
    def from_db(cls, snr_db: float) -> "ChannelParams":
        return cls(gamma=db_to_linear(snr_db))

    @property
    def noise_mean(self) -> float:
        return 1.0 / self.gamma

    @property
    def snr_db(self) -> float:
        return linear_to_db(self.gamma)


def noise_pdf(n, noise_mean: float):
    """Density of the exponential noise: exp(-n/mean)/mean for n >= 0."""
    if not noise_mean > 0:
        raise ValueError(f"noise mean must be positive, got {noise_mean}")
    n = np.asarray(n, dtype=np.float64)
    out = np.where(n >= 0, np.exp(-n / noise_mean) / noise_mean, 0.0)
    return out if out.ndim else float(out)


def sample_noise(rng: np.random.Generator, noise_mean: float, size=None):
    """Draw exponential noise by inverting the CDF: -mean*ln(1-U)."""
    if not noise_mean > 0:
        raise ValueError(f"noise mean must be positive, got {noise_mean}")
    u = rng.random(size)
    return -noise_mean * np.log1p(-u)


def transition_log_density(y, x, gamma: float):
    """ln p(y|x) = ln(gamma) - gamma*(y - x) for y >= x, else -inf.

    The step at y == x is non-strict: zero noise is a valid channel
    realization, so the density is gamma exactly at y == x.
    """
    if not gamma > 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    y = np.asarray(y, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    diff = y - x
    out = np.where(diff >= 0, math.log(gamma) - gamma * diff, -np.inf)
    return out if out.ndim else float(out)


def capacity(gamma):
    """Channel capacity log2(1 + gamma) in bits per channel use."""
    gamma = np.asarray(gamma, dtype=np.float64)
    if np.any(gamma < 0):
        raise ValueError("linear SNR must be non-negative")
    out = np.log2(1.0 + gamma)
    return out if out.ndim else float(out)


def capacity_snr(rate):
    """Linear SNR at which capacity equals ``rate``: 2**rate - 1."""
    rate = np.asarray(rate, dtype=np.float64)
    if np.any(rate < 0):
        raise ValueError("rate must be non-negative")
    out = np.exp2(rate) - 1.0
    return out if out.ndim else float(out)


def capacity_snr_db(rate: float) -> float:
    """SNR in dB at which capacity equals ``rate`` (rate > 0)."""
    return linear_to_db(capacity_snr(rate))


@dataclass(frozen=True)
class InputDistribution:
    """Mixed input law: a point mass at zero plus a continuous density."""

    point_mass_at_zero: float
    density: Callable[[np.ndarray], np.ndarray]


def optimal_input(gamma: float) -> InputDistribution:
    """Capacity-achieving input: mass 1/(gamma+1) at zero plus an
    exponential tail of rate gamma/(gamma+1), mean amplitude one."""
    if not gamma > 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    rate = gamma / (gamma + 1.0)
    coeff = rate * rate

    def density(x):
        x = np.asarray(x, dtype=np.float64)
        out = np.where(x >= 0, coeff * np.exp(-rate * x), 0.0)
        return out if out.ndim else float(out)

    return InputDistribution(point_mass_at_zero=1.0 / (gamma + 1.0), density=density)


def surrogate_pdf(x, gamma: float):
    """Two-sided continuous stand-in for the optimal input law.

    A Laplace-like even density on the whole real line whose positive
    half matches the shape of the optimal input's continuous part; it is
    the density whose equal-mass slices define the log constellations.
    """
    if not gamma > 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    rate = gamma / (gamma + 1.0)
    x = np.asarray(x, dtype=np.float64)
    out = 0.5 * rate * np.exp(-rate * np.abs(x))
    return out if out.ndim else float(out)
