"""Two-level decay-clock bookkeeping.

A clock here is a two-level system prepared excited; counting decays
converts a de-excitation probability into an elapsed time through the
long-time rate. The spatial interaction profile is an isotropic
normalized Gaussian of width sigma.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ClockProfile",
    "JULIAN_YEAR_SECONDS",
    "gaussian_profile",
    "ideal_rate",
    "decay_rate_from_half_life",
    "expected_decays",
    "clock_time_from_probability",
]

JULIAN_YEAR_SECONDS = 3.15576e7


@dataclass(frozen=True)
class ClockProfile:
    """Gaussian clock: spatial extent, energy gap, coupling."""

    sigma: float
    omega: float
    lam: float = 1.0  # probabilities are reported in units of lam^2

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")
        if not self.omega >= 0:
            raise ValueError("omega must be non-negative")


def gaussian_profile(u, sigma: float):
    """Normalized isotropic Gaussian density at the 3-vector u.

    Accepts a single 3-vector or an (n, 3) array of points.
    """
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    u = np.asarray(u, dtype=float)
    r2 = np.sum(u * u, axis=-1)
    return np.exp(-r2 / (2.0 * sigma**2)) / (math.sqrt(2.0 * math.pi) * sigma) ** 3


def ideal_rate(omega: float, sigma: float) -> float:
    """Long-time de-excitation rate: omega * exp(-sigma^2 omega^2) / (2 pi)."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    return omega * math.exp(-(sigma * omega) ** 2) / (2.0 * math.pi)


def decay_rate_from_half_life(t_half: float) -> float:
    """Exponential decay rate ln(2) / t_half."""
    if t_half <= 0:
        raise ValueError("t_half must be positive")
    return math.log(2.0) / t_half


def expected_decays(n: float, rate: float, t: float) -> float:
    """Expected decay count n * rate * t in the linear (rate*t << 1) regime."""
    if rate * t > 0.1:
        warnings.warn(
            "rate*t is not small; the linear decay-count approximation degrades",
            stacklevel=2,
        )
    return n * rate * t


def clock_time_from_probability(p: float, rate: float) -> float:
    """Elapsed time the clock reports for decay probability p: p / rate."""
    if rate <= 0:
        raise ValueError("rate must be positive")
    return p / rate
