"""Closed-form kinematics of the two twins in Minkowski spacetime (c = 1).

One twin stays inertial at the spatial origin; the traveling twin
follows a three-segment worldline with proper acceleration +a for the
first quarter of proper time, -a for the middle half, and +a again for
the last quarter, returning to rest at the starting position's future.
Everything here is exact closed-form kinematics: worldlines, the
comoving (Fermi normal) charts of each segment, elapsed-time relations
and the classical proper-time ratio.

Metric signature is (-,+,+,+). All hyperbolic expressions are written
via sinh half-angle identities such as cosh(x)-1 = 2 sinh^2(x/2), so
they stay accurate for arbitrarily small a*T without series switches;
a = 0 is handled as the exact inertial limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Scenario",
    "Event",
    "PiecewiseTrajectory",
    "Segment",
    "bob_position",
    "bob_fermi_to_inertial",
    "elapsed_inertial_time",
    "classical_ratio",
    "max_relative_velocity",
    "fermi_chart_samples",
    "segment_index",
    "segment_center_event",
    "segment_center_velocity",
    "segment_fermi_event",
]

# Fermi charts of the accelerated segments degenerate a proper distance
# 1/a from the worldline; beyond sigma*a = 0.5 the Gaussian tail starts
# to probe that region and results carry a metadata warning.
CHART_WARN_SIGMA_A = 0.5


@dataclass(frozen=True)
class Scenario:
    """Physical parameters of one twin-paradox instance.

    a:      proper acceleration of the traveling twin (inverse time)
    T:      traveling twin's total proper time
    omega:  clock energy gap
    sigma:  clock spatial extent, equal to its light-crossing time
    lam:    coupling strength (kept at 1; probabilities carry lam^2)
    t0:     reference timescale used to express dimensionless sweeps
    """

    a: float
    T: float
    omega: float
    sigma: float
    lam: float = 1.0
    t0: float = 1.0

    def __post_init__(self):
        if not self.a >= 0:
            raise ValueError("a must be non-negative")
        if not self.T > 0:
            raise ValueError("T must be positive")
        if not self.sigma > 0:
            raise ValueError("sigma must be positive (the pointlike limit diverges)")
        if not self.omega >= 0:
            raise ValueError("omega must be non-negative")
        if not self.t0 > 0:
            raise ValueError("t0 must be positive")

    @property
    def aT(self) -> float:
        """Dimensionless control parameter fixing the classical ratio."""
        return self.a * self.T

    def warnings(self) -> list:
        out = []
        if self.sigma * self.a > CHART_WARN_SIGMA_A:
            out.append(
                f"sigma*a = {self.sigma * self.a:.3g} exceeds {CHART_WARN_SIGMA_A}: "
                "clock tail approaches the comoving-chart horizon"
            )
        return out


@dataclass(frozen=True)
class Event:
    """Spacetime point in inertial coordinates, signature (-,+,+,+)."""

    t: float
    x: float
    y: float = 0.0
    z: float = 0.0


def segment_index(tau, T: float) -> int:
    """Segment number (1, 2 or 3) owning proper time tau.

    Junction times belong to the later segment; both branches agree
    there, so the tie-break is observationally irrelevant but fixed.
    """
    if tau < 0 or tau > T:
        raise ValueError(f"tau = {tau} outside the trajectory range [0, {T}]")
    if tau < T / 4:
        return 1
    if tau < 3 * T / 4:
        return 2
    return 3


def segment_center_event(seg: int, tau, a: float, T: float):
    """Worldline point (t, x) of segment `seg` evaluated at tau (vectorized).

    The middle-segment spatial formula is the sign-corrected,
    C1-continuous form -(1/a) cosh(a(tau - T/2)) + (2/a) cosh(aT/4) - 1/a,
    the one its own comoving chart reproduces on the worldline.
    """
    tau = np.asarray(tau, dtype=float)
    if a == 0.0:
        return tau.copy(), np.zeros_like(tau)
    if seg == 1:
        t = np.sinh(a * tau) / a
        x = 2.0 * np.sinh(a * tau / 2) ** 2 / a
    elif seg == 2:
        s = a * (tau - T / 2)
        t = (np.sinh(s) + 2 * math.sinh(a * T / 4)) / a
        x = (4 * math.sinh(a * T / 8) ** 2 - 2 * np.sinh(s / 2) ** 2) / a
    elif seg == 3:
        u = a * (tau - T)
        t = (np.sinh(u) + 4 * math.sinh(a * T / 4)) / a
        x = 2.0 * np.sinh(u / 2) ** 2 / a
    else:
        raise ValueError("segment must be 1, 2 or 3")
    return t, x


def segment_center_velocity(seg: int, tau, a: float, T: float):
    """4-velocity components (dt/dtau, dx/dtau) of segment `seg` at tau."""
    tau = np.asarray(tau, dtype=float)
    if a == 0.0:
        return np.ones_like(tau), np.zeros_like(tau)
    if seg == 1:
        arg = a * tau
        return np.cosh(arg), np.sinh(arg)
    if seg == 2:
        s = a * (tau - T / 2)
        return np.cosh(s), -np.sinh(s)
    if seg == 3:
        u = a * (tau - T)
        return np.cosh(u), np.sinh(u)
    raise ValueError("segment must be 1, 2 or 3")


def segment_fermi_event(seg: int, tau, big_x, a: float, T: float):
    """Inertial (t, x) of the comoving-chart point (tau, X) on segment `seg`."""
    tau = np.asarray(tau, dtype=float)
    big_x = np.asarray(big_x, dtype=float)
    t0, x0 = segment_center_event(seg, tau, a, T)
    if a == 0.0:
        return t0, x0 + big_x
    if seg == 1:
        arg = a * tau
    elif seg == 2:
        arg = a * (tau - T / 2)
    elif seg == 3:
        arg = a * (tau - T)
    else:
        raise ValueError("segment must be 1, 2 or 3")
    sign = -1.0 if seg == 2 else 1.0
    return t0 + sign * big_x * np.sinh(arg), x0 + big_x * np.cosh(arg)


@dataclass(frozen=True)
class Segment:
    """One uniformly accelerated stretch: its interval and its two maps."""

    index: int      # 1, 2 or 3
    tau_lo: float
    tau_hi: float
    a: float
    T: float

    def position(self, tau):
        """Center worldline (t, x) at proper time tau (vectorized)."""
        return segment_center_event(self.index, tau, self.a, self.T)

    def fermi(self, tau, big_x):
        """Comoving-chart point (tau, X) in inertial (t, x) (vectorized)."""
        return segment_fermi_event(self.index, tau, big_x, self.a, self.T)


@dataclass(frozen=True)
class PiecewiseTrajectory:
    """The traveling twin's three-segment worldline and its comoving charts."""

    a: float
    T: float

    @classmethod
    def from_scenario(cls, scn: Scenario) -> "PiecewiseTrajectory":
        return cls(a=scn.a, T=scn.T)

    @property
    def intervals(self):
        """Proper-time intervals partitioning [0, T], half-open inside."""
        T = self.T
        return ((0.0, T / 4), (T / 4, 3 * T / 4), (3 * T / 4, T))

    @property
    def segments(self):
        """The three segment records with their center and chart maps."""
        return tuple(
            Segment(k + 1, lo, hi, self.a, self.T)
            for k, (lo, hi) in enumerate(self.intervals)
        )

    def position(self, tau: float) -> Event:
        seg = segment_index(tau, self.T)
        t, x = segment_center_event(seg, tau, self.a, self.T)
        return Event(float(t), float(x))

    def fermi_to_inertial(self, tau: float, xi) -> Event:
        seg = segment_index(tau, self.T)
        big_x, y, z = (float(c) for c in xi)
        t, x = segment_fermi_event(seg, tau, big_x, self.a, self.T)
        return Event(float(t), float(x), y, z)


def bob_position(tau: float, scn: Scenario) -> Event:
    """Inertial coordinates of the traveling twin at proper time tau."""
    return PiecewiseTrajectory.from_scenario(scn).position(tau)


def bob_fermi_to_inertial(tau: float, xi, scn: Scenario) -> Event:
    """Map the comoving-chart point (tau, X, y, z) to inertial coordinates."""
    return PiecewiseTrajectory.from_scenario(scn).fermi_to_inertial(tau, xi)


def elapsed_inertial_time(a: float, T: float) -> float:
    """Inertial twin's elapsed time when the twins reunite: (4/a) sinh(aT/4)."""
    if a < 0:
        raise ValueError("a must be non-negative")
    if T <= 0:
        raise ValueError("T must be positive")
    if a == 0.0:
        return T
    return 4.0 * math.sinh(a * T / 4.0) / a


def classical_ratio(aT: float) -> float:
    """Classical proper-time ratio T_bob / T_alice = aT / (4 sinh(aT/4))."""
    if aT < 0:
        raise ValueError("aT must be non-negative")
    x = aT / 4.0
    return 1.0 if x == 0.0 else x / math.sinh(x)


def max_relative_velocity(aT: float) -> float:
    """Peak speed of the traveling twin relative to the inertial one."""
    if aT < 0:
        raise ValueError("aT must be non-negative")
    return math.tanh(aT / 4.0)


def fermi_chart_samples(scn: Scenario, tau_grid, x_grid) -> np.ndarray:
    """Sample the comoving chart on a (tau, X) grid for rendering.

    Returns an array of rows (tau, X, t, x); row order is tau-major in
    the order the grids were given. Grids must stay within [0, T].
    """
    rows = []
    for tau in np.asarray(tau_grid, dtype=float):
        seg = segment_index(float(tau), scn.T)
        xs = np.asarray(x_grid, dtype=float)
        t, x = segment_fermi_event(seg, float(tau), xs, scn.a, scn.T)
        t = np.broadcast_to(t, xs.shape)
        rows.append(np.column_stack([np.full(xs.shape, tau), xs, t, x]))
    return np.concatenate(rows, axis=0) if rows else np.empty((0, 4))
