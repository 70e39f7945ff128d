"""Integrands of the de-excitation probabilities.

The inertial clock needs a single real mode integrand. The traveling
twin's probability splits into six segment-pair terms; each term's
integrand f_ij(tau, tau', theta, omega) is the complex mode density
obtained after integrating the Gaussian profile against the vacuum
two-point function in the comoving charts of segments i and j (the
azimuthal mode angle is integrated out analytically, leaving the
common prefactor omega*sin(theta)/(8 pi^2) and the internal phase
e^{i Omega (tau - tau')}).

Every f_ij is transcribed term-for-term from its displayed closed form
and is cross-checked in the test suite against a direct cubature of
the smeared construction, and against the factorized product form

    f_ij = (omega sin(theta) / 8 pi^2) e^{i Omega (tau - tau')}
           * exp(-q omega^2 + i beta omega),

whose coefficients q > 0 and beta come from the per-segment wave
coefficients below. The factorized form also powers the production
integration route, which resolves the omega axis in closed form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import Scenario

__all__ = [
    "IntegrandPoint",
    "TERM_LABELS",
    "validate_label",
    "alice_integrand",
    "inertial_integrand",
    "f_term",
    "f_term_grid",
    "segment_wave_coefficients",
    "gaussian_phase_coefficients",
]

# The six independent segment pairings; (j, i) duplicates are recovered
# by conjugation when the terms are assembled.
TERM_LABELS = ((1, 1), (2, 2), (3, 3), (1, 2), (1, 3), (2, 3))


@dataclass(frozen=True)
class IntegrandPoint:
    """A point of the four-dimensional mode integration domain."""

    tau: float
    tau_prime: float
    theta: float       # polar mode angle in [0, pi]
    omega_k: float     # mode frequency |k| >= 0

    def __post_init__(self):
        if not 0.0 <= self.theta <= np.pi:
            raise ValueError("theta must lie in [0, pi]")
        if self.omega_k < 0:
            raise ValueError("omega_k must be non-negative")


def validate_label(label) -> tuple:
    i, j = label
    if (i, j) not in TERM_LABELS:
        raise ValueError(f"unknown term label {label!r}; expected one of {TERM_LABELS}")
    return (i, j)


def sinc(x):
    """Unnormalized sinc: sin(x)/x with sinc(0) = 1."""
    return np.sinc(np.asarray(x) / np.pi)


def inertial_integrand(omega_k, T: float, omega: float, sigma: float):
    """Mode density of an inertial clock switched on for time T.

    (T/2pi)^2 e^{-sigma^2 w^2} w sinc^2((w - Omega) T / 2), vectorized in w.
    """
    w = np.asarray(omega_k, dtype=float)
    return (T / (2.0 * np.pi)) ** 2 * np.exp(-(sigma * w) ** 2) * w * sinc((w - omega) * T / 2.0) ** 2


def alice_integrand(omega_k, scn: Scenario):
    """Mode density of the inertial twin's clock.

    Algebraically identical to the inertial integrand evaluated for the
    inertial twin's elapsed time, written in terms of (a, T) directly:
    (4 sinh^2(aT/4) / pi^2 a^2) e^{-sigma^2 w^2} w sinc^2(2 (w-Omega) sinh(aT/4) / a).
    """
    w = np.asarray(omega_k, dtype=float)
    if scn.a == 0.0:
        half_time = scn.T / 2.0
    else:
        half_time = 2.0 * np.sinh(scn.a * scn.T / 4.0) / scn.a
    prefactor = half_time**2 / np.pi**2
    return prefactor * np.exp(-(scn.sigma * w) ** 2) * w * sinc((w - scn.omega) * half_time) ** 2


# ---------------------------------------------------------------------------
# factorized form: per-segment wave coefficients


def segment_wave_coefficients(seg: int, tau, mu, a: float, T: float):
    """Gaussian width and phase coefficients of segment `seg`'s comoving map.

    For a mode with frequency w and direction cosine mu relative to the
    motion axis, the smeared plane wave picked up along segment `seg`
    at proper time tau is exp(-sigma^2 (A^2 + 1 - mu^2) w^2 / 2 + i p w);
    returns the pair (A, p). Written via half-angle identities so the
    1/a factors stay finite-precision down to a -> 0 (a = 0 exactly
    gives the inertial values A = mu, p = -tau).
    """
    tau = np.asarray(tau, dtype=float)
    mu = np.asarray(mu, dtype=float)
    if a == 0.0:
        shape = np.broadcast(tau, mu).shape
        return np.broadcast_to(mu, shape).copy(), np.broadcast_to(-tau, shape).copy()
    if seg == 1:
        arg = a * tau
        big_a = mu * np.cosh(arg) - np.sinh(arg)
        p = mu * (2.0 / a) * np.sinh(arg / 2) ** 2 - np.sinh(arg) / a
    elif seg == 2:
        s = a * (tau - T / 2)
        big_a = mu * np.cosh(s) + np.sinh(s)
        p = (
            mu * (4.0 * np.sinh(a * T / 8) ** 2 - 2.0 * np.sinh(s / 2) ** 2) / a
            - (np.sinh(s) + 2.0 * np.sinh(a * T / 4)) / a
        )
    elif seg == 3:
        u = a * (tau - T)
        big_a = mu * np.cosh(u) - np.sinh(u)
        p = mu * (2.0 / a) * np.sinh(u / 2) ** 2 - (np.sinh(u) + 4.0 * np.sinh(a * T / 4)) / a
    else:
        raise ValueError("segment must be 1, 2 or 3")
    return big_a, p


def gaussian_phase_coefficients(label, tau, tau_prime, mu, scn: Scenario):
    """Coefficients (q, beta) of the factorized integrand for one pair.

    The mode integrand of pair (i, j) is exactly
    omega * exp(-q omega^2 + i beta omega) up to the common prefactor
    and internal phase; q > 0 whenever sigma > 0.
    """
    i, j = validate_label(label)
    a_i, p_i = segment_wave_coefficients(i, tau, mu, scn.a, scn.T)
    a_j, p_j = segment_wave_coefficients(j, tau_prime, mu, scn.a, scn.T)
    mu = np.asarray(mu, dtype=float)
    q = 0.5 * scn.sigma**2 * (a_i**2 + a_j**2 + 2.0 * (1.0 - mu**2))
    beta = p_i - p_j
    return q, beta


def _factorized_grid(label, tau, taup, theta, omega, scn: Scenario):
    mu = np.cos(theta)
    q, beta = gaussian_phase_coefficients(label, tau, taup, mu, scn)
    return (
        omega
        * np.sin(theta)
        / (8.0 * np.pi**2)
        * np.exp(1j * scn.omega * (tau - taup) - q * omega**2 + 1j * beta * omega)
    )


# ---------------------------------------------------------------------------
# verbatim transcriptions of the six displayed closed forms (require a > 0)


def _f11(tau, taup, theta, omega, a, T, gap, sg):
    return (
        (1.0 / (8.0 * np.pi**2))
        * np.exp(
            0.125
            * (
                -(sg**2) * omega**2
                + 8j * (tau - taup) * gap
                + 3.0 * sg**2 * omega**2 * np.cos(2 * theta)
                - (omega / a)
                * (
                    -8j * np.cos(theta) * np.cosh(a * tau)
                    + 4.0 * a * sg**2 * omega * np.cos(theta) ** 2 * np.cosh(a * tau) ** 2
                    + 8j * (np.cos(theta) * np.cosh(a * taup) + np.sinh(a * tau) - np.sinh(a * taup))
                    + a
                    * sg**2
                    * omega
                    * (
                        2.0 * np.cosh(2 * a * tau)
                        + (3.0 + np.cos(2 * theta)) * np.cosh(2 * a * taup)
                        - 4.0 * np.cos(theta) * (np.sinh(2 * a * tau) + np.sinh(2 * a * taup))
                    )
                )
            )
        )
        * omega
        * np.sin(theta)
    )


def _f22(tau, taup, theta, omega, a, T, gap, sg):
    return (
        (1.0 / (8.0 * np.pi**2))
        * np.exp(
            1j * (tau - taup) * gap
            + (omega / (8.0 * a))
            * (
                -8j * np.cos(theta) * np.cosh(a / 2 * (T - 2 * tau))
                + 8j
                * (
                    np.cos(theta) * np.cosh(a / 2 * (T - 2 * taup))
                    + np.sinh(a / 2 * (T - 2 * tau))
                    - np.sinh(a / 2 * (T - 2 * taup))
                )
                - a
                * sg**2
                * omega
                * (
                    (3.0 + np.cos(2 * theta)) * np.cosh(a * (T - 2 * tau))
                    + (3.0 + np.cos(2 * theta)) * np.cosh(a * (T - 2 * taup))
                    + 4.0 * np.sin(theta) ** 2
                    - 4.0 * np.cos(theta) * (np.sinh(a * (T - 2 * tau)) + np.sinh(a * (T - 2 * taup)))
                )
            )
        )
        * omega
        * np.sin(theta)
    )


def _f33(tau, taup, theta, omega, a, T, gap, sg):
    return (
        (1.0 / (8.0 * np.pi**2))
        * np.exp(
            1j * (tau - taup) * gap
            - (sg**2 * omega**2 / 8.0)
            * (
                (3.0 + np.cos(2 * theta)) * np.cosh(2 * a * (T - tau))
                + (3.0 + np.cos(2 * theta)) * np.cosh(2 * a * (-T + taup))
                + 4.0
                * (
                    np.sin(theta) ** 2
                    + np.cos(theta) * (np.sinh(2 * a * (T - tau)) + np.sinh(2 * a * (T - taup)))
                )
            )
            + (1j * omega / a)
            * (
                np.cos(theta) * (np.cosh(a * (-T + tau)) - np.cosh(a * (-T + taup)))
                + np.sinh(a * (T - tau))
                + np.sinh(a * (-T + taup))
            )
        )
        * omega
        * np.sin(theta)
    )


def _f12(tau, taup, theta, omega, a, T, gap, sg):
    return (
        (1.0 / (8.0 * np.pi**2))
        * np.exp(
            0.125
            * (
                -2.0 * sg**2 * omega**2
                + 8j * (tau - taup) * gap
                + 2.0 * sg**2 * omega**2 * np.cos(2 * theta)
                + (omega / a)
                * (
                    -a
                    * sg**2
                    * omega
                    * (3.0 + np.cos(2 * theta))
                    * (np.cosh(2 * a * tau) + np.cosh(a * (T - 2 * taup)))
                    + 8j
                    * (
                        2.0 * np.sinh(a * T / 4)
                        - np.sinh(a * tau)
                        - np.sinh(a / 2 * (T - 2 * taup))
                    )
                    + 4.0
                    * np.cos(theta)
                    * (
                        -4j * np.cosh(a * T / 4)
                        + 2j * np.cosh(a * tau)
                        + 2j * np.cosh(a / 2 * (T - 2 * taup))
                        + a * sg**2 * omega * (np.sinh(2 * a * tau) + np.sinh(a * (T - 2 * taup)))
                    )
                )
            )
        )
        * omega
        * np.sin(theta)
    )


def _f13(tau, taup, theta, omega, a, T, gap, sg):
    return (
        (1.0 / (8.0 * np.pi**2))
        * np.exp(
            0.125
            * (
                -(sg**2) * omega**2
                + 8j * (tau - taup) * gap
                + 3.0 * sg**2 * omega**2 * np.cos(2 * theta)
                - (omega / a)
                * (
                    -8j * np.cos(theta) * np.cosh(a * tau)
                    + 4.0 * a * sg**2 * omega * np.cos(theta) ** 2 * np.cosh(a * tau) ** 2
                    + 8j
                    * (
                        np.cos(theta) * np.cosh(a * (-T + taup))
                        - 4.0 * np.sinh(a * T / 4)
                        + np.sinh(a * tau)
                        + np.sinh(a * (T - taup))
                    )
                    + a
                    * sg**2
                    * omega
                    * (
                        2.0 * np.cosh(2 * a * tau)
                        + (3.0 + np.cos(2 * theta)) * np.cosh(2 * a * (-T + taup))
                        - 4.0 * np.cos(theta) * (np.sinh(2 * a * tau) + np.sinh(2 * a * (-T + taup)))
                    )
                )
            )
        )
        * omega
        * np.sin(theta)
    )


def _f23(tau, taup, theta, omega, a, T, gap, sg):
    return (
        (1.0 / (8.0 * np.pi**2))
        * np.exp(
            0.125
            * (
                -2.0 * sg**2 * omega**2
                + 8j * (tau - taup) * gap
                + 2.0 * sg**2 * omega**2 * np.cos(2 * theta)
                + (omega / a)
                * (
                    -a
                    * sg**2
                    * omega
                    * (3.0 + np.cos(2 * theta))
                    * (np.cosh(a * (T - 2 * tau)) + np.cosh(2 * a * (-T + taup)))
                    + 8j
                    * (
                        2.0 * np.sinh(a * T / 4)
                        + np.sinh(a / 2 * (T - 2 * tau))
                        + np.sinh(a * (-T + taup))
                    )
                    + 4.0
                    * np.cos(theta)
                    * (
                        4j * np.cosh(a * T / 4)
                        - 2j * np.cosh(a / 2 * (T - 2 * tau))
                        - 2j * np.cosh(a * (-T + taup))
                        + a * sg**2 * omega * (np.sinh(a * (T - 2 * tau)) + np.sinh(2 * a * (-T + taup)))
                    )
                )
            )
        )
        * omega
        * np.sin(theta)
    )


_F_FUNCS = {
    (1, 1): _f11,
    (2, 2): _f22,
    (3, 3): _f33,
    (1, 2): _f12,
    (1, 3): _f13,
    (2, 3): _f23,
}


def f_term_grid(label, tau, taup, theta, omega, scn: Scenario):
    """Segment-pair mode integrand, vectorized over equal-shape arrays.

    Uses the transcribed closed form for a > 0; a = 0 falls back to the
    factorized inertial-limit form (the closed forms carry explicit 1/a
    factors whose limits the factorized coefficients evaluate exactly).
    """
    label = validate_label(label)
    tau = np.asarray(tau, dtype=float)
    taup = np.asarray(taup, dtype=float)
    theta = np.asarray(theta, dtype=float)
    omega = np.asarray(omega, dtype=float)
    if scn.a == 0.0:
        return _factorized_grid(label, tau, taup, theta, omega, scn)
    return _F_FUNCS[label](tau, taup, theta, omega, scn.a, scn.T, scn.omega, scn.sigma)


def f_term(label, p: IntegrandPoint, scn: Scenario) -> complex:
    """Value of one segment-pair integrand at a single domain point."""
    return complex(f_term_grid(label, p.tau, p.tau_prime, p.theta, p.omega_k, scn))
