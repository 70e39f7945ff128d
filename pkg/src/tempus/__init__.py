"""tempus: finite-sized quantum clocks on twin-paradox worldlines.

Computes leading-order de-excitation probabilities of Gaussian-smeared
two-level clocks on inertial and piecewise uniformly accelerated
trajectories, and the resulting quantum corrections to the classical
twin-paradox proper-time ratio.
"""

from .clock import (
    ClockProfile,
    clock_time_from_probability,
    decay_rate_from_half_life,
    expected_decays,
    gaussian_profile,
    ideal_rate,
)
from .geometry import (
    Event,
    PiecewiseTrajectory,
    Scenario,
    Segment,
    bob_fermi_to_inertial,
    bob_position,
    classical_ratio,
    elapsed_inertial_time,
    fermi_chart_samples,
    max_relative_velocity,
)
from .integrands import IntegrandPoint, TERM_LABELS, alice_integrand, f_term, inertial_integrand
from .probability import (
    TwinResult,
    alice_probability,
    bob_probability,
    bob_term,
    inertial_deviation,
    inertial_probability,
    twin_ratio,
)
from .quadrature import IntegralResult, QuadratureSpec, integrate_1d, integrate_4d, integrate_omega
from .sweeps import SweepConfig, SweepTable, load_config, run_chart_export, run_inertial_sweep, run_twin_sweep

__version__ = "0.1.0"

__all__ = [
    "ClockProfile", "Event", "IntegralResult", "IntegrandPoint", "PiecewiseTrajectory",
    "QuadratureSpec", "Scenario", "Segment", "SweepConfig", "SweepTable", "TERM_LABELS", "TwinResult",
    "alice_integrand", "alice_probability", "bob_fermi_to_inertial", "bob_position",
    "bob_probability", "bob_term", "classical_ratio", "clock_time_from_probability",
    "decay_rate_from_half_life", "elapsed_inertial_time", "expected_decays", "f_term",
    "fermi_chart_samples", "gaussian_profile", "ideal_rate", "inertial_deviation",
    "inertial_integrand", "inertial_probability", "integrate_1d", "integrate_4d",
    "integrate_omega", "load_config", "max_relative_velocity", "run_chart_export",
    "run_inertial_sweep", "run_twin_sweep", "twin_ratio",
]
