"""Structural invariant checks runnable from the command line.

Each check is a plain function returning (passed, detail). run_validate
executes the whole battery at desk-scale settings, prints one line per
check plus a machine-readable JSON summary, and reports overall
success. Several checks accept an injectable implementation so the
test suite can demonstrate that deliberately broken variants (sign
flips, wrong integration boxes) are caught.
"""

from __future__ import annotations

import json
import math
import time

import numpy as np

from . import geometry
from .clock import gaussian_profile, ideal_rate
from .geometry import Scenario, classical_ratio, elapsed_inertial_time
from .integrands import TERM_LABELS, f_term_grid, gaussian_phase_coefficients
from .probability import bob_probability, inertial_probability
from .quadrature import QuadratureSpec, integrate_1d

__all__ = ["run_validate", "CHECKS"]

_RNG_SEED = 20260810


def check_trajectory_continuity(position_fn=None, velocity_fn=None):
    """Worldline and 4-velocity continuous at both junctions (100 random a, T)."""
    position_fn = position_fn or geometry.segment_center_event
    velocity_fn = velocity_fn or geometry.segment_center_velocity
    rng = np.random.default_rng(_RNG_SEED)
    worst = 0.0
    for _ in range(100):
        a = rng.uniform(0.05, 4.0)
        T = rng.uniform(0.5, 10.0)
        scale = max(abs(elapsed_inertial_time(a, T)), 1.0)
        for junction, pair in ((T / 4, (1, 2)), (3 * T / 4, (2, 3))):
            t_lo, x_lo = position_fn(pair[0], junction, a, T)
            t_hi, x_hi = position_fn(pair[1], junction, a, T)
            worst = max(worst, abs(t_hi - t_lo) / scale, abs(x_hi - x_lo) / scale)
            u_lo = velocity_fn(pair[0], junction, a, T)
            u_hi = velocity_fn(pair[1], junction, a, T)
            vscale = max(abs(u_lo[0]), 1.0)
            worst = max(worst, abs(u_hi[0] - u_lo[0]) / vscale, abs(u_hi[1] - u_lo[1]) / vscale)
    return worst < 1e-12, f"worst junction mismatch {worst:.3e} (tol 1e-12)"


def check_four_velocity_normalization():
    """(dt/dtau)^2 - (dx/dtau)^2 = 1 at 1000 random proper times."""
    rng = np.random.default_rng(_RNG_SEED + 1)
    worst = 0.0
    for _ in range(10):
        # physical sweep domain: hyperbolic args stay small enough that
        # cosh^2 - sinh^2 is meaningful at absolute 1e-10 in doubles
        aT = rng.uniform(0.0, 6.0)
        T = rng.uniform(0.5, 10.0)
        a = aT / T
        taus = rng.uniform(0.0, T, size=100)
        for tau in taus:
            seg = geometry.segment_index(tau, T)
            ut, ux = geometry.segment_center_velocity(seg, tau, a, T)
            worst = max(worst, abs(float(ut) ** 2 - float(ux) ** 2 - 1.0))
    return worst < 1e-10, f"worst normalization defect {worst:.3e} (tol 1e-10)"


def check_closure():
    """Trajectory ends at x = 0, t = elapsed inertial time."""
    rng = np.random.default_rng(_RNG_SEED + 2)
    worst = 0.0
    for _ in range(50):
        a = rng.uniform(0.05, 4.0)
        T = rng.uniform(0.5, 10.0)
        scn = Scenario(a=a, T=T, omega=1.0, sigma=0.1)
        end = geometry.bob_position(T, scn)
        scale = max(abs(end.t), 1.0)
        worst = max(worst, abs(end.x) / scale,
                    abs(end.t - elapsed_inertial_time(a, T)) / scale)
    return worst < 1e-12, f"worst closure defect {worst:.3e} (tol 1e-12)"


def check_classical_ratio_shape():
    """classical_ratio strictly decreasing on (0, 20] and valued in (0, 1]."""
    grid = np.linspace(1e-3, 20.0, 400)
    vals = np.array([classical_ratio(x) for x in grid])
    decreasing = bool(np.all(np.diff(vals) < 0))
    bounded = bool(np.all((vals > 0) & (vals <= 1.0)))
    return decreasing and bounded, f"decreasing={decreasing} bounded={bounded}"


def check_fermi_center_identity():
    """Comoving chart at X = 0 reproduces the center worldline."""
    rng = np.random.default_rng(_RNG_SEED + 3)
    worst = 0.0
    for _ in range(50):
        a = rng.uniform(0.05, 4.0)
        T = rng.uniform(0.5, 10.0)
        scn = Scenario(a=a, T=T, omega=1.0, sigma=0.1)
        tau = rng.uniform(0.0, T)
        p = geometry.bob_position(tau, scn)
        q = geometry.bob_fermi_to_inertial(tau, (0.0, 0.0, 0.0), scn)
        worst = max(worst, abs(p.t - q.t), abs(p.x - q.x))
    return worst == 0.0, f"worst X=0 mismatch {worst:.3e} (exact identity expected)"


def check_gaussian_normalization():
    """Spatial profile integrates to 1 over [-8 sigma, 8 sigma]^3."""
    sigma = 0.7
    nodes, weights = np.polynomial.legendre.leggauss(48)
    x = 8.0 * sigma * nodes
    w = 8.0 * sigma * weights
    gx = np.exp(-(x**2) / (2 * sigma**2))
    one_d = float(w @ gx) / (math.sqrt(2 * math.pi) * sigma)
    total = one_d**3
    defect = abs(total - 1.0)
    peak = gaussian_profile(np.zeros(3), sigma)
    peak_ok = abs(peak * (math.sqrt(2 * math.pi) * sigma) ** 3 - 1.0) < 1e-14
    return defect < 1e-8 and peak_ok, f"normalization defect {defect:.3e} (tol 1e-8)"


def check_kernel_symmetries():
    """Diagonal integrands conjugate-symmetric; positive Gaussian width."""
    rng = np.random.default_rng(_RNG_SEED + 4)
    scn = Scenario(a=0.5, T=4.0, omega=2.0, sigma=0.15)
    worst = 0.0
    qmin = np.inf
    for _ in range(200):
        tau, taup = rng.uniform(0, scn.T, size=2)
        theta = rng.uniform(0, np.pi)
        w = rng.uniform(0.0, 30.0)
        for (i, j) in TERM_LABELS:
            if i == j:
                v1 = f_term_grid((i, j), tau, taup, theta, w, scn)
                v2 = f_term_grid((i, j), taup, tau, theta, w, scn)
                num = abs(v1 - np.conj(v2))
                worst = max(worst, num / max(abs(v1), 1e-300))
            q, _ = gaussian_phase_coefficients((i, j), tau, taup, np.cos(theta), scn)
            qmin = min(qmin, float(q))
    ok = worst < 1e-12 and qmin > 0.0
    return ok, f"worst conjugate defect {worst:.3e} (tol 1e-12), min Gaussian width {qmin:.3e}"


def check_quadrature_determinism():
    """Identical spec produces bit-identical results."""
    spec = QuadratureSpec()
    f = lambda x: np.exp(-x * x) * np.cos(7.0 * x)
    r1 = integrate_1d(f, 0.0, 10.0, spec)
    r2 = integrate_1d(f, 0.0, 10.0, spec)
    same = r1.value == r2.value and r1.error_estimate == r2.error_estimate
    return same, "two runs bit-identical" if same else "results differ between runs"


_CLOSED_FORMS = [
    (lambda x: x, 0.0, 1.0, 0.5),
    (lambda x: x**2, 0.0, 1.0, 1.0 / 3.0),
    (lambda x: np.exp(-x), 0.0, 30.0, 1.0 - math.exp(-30.0)),
    (lambda x: np.exp(-x * x), 0.0, 40.0, math.sqrt(math.pi) / 2.0),
    (lambda x: np.cos(x), 0.0, 10.0, math.sin(10.0)),
    (lambda x: np.sin(50.0 * x), 0.0, 1.0, (1.0 - math.cos(50.0)) / 50.0),
    (lambda x: 1.0 / (1.0 + x * x), 0.0, 1.0, math.pi / 4.0),
    (lambda x: np.sqrt(np.abs(x)) * x * 0 + np.exp(-2 * x) * np.cos(20 * x), 0.0, 5.0,
     (2.0 - math.exp(-10.0) * (2.0 * math.cos(100.0) - 20.0 * math.sin(100.0))) / 404.0),
    (lambda x: x * np.exp(-x * x), 0.0, 20.0, 0.5),
    (lambda x: np.log1p(x), 0.0, 1.0, 2.0 * math.log(2.0) - 1.0),
]


def check_tolerance_monotonicity():
    """Halving rel_tol moves each result by less than its prior error bar."""
    ok = True
    details = []
    for f, lo, hi, _exact in _CLOSED_FORMS:
        r_loose = integrate_1d(f, lo, hi, QuadratureSpec(rel_tol_1d=1e-5))
        r_tight = integrate_1d(f, lo, hi, QuadratureSpec(rel_tol_1d=5e-6))
        shift = abs(r_tight.value - r_loose.value)
        if shift > max(r_loose.error_estimate, 1e-15):
            ok = False
            details.append(f"shift {shift:.2e} > est {r_loose.error_estimate:.2e}")
    return ok, "all shifts within prior error estimates" if ok else "; ".join(details)


def check_error_honesty():
    """True error at most 10x the estimate on >= 95% of the closed forms."""
    spec = QuadratureSpec()
    honest = 0
    for f, lo, hi, exact in _CLOSED_FORMS:
        r = integrate_1d(f, lo, hi, spec)
        true_err = abs(r.value.real - exact)
        if true_err <= 10.0 * max(r.error_estimate, 5e-16 * abs(exact)):
            honest += 1
    frac = honest / len(_CLOSED_FORMS)
    return frac >= 0.95, f"{honest}/{len(_CLOSED_FORMS)} honest error estimates"


def check_truncation_safety():
    """Doubling the frequency cutoff leaves 1-D results within tolerance."""
    from .integrands import alice_integrand
    from .quadrature import integrate_omega

    scn = Scenario(a=0.5, T=4.0, omega=2.0, sigma=0.1)
    base = integrate_omega(lambda w: alice_integrand(w, scn), QuadratureSpec(), scn.sigma)
    wide = integrate_omega(
        lambda w: alice_integrand(w, scn),
        QuadratureSpec(omega_cutoff_multiple=16.0),
        scn.sigma,
    )
    shift = abs(base.value - wide.value) / abs(wide.value)
    ok = shift < QuadratureSpec().rel_tol_1d and base.converged
    return ok, f"cutoff doubling moved result by {shift:.3e} (tol {QuadratureSpec().rel_tol_1d})"


def check_inertial_oracle(variant: str = "paired"):
    """Near-inertial traveling clock agrees with the inertial closed route."""
    spec = QuadratureSpec()
    scn = Scenario(a=1e-3 / 2.0, T=2.0, omega=2.0, sigma=0.1)
    try:
        bob = bob_probability(scn, spec, variant=variant)
    except ArithmeticError as exc:
        return False, f"assembly rejected: {exc}"
    ref = inertial_probability(scn.T, scn.omega, scn.sigma, spec)
    rel = abs(bob.value.real - ref.value.real) / ref.value.real
    return rel < 1e-3, f"traveling vs inertial relative gap {rel:.3e} (tol 1e-3)"


def check_ideal_rate_consistency():
    """Long-window rate matches the closed-form rate (T = 400 sigma)."""
    spec = QuadratureSpec()
    sigma, omega = 0.1, 2.0
    T = 400 * sigma
    p = inertial_probability(T, omega, sigma, spec)
    rate = ideal_rate(omega, sigma)
    rel = abs(p.value.real / T - rate) / rate
    return rel < 8e-3, f"P(T)/T vs closed-form rate: {rel:.3e} (tol 8e-3 at T=400 sigma)"


CHECKS = [
    ("trajectory_continuity", check_trajectory_continuity),
    ("four_velocity_normalization", check_four_velocity_normalization),
    ("trajectory_closure", check_closure),
    ("classical_ratio_shape", check_classical_ratio_shape),
    ("fermi_center_identity", check_fermi_center_identity),
    ("gaussian_normalization", check_gaussian_normalization),
    ("kernel_symmetries", check_kernel_symmetries),
    ("quadrature_determinism", check_quadrature_determinism),
    ("tolerance_monotonicity", check_tolerance_monotonicity),
    ("error_honesty", check_error_honesty),
    ("truncation_safety", check_truncation_safety),
    ("inertial_oracle", check_inertial_oracle),
    ("ideal_rate_consistency", check_ideal_rate_consistency),
]


def run_validate(stream=None) -> dict:
    """Run every structural check; returns the machine-readable report."""
    t_start = time.time()
    results = []
    for name, fn in CHECKS:
        t0 = time.time()
        passed, detail = fn()
        results.append({
            "check": name,
            "passed": bool(passed),
            "detail": detail,
            "seconds": round(time.time() - t0, 3),
        })
        if stream is not None:
            status = "PASS" if passed else "FAIL"
            print(f"{status} {name}: {detail}", file=stream)
    report = {
        "passed": all(r["passed"] for r in results),
        "checks": results,
        "seconds": round(time.time() - t_start, 3),
    }
    if stream is not None:
        print(json.dumps(report), file=stream)
    return report
