"""Adaptive engine: closed forms, truncation, iterated cubature, honesty."""

import math

import numpy as np
import pytest

from tempus.geometry import Scenario
from tempus.integrands import alice_integrand, f_term_grid
from tempus.quadrature import (
    IntegralResult,
    QuadratureSpec,
    integrate_1d,
    integrate_4d,
    integrate_omega,
)
from tempus.validate import check_error_honesty, check_tolerance_monotonicity

SPEC = QuadratureSpec()


class TestSpecValidation:
    def test_rejects_bad_fields(self):
        with pytest.raises(ValueError):
            QuadratureSpec(rel_tol_1d=0.0)
        with pytest.raises(ValueError):
            QuadratureSpec(omega_cutoff_multiple=2.0)
        with pytest.raises(ValueError):
            QuadratureSpec(max_subdivisions_1d=0)

    def test_converged_respects_tolerance_invariant(self):
        r = integrate_1d(lambda x: np.exp(-x), 0.0, 5.0, SPEC)
        assert r.converged
        assert r.error_estimate <= max(SPEC.rel_tol_1d * abs(r.value), SPEC.abs_tol)


class TestIntegrate1D:
    def test_linear(self):
        r = integrate_1d(lambda x: x, 0.0, 1.0, SPEC)
        assert r.value.real == pytest.approx(0.5, abs=1e-14)
        assert r.converged

    def test_gaussian_tail(self):
        r = integrate_1d(lambda x: np.exp(-x * x), 0.0, 40.0, SPEC)
        assert r.value.real == pytest.approx(math.sqrt(math.pi) / 2, abs=1e-10)

    def test_dirichlet_window_tail(self):
        # int_0^inf sinc^2(u/2) du = pi; the truncated tail is ~ 2/upper,
        # so [0, 200] sits 1e-2 below pi and [0, 2000] within ~1e-3
        f = lambda u: np.sinc(u / (2 * np.pi)) ** 2
        near = integrate_1d(f, 0.0, 200.0, SPEC)
        far = integrate_1d(f, 0.0, 2000.0, SPEC, max_subdivisions=20000)
        assert near.value.real == pytest.approx(math.pi - 2.0 / 200.0, abs=2e-4)
        assert abs(far.value.real - math.pi) < abs(near.value.real - math.pi)
        assert abs(far.value.real - math.pi) < 1.1e-3

    def test_complex_integrand(self):
        r = integrate_1d(lambda x: np.exp(1j * 3 * x), 0.0, 2.0, SPEC)
        want = (np.exp(6j) - 1.0) / 3j
        assert r.value == pytest.approx(want, rel=1e-10)

    def test_requires_ordered_interval(self):
        with pytest.raises(ValueError):
            integrate_1d(lambda x: x, 1.0, 0.0, SPEC)

    def test_budget_exhaustion_is_flagged(self):
        r = integrate_1d(
            lambda x: np.cos(200.0 * x), 0.0, 1.0, SPEC,
            rel_tol=1e-14, max_subdivisions=3,
        )
        assert not r.converged
        assert any("budget" in w for w in r.warnings)

    def test_determinism(self):
        f = lambda x: np.exp(-x * x) * np.cos(11 * x)
        r1 = integrate_1d(f, 0.0, 8.0, SPEC)
        r2 = integrate_1d(f, 0.0, 8.0, SPEC)
        assert r1.value == r2.value
        assert r1.error_estimate == r2.error_estimate
        assert r1.evaluations == r2.evaluations


class TestIntegrateOmega:
    def test_gaussian_moment(self):
        r = integrate_omega(lambda w: np.exp(-(w**2)) * w, SPEC, sigma=1.0)
        assert r.value.real == pytest.approx(0.5, abs=1e-10)
        assert r.converged

    def test_cutoff_doubling_stable(self):
        scn = Scenario(a=0.5, T=4.0, omega=2.0, sigma=0.1)
        k8 = integrate_omega(lambda w: alice_integrand(w, scn), SPEC, scn.sigma)
        k16 = integrate_omega(
            lambda w: alice_integrand(w, scn),
            QuadratureSpec(omega_cutoff_multiple=16.0),
            scn.sigma,
        )
        assert abs(k8.value - k16.value) / abs(k16.value) < 1e-12

    def test_zero_function(self):
        r = integrate_omega(lambda w: np.zeros_like(w), SPEC, sigma=0.5)
        assert r.value == 0.0
        assert r.converged


class TestIntegrate4D:
    def test_unit_box(self):
        r = integrate_4d(
            lambda a, b, c, d: np.ones_like(a),
            [(0, 1), (0, 1), (0, 1), (0, 1)],
            SPEC,
        )
        assert r.value.real == pytest.approx(1.0, rel=1e-12)
        assert r.converged

    def test_separable_product(self):
        r = integrate_4d(
            lambda t, u, th, w: (1 + t) * np.exp(-u) * np.sin(th) * w**2,
            [(0, 1), (0, 1), (0, 1), (0, 2)],
            SPEC,
        )
        want = 1.5 * (1 - math.exp(-1)) * (1 - math.cos(1)) * (8.0 / 3.0)
        assert r.value.real == pytest.approx(want, rel=5e-4)

    def test_semi_infinite_requires_sigma(self):
        with pytest.raises(ValueError):
            integrate_4d(
                lambda a, b, c, d: np.ones_like(a),
                [(0, 1), (0, 1), (0, 1), (0, np.inf)],
                SPEC,
            )

    def test_budget_exhaustion_names_level(self):
        spec = QuadratureSpec(rel_tol_4d=1e-13, max_subdivisions_4d=2)
        r = integrate_4d(
            lambda t, u, th, w: np.cos(40 * t) * np.cos(40 * u) * np.cos(3 * th) * w,
            [(0, 1), (0, 1), (0, 1), (0, 1)],
            spec,
        )
        assert not r.converged
        assert any("budget exhausted at level" in w for w in r.warnings)

    def test_segment_pair_term_vs_midpoint_richardson_oracle(self):
        # brute-force tensor midpoint grids (Richardson-extrapolated) pin the
        # smallest traveling-twin term; the adaptive engine must agree to 1%
        scn = Scenario(a=1.0, T=2.0, omega=1.0, sigma=0.2)
        box = [(0.0, 0.5), (0.0, 0.5), (0.0, np.pi), (0.0, 8.0 / scn.sigma)]

        def midpoint(n_tau, n_th, n_w):
            (a1, b1), (a2, b2), (a3, b3), (a4, b4) = box
            t = a1 + (b1 - a1) * (np.arange(n_tau) + 0.5) / n_tau
            tp = a2 + (b2 - a2) * (np.arange(n_tau) + 0.5) / n_tau
            th = a3 + (b3 - a3) * (np.arange(n_th) + 0.5) / n_th
            w = a4 + (b4 - a4) * (np.arange(n_w) + 0.5) / n_w
            cell = (b1 - a1) * (b2 - a2) * (b3 - a3) * (b4 - a4) / (n_tau * n_tau * n_th * n_w)
            total = 0.0 + 0.0j
            for ti in t:
                TP, TH, W = np.meshgrid(tp, th, w, indexing="ij")
                TT = np.full_like(TP, ti)
                total += np.sum(f_term_grid((1, 1), TT, TP, TH, W, scn))
            return total * cell

        coarse = midpoint(32, 32, 64)
        fine = midpoint(64, 64, 128)
        oracle = (4.0 * fine - coarse) / 3.0

        spec = QuadratureSpec(rel_tol_4d=1e-3)
        r = integrate_4d(
            lambda a, b, c, d: f_term_grid((1, 1), a, b, c, d, scn), box, spec
        )
        assert r.converged
        assert abs(r.value - oracle) / abs(oracle) < 0.01


class TestHonestyProperties:
    def test_tolerance_monotonicity(self):
        ok, detail = check_tolerance_monotonicity()
        assert ok, detail

    def test_error_honesty(self):
        ok, detail = check_error_honesty()
        assert ok, detail

    def test_result_dataclass(self):
        r = IntegralResult(1 + 0j, 0.0, 15, True)
        assert r.real == 1.0 and r.warnings == []
